"""Executable lattice laws for subobjects, runnable against any background."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .core import (
    Background,
    ClosureViolation,
    Subobject,
    enumerate_subobjects,
    intersect,
    is_included,
    union_all,
    validate_subobject,
)
from .universes import random_background


def _family(bg: Background, rng: random.Random, most: int = 4) -> list[Subobject]:
    return [bg.random_subobject(rng) for _ in range(rng.randint(0, most))]


def _valid(s: Subobject) -> bool:
    try:
        return validate_subobject(s.background, s.as_dict()) == s
    except ClosureViolation:
        return False


def law_absorption(bg, rng):
    p = bg.random_subobject(rng)
    p0 = intersect(p, bg.random_subobject(rng))
    return intersect(p, p0) == p0 and union_all(bg, [p, p0]) == p


def law_empty_neutrality(bg, rng):
    p = bg.random_subobject(rng)
    empty = bg.empty()
    return intersect(p, empty) == empty and union_all(bg, [p, empty]) == p


def law_union_with_empty(bg, rng):
    family = _family(bg, rng)
    return union_all(bg, family + [bg.empty()]) == union_all(bg, family)


def law_monotonicity(bg, rng):
    family = _family(bg, rng, 5)
    sub = [s for s in family if rng.random() < 0.5]
    return is_included(union_all(bg, sub), union_all(bg, family))


def law_union_special_cases(bg, rng):
    p = bg.random_subobject(rng)
    return union_all(bg, []) == bg.empty() and union_all(bg, [p]) == p


def law_lattice_algebra(bg, rng):
    p, q, r = (bg.random_subobject(rng) for _ in range(3))

    def u(*xs):
        return union_all(bg, xs)

    return (intersect(p, q) == intersect(q, p)
            and intersect(intersect(p, q), r) == intersect(p, intersect(q, r))
            and intersect(p, p) == p
            and u(p, q) == u(q, p)
            and u(u(p, q), r) == u(p, u(q, r))
            and u(p, p) == p)


def law_closure(bg, rng):
    family = _family(bg, rng)
    p = bg.random_subobject(rng)
    q = bg.random_subobject(rng)
    return _valid(union_all(bg, family)) and _valid(intersect(p, q)) and _valid(p)


def law_bounds(bg, rng):
    family = _family(bg, rng)
    top = union_all(bg, family)
    p, q = bg.random_subobject(rng), bg.random_subobject(rng)
    meet = intersect(p, q)
    return (all(is_included(s, top) for s in family)
            and is_included(meet, p) and is_included(meet, q)
            and is_included(bg.empty(), p) and is_included(p, bg.full()))


LAWS: dict[str, Callable[[Background, random.Random], bool]] = {
    "absorption": law_absorption,
    "empty-neutrality": law_empty_neutrality,
    "union-with-empty": law_union_with_empty,
    "monotonicity": law_monotonicity,
    "union-special-cases": law_union_special_cases,
    "lattice-algebra": law_lattice_algebra,
    "closure": law_closure,
    "bounds": law_bounds,
}

# the four properties the engine relies on; the rest are supporting checks
CORE_LAWS = ("absorption", "empty-neutrality", "union-with-empty", "monotonicity")


@dataclass
class LawResult:
    law: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_laws(make_background: Callable[[random.Random], Background], cases: int, seed: int,
               laws: tuple[str, ...] | None = None) -> list[LawResult]:
    """Run every law ``cases`` times, each on a freshly generated background."""
    results = []
    for name in laws or tuple(LAWS):
        law = LAWS[name]
        res = LawResult(name)
        rng = random.Random(f"{seed}:{name}")
        for i in range(cases):
            bg = make_background(rng)
            res.cases += 1
            if not law(bg, rng):
                res.failures.append((i, bg))
        results.append(res)
    return results


def check_kind(kind: str, cases: int = 200, seed: int = 0, size: int = 4,
               laws: tuple[str, ...] | None = None) -> list[LawResult]:
    return check_laws(lambda rng: random_background(kind, rng, size), cases, seed, laws)


def least_upper_bound(all_subobjects: list[Subobject], family: list[Subobject]) -> Subobject:
    """Brute force: the ⊆-least enumerated subobject above every member."""
    uppers = [s for s in all_subobjects if all(is_included(p, s) for p in family)]
    least = min(uppers, key=Subobject.size)
    # a least element has minimal size and lies below every other upper bound
    assert all(is_included(least, o) for o in uppers), "no least upper bound"
    return least


def greatest_lower_bound(all_subobjects: list[Subobject], family: list[Subobject]) -> Subobject:
    lowers = [s for s in all_subobjects if all(is_included(s, p) for p in family)]
    greatest = max(lowers, key=Subobject.size)
    assert all(is_included(o, greatest) for o in lowers), "no greatest lower bound"
    return greatest


def check_bounds_against_enumeration(bg: Background, families: int, seed: int, cap: int = 4096) -> list:
    """Compare union/intersection with brute-force bounds; returns the failing families."""
    subs = enumerate_subobjects(bg, cap)
    rng = random.Random(seed)
    failures = []
    for _ in range(families):
        family = [rng.choice(subs) for _ in range(rng.randint(0, 4))]
        if union_all(bg, family) != least_upper_bound(subs, family):
            failures.append(("union", family))
        pair = [rng.choice(subs), rng.choice(subs)]
        if intersect(*pair) != greatest_lower_bound(subs, pair):
            failures.append(("intersect", pair))
    return failures
