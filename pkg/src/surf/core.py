"""Backgrounds, canonical subobjects and the lattice operations on them.

A subobject is stored as its image: one frozenset of element keys per
structural component of the owning background. Every concrete kind
implements the same small contract (requirements of an element, an optional
extra closure check, and a completion hook used by union), and the lattice
operations below are written once against it.
"""
from __future__ import annotations

import itertools
import os
from typing import Any, Hashable, Iterable, Iterator, Mapping, Sequence

DEFAULT_MAX_ENUM = 2**20

Key = Hashable
ElementId = tuple  # (component, key)


class SurfError(Exception):
    """Base class for every domain error raised by the package."""


class UnknownElement(SurfError):
    def __init__(self, component: str, key: Any):
        super().__init__(f"unknown element {key!r} in component {component!r}")
        self.component = component
        self.key = key


class ClosureViolation(SurfError):
    def __init__(self, element: ElementId, missing: Iterable[ElementId] = (), reason: str = ""):
        missing = tuple(missing)
        msg = f"element {element[1]!r} of {element[0]!r} violates closure"
        if missing:
            msg += ": needs " + ", ".join(f"{k!r} in {c!r}" for c, k in missing)
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)
        self.element = element
        self.missing = missing
        self.reason = reason


class BackgroundMismatch(SurfError):
    pass


class TooLarge(SurfError):
    pass


def max_enum() -> int:
    value = os.environ.get("SURF_MAX_ENUM")
    return int(value) if value else DEFAULT_MAX_ENUM


def sort_keys(keys: Iterable[Key]) -> list:
    return sorted(keys, key=_order_key)


def _order_key(key: Key):
    # keys within one component are either all strings or all tuples of strings
    if isinstance(key, tuple):
        return (1, tuple(str(k) for k in key))
    return (0, str(key))


class Background:
    """A finite object of some universe kind.

    Subclasses fill in ``components`` and ``elements`` and override
    :meth:`requirements` (elements that must accompany a given element in any
    subobject), :meth:`extra_violation` for closure rules that are not simple
    requirements, and :meth:`complete` for union completion.
    """

    kind: str = "abstract"

    def __init__(self, id: str, elements: Mapping[str, Iterable[Key]]):
        self.id = id
        self.components: tuple[str, ...] = tuple(elements)
        self.elements: dict[str, frozenset] = {c: frozenset(v) for c, v in elements.items()}
        self._index = {c: i for i, c in enumerate(self.components)}

    def __repr__(self) -> str:
        sizes = ", ".join(f"{c}={len(self.elements[c])}" for c in self.components)
        return f"<{type(self).__name__} {self.id!r} {sizes}>"

    # kind hooks

    def requirements(self, component: str, key: Key) -> Iterable[ElementId]:
        return ()

    def extra_violation(self, parts: Mapping[str, frozenset]) -> ClosureViolation | None:
        return None

    def complete(self, parts: dict[str, frozenset]) -> dict[str, frozenset]:
        return parts

    def structure(self) -> tuple:
        """Hashable description of the full carrier, used for equality of backgrounds."""
        return (self.kind, tuple((c, frozenset(self.elements[c])) for c in self.components))

    # derived

    def component_index(self, component: str) -> int:
        try:
            return self._index[component]
        except KeyError:
            raise UnknownElement(component, None) from None

    def element_count(self) -> int:
        return sum(len(v) for v in self.elements.values())

    def full(self) -> Subobject:
        return Subobject(self, tuple(self.elements[c] for c in self.components))

    def empty(self) -> Subobject:
        return Subobject(self, tuple(frozenset() for _ in self.components))

    def check_parts(self, parts: Mapping[str, frozenset]) -> None:
        for c in self.components:
            for k in parts.get(c, ()):
                missing = [(dc, dk) for dc, dk in self.requirements(c, k)
                           if dk not in parts.get(dc, ())]
                if missing:
                    raise ClosureViolation((c, k), missing)
        violation = self.extra_violation(parts)
        if violation is not None:
            raise violation

    def same_as(self, other: Background) -> bool:
        return self is other or (self.id == other.id and self.structure() == other.structure())

    def enumeration_order(self) -> list[ElementId]:
        """All elements, ordered so that requirements come first where possible."""
        return [(c, k) for c in self.components for k in sort_keys(self.elements[c])]

    def iter_subobjects(self) -> Iterator[Subobject]:
        """Yield every subobject once, by include/exclude backtracking.

        An element may only be included once all of its requirements that
        precede it have been included; requirements that follow it are
        checked when the candidate is complete.
        """
        order = self.enumeration_order()
        pos = {e: i for i, e in enumerate(order)}
        reqs = [tuple(self.requirements(*e)) for e in order]
        chosen: set[ElementId] = set()

        def rec(i: int) -> Iterator[Subobject]:
            if i == len(order):
                parts = {c: frozenset(k for cc, k in chosen if cc == c) for c in self.components}
                try:
                    self.check_parts(parts)
                except ClosureViolation:
                    return
                yield Subobject(self, tuple(parts[c] for c in self.components))
                return
            yield from rec(i + 1)
            e = order[i]
            if all(r in chosen or pos[r] > i for r in reqs[i]):
                chosen.add(e)
                yield from rec(i + 1)
                chosen.discard(e)

        yield from rec(0)


class Subobject:
    """Canonical representative of a subobject of a fixed background."""

    __slots__ = ("background", "parts", "_hash")

    def __init__(self, background: Background, parts: tuple[frozenset, ...]):
        self.background = background
        self.parts = parts
        self._hash = hash((background.id, parts))

    def __getitem__(self, component: str) -> frozenset:
        return self.parts[self.background.component_index(component)]

    def items(self) -> Iterator[tuple[str, frozenset]]:
        return zip(self.background.components, self.parts)

    def as_dict(self) -> dict[str, frozenset]:
        return dict(self.items())

    def elements(self) -> Iterator[ElementId]:
        for c, part in self.items():
            for k in part:
                yield (c, k)

    def size(self) -> int:
        return sum(len(p) for p in self.parts)

    def is_empty(self) -> bool:
        return not any(self.parts)

    def canonical(self) -> tuple:
        return tuple((c, tuple(sort_keys(p))) for c, p in self.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subobject):
            return NotImplemented
        return self.parts == other.parts and self.background.id == other.background.id

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Subobject) -> bool:
        return self.canonical() < other.canonical()

    def __and__(self, other: Subobject) -> Subobject:
        return intersect(self, other)

    def __or__(self, other: Subobject) -> Subobject:
        return union_all(self.background, (self, other))

    def __le__(self, other: Subobject) -> bool:
        return is_included(self, other)

    def __repr__(self) -> str:
        body = "; ".join(f"{c}: {{{', '.join(map(_fmt, sort_keys(p)))}}}"
                         for c, p in self.items() if p)
        return f"Subobject({body or 'empty'})"


def _fmt(key: Key) -> str:
    if isinstance(key, tuple):
        return "(" + ",".join(map(str, key)) + ")"
    return str(key)


def _check_same(s1: Subobject, s2: Subobject) -> None:
    if s1.background is not s2.background and s1.background.id != s2.background.id:
        raise BackgroundMismatch(
            f"subobjects of different backgrounds {s1.background.id!r} and {s2.background.id!r}")


def empty_subobject(background: Background) -> Subobject:
    return background.empty()


def validate_subobject(background: Background, raw: Mapping[str, Iterable[Key]]) -> Subobject:
    """Turn per-component element collections into a canonical subobject.

    Raises UnknownElement for ids outside the background and ClosureViolation
    when the kind's structural closure does not hold.
    """
    parts: dict[str, frozenset] = {}
    for c, keys in raw.items():
        if c not in background.elements:
            raise UnknownElement(c, None)
        part = frozenset(_normalize_key(k) for k in keys)
        unknown = part - background.elements[c]
        if unknown:
            raise UnknownElement(c, sort_keys(unknown)[0])
        parts[c] = part
    for c in background.components:
        parts.setdefault(c, frozenset())
    background.check_parts(parts)
    return Subobject(background, tuple(parts[c] for c in background.components))


def _normalize_key(key: Any) -> Key:
    if isinstance(key, list):
        return tuple(key)
    return key


def intersect(s1: Subobject, s2: Subobject) -> Subobject:
    _check_same(s1, s2)
    return Subobject(s1.background, tuple(a & b for a, b in zip(s1.parts, s2.parts)))


def union_all(background: Background, subobjects: Iterable[Subobject]) -> Subobject:
    """Least subobject containing every member; the empty family gives the empty subobject."""
    acc = [set() for _ in background.components]
    members = 0
    last = None
    for s in subobjects:
        if s.background is not background and s.background.id != background.id:
            raise BackgroundMismatch(
                f"subobject of {s.background.id!r} in union over {background.id!r}")
        for a, p in zip(acc, s.parts):
            a |= p
        members += 1
        last = s
    if members == 1:
        return last
    parts = background.complete({c: frozenset(a) for c, a in zip(background.components, acc)})
    return Subobject(background, tuple(parts[c] for c in background.components))


def is_included(s1: Subobject, s2: Subobject) -> bool:
    _check_same(s1, s2)
    return all(a <= b for a, b in zip(s1.parts, s2.parts))


def enumerate_subobjects(background: Background, cap: int | None = None) -> list[Subobject]:
    """All subobjects of ``background`` in sorted canonical order.

    Raises TooLarge as soon as the count would exceed ``cap`` (default from
    ``SURF_MAX_ENUM`` or 2**20).
    """
    cap = max_enum() if cap is None else cap
    free = sum(1 for e in background.enumeration_order() if not tuple(background.requirements(*e)))
    if free > 62 or 2**free > cap:
        raise TooLarge(f"{background.id!r} has more than {cap} subobjects")
    out = []
    for s in background.iter_subobjects():
        out.append(s)
        if len(out) > cap:
            raise TooLarge(f"{background.id!r} has more than {cap} subobjects")
    out.sort()
    return out


def powerset(items: Sequence) -> Iterator[tuple]:
    return itertools.chain.from_iterable(itertools.combinations(items, r) for r in range(len(items) + 1))
