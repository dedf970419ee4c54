"""Hypergraph vertex-coverability as a reaction system, and the twin-sustain system.

The background ``B(m, n)`` is the complete hypergraph with twins on the
vertices ``1..n``: for each attachment string ``u`` of length ``1..m`` it has
a ``*``-labeled hyperedge and its ``+``-labeled twin, both attached to ``u``,
plus one ``*``-flag per vertex. A state containing a ``*``-flag at ``v``
turns every ``*``-hyperedge through ``v`` into a twin pair; everything else
is merely sustained.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .core import Subobject, SurfError, union_all
from .morphisms import BackgroundMorphism
from .process import ProcessTrace, run_process
from .reactions import ReactionSystem, make_reaction
from .universes import HypergraphBackground

STAR = "*"
PLUS = "+"


class BadParameters(SurfError):
    pass


class BadCombination(SurfError):
    pass


def _check_mn(m: int, n: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int) and 1 <= m <= n):
        raise BadParameters(f"need 1 <= m <= n, got m={m!r}, n={n!r}")


def strings(m: int, n: int) -> list[tuple[int, ...]]:
    """All attachment strings over ``1..n`` of length ``1..m``, shortest first."""
    return [u for length in range(1, m + 1) for u in itertools.product(range(1, n + 1), repeat=length)]


def vertex_key(v: int) -> str:
    return str(v)


def edge_key(u: Sequence[int], label: str) -> str:
    sep = "" if all(v < 10 for v in u) else "."
    return f"({sep.join(map(str, u))},{label})"


def flag_key(v: int) -> str:
    return f"flag({v})"


def _twin_edges(m: int, n: int) -> list[tuple[str, list[str], str]]:
    return [(edge_key(u, lab), [vertex_key(v) for v in u], lab)
            for u in strings(m, n) for lab in (STAR, PLUS)]


@lru_cache(maxsize=None)
def build_ch2(m: int, n: int) -> HypergraphBackground:
    """Complete hypergraph with twins, without flags."""
    _check_mn(m, n)
    return HypergraphBackground(f"CH2_{m}_{n}", [vertex_key(v) for v in range(1, n + 1)],
                                _twin_edges(m, n), [STAR, PLUS])


@lru_cache(maxsize=None)
def build_cover_background(m: int, n: int) -> HypergraphBackground:
    _check_mn(m, n)
    flags = [(flag_key(v), [vertex_key(v)], STAR) for v in range(1, n + 1)]
    return HypergraphBackground(f"B_{m}_{n}", [vertex_key(v) for v in range(1, n + 1)],
                                _twin_edges(m, n) + flags, [STAR, PLUS])


def vertex(bg: HypergraphBackground, v: int) -> Subobject:
    return bg.induced((), [vertex_key(v)])


def flag(bg: HypergraphBackground, v: int) -> Subobject:
    """The vertex ``v`` together with its ``*``-flag."""
    return bg.induced([flag_key(v)])


def edge(bg: HypergraphBackground, u: Sequence[int], label: str = STAR) -> Subobject:
    """Sub-hypergraph induced by the hyperedge ``(u, label)``."""
    return bg.induced([edge_key(u, label)])


def discrete(bg: HypergraphBackground, vertices: Iterable[int]) -> Subobject:
    return bg.induced((), [vertex_key(v) for v in vertices])


@lru_cache(maxsize=None)
def build_cover_system(m: int, n: int) -> ReactionSystem:
    bg = build_cover_background(m, n)
    reactions = []
    for j in range(1, n + 1):
        reactions.append(make_reaction(f"sustain-vertex({j})", vertex(bg, j), vertex(bg, j)))
    for u in strings(m, n):
        for lab in (STAR, PLUS):
            e = edge(bg, u, lab)
            reactions.append(make_reaction(f"sustain{edge_key(u, lab)}", e, e))
    for j in range(1, n + 1):
        reactions.append(make_reaction(f"sustain-flag({j})", flag(bg, j), flag(bg, j)))
    for u in strings(m, n):
        for v in dict.fromkeys(u):
            reactant = union_all(bg, (edge(bg, u, STAR), flag(bg, v)))
            reactions.append(make_reaction(f"twin{edge_key(u, PLUS)}@{v}", reactant, edge(bg, u, PLUS)))
    return ReactionSystem(bg, reactions, name=f"A_{m}_{n}")


@lru_cache(maxsize=None)
def build_twin_sustain_system(m: int, n: int) -> ReactionSystem:
    """Each ``*``-hyperedge is sustained unless its ``+``-twin is present."""
    bg = build_ch2(m, n)
    reactions = []
    for u in strings(m, n):
        e = edge(bg, u, STAR)
        reactions.append(make_reaction(f"a{edge_key(u, STAR)}", e, e,
                                       inhibitor=edge(bg, u, PLUS), inhibitor_core=discrete(bg, u)))
    return ReactionSystem(bg, reactions, name=f"twin-sustain_{m}_{n}")


def cover_inclusion(m: int, n: int, m2: int, n2: int) -> BackgroundMorphism:
    """Inclusion ``B(m, n) -> B(m2, n2)`` for ``m <= m2`` and ``n <= n2``."""
    if not (m <= m2 and n <= n2):
        raise BadParameters(f"no inclusion of B({m},{n}) into B({m2},{n2})")
    src, tgt = build_cover_background(m, n), build_cover_background(m2, n2)
    fv = {vertex_key(v): vertex_key(v) for v in range(1, n + 1)}
    fe = {edge_key(u, lab): edge_key(u, lab) for u in strings(m, n) for lab in (STAR, PLUS)}
    fe.update({flag_key(v): flag_key(v) for v in range(1, n + 1)})
    return BackgroundMorphism(src, tgt, {"V": fv, "E": fe})


@dataclass(frozen=True)
class CoverInstance:
    """A ``*``-labeled hypergraph on ``1..n`` to be tested for a ``k``-vertex cover."""

    m: int
    n: int
    k: int
    hyperedges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_mn(self.m, self.n)
        edges = tuple(dict.fromkeys(tuple(u) for u in self.hyperedges))
        for u in edges:
            if not 1 <= len(u) <= self.m or any(not 1 <= v <= self.n for v in u):
                raise BadParameters(f"hyperedge {u!r} does not fit B({self.m},{self.n})")
        object.__setattr__(self, "hyperedges", edges)

    def with_k(self, k: int) -> CoverInstance:
        return CoverInstance(self.m, self.n, k, self.hyperedges)

    @property
    def system(self) -> ReactionSystem:
        return build_cover_system(self.m, self.n)

    @property
    def H(self) -> Subobject:
        bg = build_cover_background(self.m, self.n)
        return bg.induced([edge_key(u, STAR) for u in self.hyperedges])


def cover_contexts(inst: CoverInstance, combo: Sequence[int], parallel: bool = False) -> list[Subobject]:
    _check_combo(inst, combo)
    bg = build_cover_background(inst.m, inst.n)
    flags = [flag(bg, v) for v in combo]
    if parallel:
        gamma = [union_all(bg, flags), bg.empty()]
    else:
        gamma = flags + [bg.empty()]
    if len(gamma) < 2:
        # empty combination: a single step under the empty context
        gamma.append(bg.empty())
    return gamma


def _check_combo(inst: CoverInstance, combo: Sequence[int]) -> None:
    combo = tuple(combo)
    if any(not 1 <= v <= inst.n for v in combo) or any(a >= b for a, b in zip(combo, combo[1:])):
        raise BadCombination(f"{combo!r} is not a strictly increasing combination over 1..{inst.n}")


def twins_complete(inst: CoverInstance, result: Subobject) -> bool:
    edges = result["E"]
    return all(edge_key(u, PLUS) in edges for u in inst.hyperedges)


def cover_process(inst: CoverInstance, combo: Sequence[int], parallel: bool = False) -> tuple[ProcessTrace, bool]:
    """Run the flag process for ``combo``; the verdict says whether every hyperedge got its twin."""
    trace = run_process(inst.system, cover_contexts(inst, combo, parallel), inst.H)
    return trace, twins_complete(inst, trace.final)


def _verdict(args) -> bool:
    inst, combo, parallel_context = args
    return cover_process(inst, combo, parallel_context)[1]


def is_k_coverable(inst: CoverInstance, parallel: bool = False, workers: int | None = None,
                   one_step: bool = False) -> tuple[bool, tuple[int, ...] | None]:
    """Sweep all ``k``-combinations in lexicographic order; return the first witness.

    ``parallel`` spreads the independent processes over worker processes;
    ``one_step`` uses the combined-flag context instead of one flag per step.
    """
    if not 0 <= inst.k <= inst.n:
        raise BadParameters(f"k={inst.k} outside 0..{inst.n}")
    combos = list(itertools.combinations(range(1, inst.n + 1), inst.k))
    if not parallel:
        for combo in combos:
            if cover_process(inst, combo, one_step)[1]:
                return True, combo
        return False, None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        verdicts = pool.map(_verdict, [(inst, c, one_step) for c in combos], chunksize=8)
        for combo, ok in zip(combos, verdicts):
            if ok:
                return True, combo
    return False, None


def brute_force_cover(inst: CoverInstance) -> bool:
    """Direct check on the hyperedge data: some ``k`` vertices meet every hyperedge."""
    edges = [set(u) for u in inst.hyperedges]
    for combo in itertools.combinations(range(1, inst.n + 1), inst.k):
        chosen = set(combo)
        if all(e & chosen for e in edges):
            return True
    return False


def normalize_hypergraph(vertices: Iterable, hyperedges: Iterable[Sequence], k: int = 0,
                         m: int | None = None) -> tuple[CoverInstance, dict]:
    """Renumber vertices to ``1..n``, drop labels, collapse repeated attachment
    vertices and deduplicate hyperedges. Returns the instance and the renumbering."""
    names = list(dict.fromkeys(vertices))
    for e in hyperedges:
        for v in e:
            if v not in names:
                names.append(v)
    number = {v: i for i, v in enumerate(names, 1)}
    edges = []
    for e in hyperedges:
        u = tuple(dict.fromkeys(number[v] for v in e))
        if not u:
            raise BadParameters("a hyperedge without attachment vertices can never be covered")
        if u not in edges:
            edges.append(u)
    n = max(1, len(names))
    longest = max((len(u) for u in edges), default=1)
    m = longest if m is None else m
    return CoverInstance(m, n, k, tuple(edges)), number
