"""Background monomorphisms, induced reaction systems and strong morphisms."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .core import Background, BackgroundMismatch, Subobject, SurfError, enumerate_subobjects, is_included, sort_keys
from .diagrams import DiagramBackground, SquareFails, check_diagram_morphism
from .reactions import Reaction, ReactionSystem
from .universes import GraphBackground, HypergraphBackground, PosetBackground


class NotStructurePreserving(SurfError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInjective(SurfError):
    def __init__(self, component: str, pair: tuple):
        super().__init__(f"component {component!r} maps both {pair[0]!r} and {pair[1]!r} to the same element")
        self.component = component
        self.pair = pair


class MonoRequired(SurfError):
    pass


class NotAMorphism(SurfError):
    pass


class InclusionViolated(SurfError):
    """Mapped result is not inside the target result; never raised for a genuine morphism."""


@dataclass(frozen=True)
class BackgroundMorphism:
    """Per-component element maps between two backgrounds of the same kind.

    For posets only the element map ``A`` is given; the map on relation
    pairs is derived from it.
    """

    source: Background
    target: Background
    maps: Mapping[str, Mapping] = field(default_factory=dict)

    def __post_init__(self):
        maps = {c: dict(m) for c, m in self.maps.items()}
        if isinstance(self.source, PosetBackground) and "R" not in maps and "A" in maps:
            fa = maps["A"]
            maps["R"] = {(a, b): (fa.get(a), fa.get(b)) for a, b in self.source.elements["R"]}
        object.__setattr__(self, "maps", maps)

    def apply(self, component: str, key):
        return self.maps[component][key]


def identity(background: Background) -> BackgroundMorphism:
    return BackgroundMorphism(background, background,
                              {c: {k: k for k in background.elements[c]} for c in background.components})


def inclusion(source: Background, target: Background) -> BackgroundMorphism:
    """Identity-on-keys map; only a morphism if ``source`` really sits inside ``target``."""
    return BackgroundMorphism(source, target,
                              {c: {k: k for k in source.elements[c]} for c in source.components})


def compose(g: BackgroundMorphism, f: BackgroundMorphism) -> BackgroundMorphism:
    """``g ∘ f``."""
    if f.target.id != g.source.id:
        raise BackgroundMismatch(f"cannot compose: {f.target.id!r} is not {g.source.id!r}")
    maps = {c: {k: g.maps[c][v] for k, v in f.maps[c].items()} for c in f.source.components}
    if isinstance(f.source, PosetBackground):
        maps = {"A": maps["A"]}
    return BackgroundMorphism(f.source, g.target, maps)


def check_structure(f: BackgroundMorphism) -> None:
    """Raise NotStructurePreserving unless ``f`` is a total, structure-preserving map."""
    src, tgt = f.source, f.target
    if src.kind != tgt.kind:
        raise NotStructurePreserving(f"kinds differ: {src.kind} and {tgt.kind}")
    if src.components != tgt.components:
        raise NotStructurePreserving(f"components differ: {src.components} and {tgt.components}")
    for c in src.components:
        fn = f.maps.get(c)
        if fn is None:
            raise NotStructurePreserving(f"no map for component {c!r}")
        for k in sort_keys(src.elements[c]):
            if k not in fn:
                raise NotStructurePreserving(f"map for {c!r} is undefined at {k!r}", (c, k))
            if fn[k] not in tgt.elements[c]:
                raise NotStructurePreserving(f"{c!r} maps {k!r} outside the target", (c, k))
    fv = f.maps.get("V")
    if isinstance(src, GraphBackground):
        for e in sort_keys(src.elements["E"]):
            e2 = f.maps["E"][e]
            if (fv[src.source[e]], fv[src.target[e]]) != (tgt.source[e2], tgt.target[e2]):
                raise NotStructurePreserving(f"edge {e!r} endpoints are not preserved", ("E", e))
            if src.label[e] != tgt.label[e2]:
                raise NotStructurePreserving(f"edge {e!r} label is not preserved", ("E", e))
    elif isinstance(src, HypergraphBackground):
        for e in sort_keys(src.elements["E"]):
            e2 = f.maps["E"][e]
            if tuple(fv[v] for v in src.att[e]) != tgt.att[e2]:
                raise NotStructurePreserving(f"hyperedge {e!r} attachment is not preserved", ("E", e))
            if src.label[e] != tgt.label[e2]:
                raise NotStructurePreserving(f"hyperedge {e!r} label is not preserved", ("E", e))
    elif isinstance(src, PosetBackground):
        fa = f.maps["A"]
        for a, b in sort_keys(src.elements["R"]):
            if (fa[a], fa[b]) not in tgt.elements["R"]:
                raise NotStructurePreserving(f"order {a!r} <= {b!r} is not preserved", ("R", (a, b)))
    elif isinstance(src, DiagramBackground):
        if (src.scheme.components, src.scheme.arrows, dict(src.scheme.fixed)) != \
                (tgt.scheme.components, tgt.scheme.arrows, dict(tgt.scheme.fixed)):
            raise NotStructurePreserving("diagrams over different schemes")
        try:
            check_diagram_morphism(f.maps, src.scheme, src.diagram, tgt.diagram)
        except SquareFails as exc:
            raise NotStructurePreserving(str(exc), (exc.arrow, exc.witness)) from None


def check_background_mono(f: BackgroundMorphism) -> None:
    check_structure(f)
    for c in f.source.components:
        seen: dict = {}
        for k in sort_keys(f.source.elements[c]):
            v = f.maps[c][k]
            if v in seen:
                raise NotInjective(c, (seen[v], k))
            seen[v] = k


def is_mono(f: BackgroundMorphism) -> bool:
    try:
        check_background_mono(f)
    except (NotStructurePreserving, NotInjective):
        return False
    return True


def image(f: BackgroundMorphism, s: Subobject) -> Subobject:
    """``f ∘ s`` as a subobject of the target (valid when ``f`` is mono)."""
    if s.background.id != f.source.id:
        raise BackgroundMismatch(f"subobject of {s.background.id!r} pushed along map from {f.source.id!r}")
    return Subobject(f.target, tuple(frozenset(f.maps[c][k] for k in part) for c, part in s.items()))


def _require_mono(f: BackgroundMorphism) -> None:
    try:
        check_background_mono(f)
    except (NotStructurePreserving, NotInjective) as exc:
        raise MonoRequired(f"background map is not a monomorphism: {exc}") from None


def map_reaction(f: BackgroundMorphism, a: Reaction, checked: bool = False) -> Reaction:
    if not checked:
        _require_mono(f)
    if a.background.id != f.source.id:
        raise BackgroundMismatch(f"reaction {a.id!r} is not over {f.source.id!r}")
    return Reaction(a.id, image(f, a.reactant), image(f, a.inhibitor),
                    image(f, a.inhibitor_core), image(f, a.product))


def induced_system(f: BackgroundMorphism, system: ReactionSystem) -> ReactionSystem:
    _require_mono(f)
    if system.background.id != f.source.id:
        raise BackgroundMismatch(f"system over {system.background.id!r}, map from {f.source.id!r}")
    return ReactionSystem(f.target, [map_reaction(f, a, checked=True) for a in system.reactions],
                          name=f"f({system.name})")


def missing_reactions(f: BackgroundMorphism, system: ReactionSystem, other: ReactionSystem) -> list[Reaction]:
    """Reactions of ``system`` whose image is not a reaction of ``other`` (compared as triples)."""
    _require_mono(f)
    if other.background.id != f.target.id:
        raise BackgroundMismatch(f"system over {other.background.id!r}, map into {f.target.id!r}")
    triples = other.triples()
    return [a for a in system.reactions if map_reaction(f, a, checked=True).triple() not in triples]


def is_rs_morphism(f: BackgroundMorphism, system: ReactionSystem, other: ReactionSystem) -> bool:
    return not missing_reactions(f, system, other)


@dataclass(frozen=True)
class StrongVerdict:
    strong: bool
    checked: int
    witness: Subobject | None = None
    mapped_result: Subobject | None = None
    target_result: Subobject | None = None

    def __bool__(self) -> bool:
        return self.strong


def is_strong(f: BackgroundMorphism, system: ReactionSystem, other: ReactionSystem,
              mode: str = "exhaustive", samples: int = 500, seed: int | None = None,
              cap: int | None = None) -> StrongVerdict:
    """Check ``f ∘ res(t) = res'(f ∘ t)`` over all states or over sampled ones.

    ``mode`` is ``"exhaustive"`` or ``"sample"``; sampling needs a seed. The
    weaker inclusion that holds for every morphism is checked along the way.
    """
    if not is_rs_morphism(f, system, other):
        raise NotAMorphism(f"image of {system.name!r} is not contained in {other.name!r}")
    if mode == "exhaustive":
        states = enumerate_subobjects(system.background, cap)
    elif mode == "sample":
        if seed is None:
            raise SurfError("sampled strongness check needs a seed")
        rng = random.Random(seed)
        states = [system.background.random_subobject(rng) for _ in range(samples)]
    else:
        raise SurfError(f"unknown mode {mode!r}")
    for n, t in enumerate(states, 1):
        mapped = image(f, system.result(t))
        target = other.result(image(f, t))
        if not is_included(mapped, target):
            raise InclusionViolated(f"mapped result not inside target result at {t!r}")
        if mapped != target:
            return StrongVerdict(False, n, t, mapped, target)
    return StrongVerdict(True, len(states))


def random_mono(source: Background, rng: random.Random, extra: int = 2, id: str | None = None):
    """A random injective structure-preserving map out of a set, poset or hypergraph background.

    Builds a larger target by renaming every element and adding ``extra``
    fresh elements per component; returns ``(target, morphism)``.
    """
    from .universes import SetBackground

    id = id or f"{source.id}'"
    if isinstance(source, SetBackground):
        keys = sort_keys(source.elements["S"])
        fresh = [f"x{i}" for i in range(len(keys) + extra)]
        rng.shuffle(fresh)
        target = SetBackground(id, fresh)
        return target, BackgroundMorphism(source, target, {"S": dict(zip(keys, fresh))})
    if isinstance(source, PosetBackground):
        keys = sort_keys(source.elements["A"])
        fresh = [f"y{i}" for i in range(len(keys) + extra)]
        rng.shuffle(fresh)
        fa = dict(zip(keys, fresh))
        rel = {(fa[a], fa[b]) for a, b in source.elements["R"]} | {(y, y) for y in fresh}
        target = PosetBackground(id, fresh, rel)
        return target, BackgroundMorphism(source, target, {"A": fa})
    if isinstance(source, HypergraphBackground):
        vs = sort_keys(source.elements["V"])
        new_vs = [f"w{i}" for i in range(len(vs) + extra)]
        rng.shuffle(new_vs)
        fv = dict(zip(vs, new_vs))
        es = sort_keys(source.elements["E"])
        new_es = [f"g{i}" for i in range(len(es) + extra)]
        rng.shuffle(new_es)
        fe = dict(zip(es, new_es))
        labels = sorted(source.alphabet) or ["*"]
        edges = [(fe[e], [fv[v] for v in source.att[e]], source.label[e]) for e in es]
        edges += [(g, [rng.choice(new_vs) for _ in range(rng.randint(0, 2))], rng.choice(labels))
                  for g in new_es[len(es):]]
        target = HypergraphBackground(id, new_vs, edges, source.alphabet | set(labels))
        return target, BackgroundMorphism(source, target, {"V": fv, "E": fe})
    raise SurfError(f"random monos are not provided for kind {source.kind!r}")
