"""Diagram categories over finite sets, built from a scheme graph.

A scheme has components (free, or fixed to a named set) and arrows between
them. A diagram instantiates every free component with a finite set and
every arrow with a total map. Subobjects select a subset per free component
such that each arrow sends selected elements to selected elements; fixed
components are always taken whole, so they never appear in subobjects.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import Background, Subobject, SurfError, sort_keys


class DuplicateName(SurfError):
    pass


class FixedSourceArrow(SurfError):
    def __init__(self, arrow: str):
        super().__init__(f"arrow {arrow!r} leaves a fixed component")
        self.arrow = arrow


class SchemeMismatch(SurfError):
    pass


class SquareFails(SurfError):
    def __init__(self, arrow: str, witness):
        super().__init__(f"naturality square for arrow {arrow!r} fails at {witness!r}")
        self.arrow = arrow
        self.witness = witness


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Scheme:
    name: str
    components: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    fixed: Mapping[str, frozenset] = field(default_factory=dict)

    def is_fixed(self, component: str) -> bool:
        return component in self.fixed

    @property
    def free(self) -> tuple[str, ...]:
        return tuple(c for c in self.components if c not in self.fixed)

    def arrows_from(self, component: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.source == component)

    def __hash__(self):
        return hash((self.name, self.components, self.arrows))


def make_scheme(name: str, components: Iterable, arrows: Iterable = ()) -> Scheme:
    """Build a scheme from ``components`` (names, or ``(name, fixed_set)`` pairs)
    and ``arrows`` (``(name, source, target)`` triples), then validate it."""
    comps: list[str] = []
    fixed: dict[str, frozenset] = {}
    for c in components:
        if isinstance(c, str):
            comps.append(c)
        else:
            cname, fixed_set = c
            comps.append(cname)
            if fixed_set is not None:
                fixed[cname] = frozenset(fixed_set)
    scm = Scheme(name, tuple(comps), tuple(Arrow(*a) for a in arrows), fixed)
    validate_scheme(scm)
    return scm


def validate_scheme(scm: Scheme) -> None:
    names = list(scm.components) + [a.name for a in scm.arrows]
    seen = set()
    for n in names:
        if n in seen:
            raise DuplicateName(f"name {n!r} used twice in scheme {scm.name!r}")
        seen.add(n)
    comps = set(scm.components)
    for a in scm.arrows:
        for end in (a.source, a.target):
            if end not in comps:
                raise SchemeMismatch(f"arrow {a.name!r} refers to unknown component {end!r}")
        if scm.is_fixed(a.source):
            raise FixedSourceArrow(a.name)


@dataclass(frozen=True)
class Diagram:
    """Sets for the free components and total maps for every arrow."""

    sets: Mapping[str, frozenset]
    maps: Mapping[str, Mapping[str, str]]

    @classmethod
    def of(cls, sets: Mapping[str, Iterable[str]], maps: Mapping[str, Mapping[str, str]]) -> Diagram:
        return cls({c: frozenset(v) for c, v in sets.items()}, {a: dict(m) for a, m in maps.items()})


def component_set(scm: Scheme, d: Diagram, component: str) -> frozenset:
    if scm.is_fixed(component):
        return scm.fixed[component]
    return d.sets[component]


def validate_diagram(scm: Scheme, d: Diagram) -> None:
    if set(d.sets) != set(scm.free):
        raise SchemeMismatch(f"diagram components {sorted(d.sets)} do not match free components {sorted(scm.free)}")
    if set(d.maps) != {a.name for a in scm.arrows}:
        raise SchemeMismatch(f"diagram arrows {sorted(d.maps)} do not match scheme arrows")
    for a in scm.arrows:
        src, tgt = component_set(scm, d, a.source), component_set(scm, d, a.target)
        fn = d.maps[a.name]
        if set(fn) != set(src):
            raise SchemeMismatch(f"map for arrow {a.name!r} is not total on {a.source!r}")
        for x, y in fn.items():
            if y not in tgt:
                raise SchemeMismatch(f"arrow {a.name!r} sends {x!r} to {y!r} outside {a.target!r}")


class DiagramBackground(Background):
    kind = "diagram"

    def __init__(self, id: str, scheme: Scheme, diagram: Diagram):
        validate_scheme(scheme)
        validate_diagram(scheme, diagram)
        for c in scheme.free:
            for k in diagram.sets[c]:
                if not isinstance(k, str) or not k:
                    raise SchemeMismatch(f"element ids must be non-empty strings, got {k!r}")
        self.scheme = scheme
        self.diagram = diagram
        self._reqs: dict[str, list[tuple[str, Mapping[str, str]]]] = {c: [] for c in scheme.free}
        for a in scheme.arrows:
            if not scheme.is_fixed(a.target):
                self._reqs[a.source].append((a.target, diagram.maps[a.name]))
        super().__init__(id, {c: diagram.sets[c] for c in scheme.free})

    def requirements(self, component, key):
        return tuple((t, fn[key]) for t, fn in self._reqs[component])

    def enumeration_order(self):
        # targets of arrows before their sources, so most requirements precede
        order = _topological(self.scheme)
        return [(c, k) for c in order for k in sort_keys(self.elements[c])]

    def structure(self):
        return (self.kind, self.scheme.name, self.scheme.components, self.scheme.arrows,
                tuple(sorted((c, frozenset(s)) for c, s in self.scheme.fixed.items())),
                tuple((c, self.elements[c]) for c in self.components),
                tuple((a, tuple(sorted(fn.items()))) for a, fn in sorted(self.diagram.maps.items())))

    def random_subobject(self, rng: random.Random):
        chosen: dict[str, set] = {c: set() for c in self.components}
        order = self.enumeration_order()
        # pick seeds, then close under the arrow maps
        for c, k in order:
            if rng.random() < 0.35:
                _close_into(self, chosen, c, k)
        return Subobject(self, tuple(frozenset(chosen[c]) for c in self.components))


def _close_into(bg: DiagramBackground, chosen: dict[str, set], c: str, k: str) -> None:
    stack = [(c, k)]
    while stack:
        c, k = stack.pop()
        if k in chosen[c]:
            continue
        chosen[c].add(k)
        stack.extend(bg.requirements(c, k))


def _topological(scm: Scheme) -> list[str]:
    free = list(scm.free)
    deps = {c: {a.target for a in scm.arrows if a.source == c and not scm.is_fixed(a.target) and a.target != c}
            for c in free}
    order: list[str] = []
    while len(order) < len(free):
        ready = [c for c in free if c not in order and deps[c] <= set(order)]
        if not ready:
            # cyclic scheme: fall back to the remaining components in declaration order
            ready = [c for c in free if c not in order][:1]
        order.extend(ready)
    return order


def instantiate_diagram_universe(scm: Scheme, assignment: Diagram, id: str = "D") -> DiagramBackground:
    return DiagramBackground(id, scm, assignment)


def check_diagram_morphism(g: Mapping[str, Mapping[str, str]], scm: Scheme, d1: Diagram, d2: Diagram) -> bool:
    """Check that ``g`` is a diagram morphism from ``d1`` to ``d2``.

    ``g`` holds one map per free component; fixed components carry the
    identity. Raises SquareFails when some naturality square does not
    commute (or a component map is not total) and returns whether every
    component map is injective.
    """
    for c in scm.free:
        fn = g.get(c)
        if fn is None or set(fn) != set(d1.sets[c]):
            raise SquareFails(c, "component map is not total")
        bad = [x for x in sort_keys(fn) if fn[x] not in d2.sets[c]]
        if bad:
            raise SquareFails(c, bad[0])

    def at(component, x):
        return x if scm.is_fixed(component) else g[component][x]

    for a in scm.arrows:
        m1, m2 = d1.maps[a.name], d2.maps[a.name]
        for x in sort_keys(d1.sets[a.source]):
            if at(a.target, m1[x]) != m2[at(a.source, x)]:
                raise SquareFails(a.name, x)
    return all(len(set(g[c].values())) == len(g[c]) for c in scm.free)


# shipped schemes

def _registry() -> dict:
    sigma = ("a", "b")
    return {
        "sets": lambda: make_scheme("sets", ["X"]),
        "pairs": lambda: make_scheme("pairs", ["X", "Y"]),
        "sigma-sets": lambda sigma=sigma: make_scheme(
            "sigma-sets", ["X", ("Sigma", sigma)], [("l", "X", "Sigma")]),
        "maps": lambda: make_scheme("maps", ["X", "Y"], [("f", "X", "Y")]),
        "graphs": lambda: make_scheme("graphs", ["V", "E"], [("s", "E", "V"), ("t", "E", "V")]),
        "sigma-graphs": lambda sigma=sigma: make_scheme(
            "sigma-graphs", [("Sigma", sigma), "V", "E"],
            [("l", "E", "Sigma"), ("s", "E", "V"), ("t", "E", "V")]),
        "vl-el-graphs": lambda sigma_v=("p", "q"), sigma_e=sigma: make_scheme(
            "vl-el-graphs", [("SigmaE", sigma_e), "V", "E", ("SigmaV", sigma_v)],
            [("le", "E", "SigmaE"), ("s", "E", "V"), ("t", "E", "V"), ("lv", "V", "SigmaV")]),
        "bipartite": lambda: make_scheme(
            "bipartite", ["V1", "V2", "E1", "E2"],
            [("s1", "E1", "V1"), ("t1", "E1", "V2"), ("s2", "E2", "V2"), ("t2", "E2", "V1")]),
        "hg3": lambda: make_scheme("hg3", ["V", "E"], [("l", "E", "V"), ("r", "E", "V"), ("t", "E", "V")]),
        "hg4": lambda: make_scheme(
            "hg4", ["V", "E"],
            [("north", "E", "V"), ("east", "E", "V"), ("south", "E", "V"), ("west", "E", "V")]),
    }


SCHEMES = tuple(_registry())


def shipped_scheme(name: str, **fixed_sets) -> Scheme:
    try:
        factory = _registry()[name]
    except KeyError:
        raise SurfError(f"no shipped scheme named {name!r}; known: {', '.join(SCHEMES)}") from None
    return factory(**fixed_sets)


def typed_graphs_scheme(type_vertices: Iterable[str], type_edges: Iterable[str]) -> Scheme:
    """Sets-level encoding of TG-typed graphs: a graph plus typing maps into TG's fixed parts."""
    return make_scheme("typed-graphs", [("TGE", type_edges), "V", "E", ("TGV", type_vertices)],
                       [("te", "E", "TGE"), ("s", "E", "V"), ("t", "E", "V"), ("tv", "V", "TGV")])


def typed_graph_background(tg_vertices: Iterable[str], tg_edges: Mapping[str, tuple[str, str]],
                           vertices: Mapping[str, str], edges: Mapping[str, tuple[str, str, str]],
                           id: str = "TG") -> DiagramBackground:
    """Typed graph over the type graph ``(tg_vertices, tg_edges)``.

    ``vertices`` maps each vertex to its type vertex; ``edges`` maps each
    edge to ``(source, target, type_edge)``. The typing must be a graph
    morphism into the type graph.
    """
    scm = typed_graphs_scheme(tg_vertices, tg_edges)
    for e, (s, t, te) in edges.items():
        ts, tt = tg_edges[te]
        if vertices[s] != ts or vertices[t] != tt:
            raise SchemeMismatch(f"edge {e!r} is typed by {te!r} but its endpoints have types "
                                 f"{vertices[s]!r}, {vertices[t]!r}")
    d = Diagram.of({"V": vertices, "E": edges},
                   {"te": {e: x[2] for e, x in edges.items()},
                    "s": {e: x[0] for e, x in edges.items()},
                    "t": {e: x[1] for e, x in edges.items()},
                    "tv": dict(vertices)})
    return DiagramBackground(id, scm, d)


def random_diagram(scm: Scheme, rng: random.Random, size: int = 2) -> Diagram:
    sets = {c: frozenset(f"{c.lower()}{i}" for i in range(rng.randint(0, size))) for c in scm.free}
    # arrows into an empty target force an empty source
    changed = True
    while changed:
        changed = False
        for a in scm.arrows:
            tgt = scm.fixed.get(a.target, sets.get(a.target))
            if not tgt and sets[a.source]:
                sets[a.source] = frozenset()
                changed = True
    maps = {}
    for a in scm.arrows:
        tgt = sort_keys(scm.fixed.get(a.target, sets.get(a.target)))
        maps[a.name] = {x: rng.choice(tgt) for x in sort_keys(sets[a.source])}
    return Diagram(sets, maps)


def random_diagram_background(rng: random.Random, size: int = 3, id: str = "rand-diagram",
                              scheme: str | None = None) -> DiagramBackground:
    name = scheme or rng.choice(SCHEMES)
    scm = shipped_scheme(name)
    return DiagramBackground(id, scm, random_diagram(scm, rng, size))


def instantiate_from_data(data: Mapping, id: str = "D") -> DiagramBackground:
    scheme = data["scheme"]
    if isinstance(scheme, str):
        scm = shipped_scheme(scheme, **{k: tuple(v) for k, v in data.get("fixed", {}).items()})
    else:
        scm = scheme_from_data(scheme)
    return DiagramBackground(id, scm, Diagram.of(data.get("sets", {}), data.get("maps", {})))


def scheme_from_data(data: Mapping) -> Scheme:
    comps = [(c["name"], c.get("fixed")) for c in data["components"]]
    arrows = [(a["name"], a["source"], a["target"]) for a in data.get("arrows", ())]
    return make_scheme(data.get("name", "custom"), comps, arrows)


def scheme_to_data(scm: Scheme) -> dict:
    return {
        "name": scm.name,
        "components": [{"name": c, "fixed": sort_keys(scm.fixed[c]) if c in scm.fixed else None}
                       for c in scm.components],
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in scm.arrows],
    }
