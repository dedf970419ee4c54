"""Concrete universe kinds: finite sets, labeled graphs, hypergraphs and posets."""
from __future__ import annotations

import random
from typing import Iterable, Mapping, Sequence

from .core import (
    Background,
    ClosureViolation,
    SurfError,
    Subobject,
    sort_keys,
)


class DanglingReference(SurfError):
    pass


class DuplicateId(SurfError):
    pass


class UnknownLabel(SurfError):
    pass


class NotAPartialOrder(SurfError):
    def __init__(self, axiom: str, witness: tuple):
        super().__init__(f"relation is not a partial order: {axiom} fails at {witness!r}")
        self.axiom = axiom
        self.witness = witness


class PairOutsideBackground(SurfError):
    pass


def _unique(keys: Iterable[str], what: str) -> list[str]:
    keys = list(keys)
    seen = set()
    for k in keys:
        if not isinstance(k, str) or not k:
            raise DuplicateId(f"{what} id must be a non-empty string, got {k!r}")
        if k in seen:
            raise DuplicateId(f"duplicate {what} id {k!r}")
        seen.add(k)
    return keys


class SetBackground(Background):
    kind = "set"

    def __init__(self, id: str, elements: Iterable[str]):
        super().__init__(id, {"S": _unique(elements, "element")})

    def random_subobject(self, rng: random.Random) -> Subobject:
        return Subobject(self, (frozenset(k for k in sort_keys(self.elements["S"]) if rng.random() < 0.5),))


class GraphBackground(Background):
    """Directed multigraph with explicit edge ids and Σ-labeled edges."""

    kind = "graph"

    def __init__(self, id: str, vertices: Iterable[str],
                 edges: Mapping[str, tuple[str, str, str]] | Iterable[tuple[str, str, str, str]],
                 alphabet: Iterable[str] | None = None):
        vertices = _unique(vertices, "vertex")
        if isinstance(edges, Mapping):
            edges = [(e, *data) for e, data in edges.items()]
        edges = list(edges)
        _unique((e[0] for e in edges), "edge")
        labels = {e[3] for e in edges}
        self.alphabet = frozenset(alphabet) if alphabet is not None else frozenset(labels)
        vset = set(vertices)
        self.source: dict[str, str] = {}
        self.target: dict[str, str] = {}
        self.label: dict[str, str] = {}
        for e, s, t, lab in edges:
            for v in (s, t):
                if v not in vset:
                    raise DanglingReference(f"edge {e!r} references unknown vertex {v!r}")
            if lab not in self.alphabet:
                raise UnknownLabel(f"edge {e!r} has label {lab!r} outside the alphabet")
            self.source[e], self.target[e], self.label[e] = s, t, lab
        super().__init__(id, {"V": vertices, "E": [e[0] for e in edges]})

    def requirements(self, component, key):
        if component == "E":
            return (("V", self.source[key]), ("V", self.target[key]))
        return ()

    def structure(self):
        return (self.kind, frozenset(self.elements["V"]),
                frozenset((e, self.source[e], self.target[e], self.label[e]) for e in self.elements["E"]),
                self.alphabet)

    def random_subobject(self, rng: random.Random) -> Subobject:
        vs = frozenset(v for v in sort_keys(self.elements["V"]) if rng.random() < 0.6)
        es = frozenset(e for e in sort_keys(self.elements["E"])
                       if self.source[e] in vs and self.target[e] in vs and rng.random() < 0.5)
        return Subobject(self, (vs, es))


class HypergraphBackground(Background):
    """Σ-hypergraph: hyperedges carry an attachment sequence over V and a label."""

    kind = "hypergraph"

    def __init__(self, id: str, vertices: Iterable[str],
                 edges: Mapping[str, tuple[Sequence[str], str]] | Iterable[tuple[str, Sequence[str], str]],
                 alphabet: Iterable[str] | None = None):
        vertices = _unique(vertices, "vertex")
        if isinstance(edges, Mapping):
            edges = [(e, att, lab) for e, (att, lab) in edges.items()]
        edges = list(edges)
        _unique((e[0] for e in edges), "hyperedge")
        self.alphabet = frozenset(alphabet) if alphabet is not None else frozenset(e[2] for e in edges)
        vset = set(vertices)
        self.att: dict[str, tuple[str, ...]] = {}
        self.label: dict[str, str] = {}
        for e, att, lab in edges:
            att = tuple(att)
            for v in att:
                if v not in vset:
                    raise DanglingReference(f"hyperedge {e!r} attaches to unknown vertex {v!r}")
            if lab not in self.alphabet:
                raise UnknownLabel(f"hyperedge {e!r} has label {lab!r} outside the alphabet")
            self.att[e] = att
            self.label[e] = lab
        self._reqs = {e: tuple(("V", v) for v in dict.fromkeys(att)) for e, att in self.att.items()}
        super().__init__(id, {"V": vertices, "E": [e[0] for e in edges]})

    def requirements(self, component, key):
        if component == "E":
            return self._reqs[key]
        return ()

    def type_of(self, edge: str) -> int:
        return len(self.att[edge])

    def structure(self):
        return (self.kind, frozenset(self.elements["V"]),
                frozenset((e, self.att[e], self.label[e]) for e in self.elements["E"]),
                self.alphabet)

    def induced(self, edges: Iterable[str], vertices: Iterable[str] = ()) -> Subobject:
        """Smallest subobject containing the given hyperedges and vertices."""
        edges = frozenset(edges)
        vs = set(vertices)
        for e in edges:
            vs.update(self.att[e])
        return Subobject(self, (frozenset(vs), edges))

    def random_subobject(self, rng: random.Random) -> Subobject:
        vs = frozenset(v for v in sort_keys(self.elements["V"]) if rng.random() < 0.6)
        es = frozenset(e for e in sort_keys(self.elements["E"])
                       if all(v in vs for v in self.att[e]) and rng.random() < 0.5)
        return Subobject(self, (vs, es))


class PosetBackground(Background):
    """Finite poset (A, R); subobjects are subposets (A0, R0) with R0 ⊆ R."""

    kind = "poset"

    def __init__(self, id: str, elements: Iterable[str], relation: Iterable[tuple[str, str]]):
        elements = _unique(elements, "element")
        rel = {tuple(p) for p in relation}
        aset = set(elements)
        for a, b in sort_keys(rel):
            for x in (a, b):
                if x not in aset:
                    raise DanglingReference(f"pair {(a, b)!r} references unknown element {x!r}")
        violation = partial_order_violation(aset, rel)
        if violation is not None:
            raise NotAPartialOrder(*violation)
        super().__init__(id, {"A": elements, "R": rel})

    def requirements(self, component, key):
        if component == "A":
            return (("R", (key, key)),)
        a, b = key
        return (("A", a), ("A", b))

    def extra_violation(self, parts):
        rel = parts.get("R", frozenset())
        succ: dict[str, set[str]] = {}
        for a, b in rel:
            succ.setdefault(a, set()).add(b)
        for a, b in sort_keys(rel):
            for c in sort_keys(succ.get(b, ())):
                if (a, c) not in rel:
                    return ClosureViolation(("R", (a, b)), [("R", (a, c))], "transitivity")
        return None

    def complete(self, parts):
        parts = dict(parts)
        parts["R"] = frozenset(transitive_closure(parts["R"]))
        return parts

    def random_subobject(self, rng: random.Random) -> Subobject:
        a0 = {a for a in sort_keys(self.elements["A"]) if rng.random() < 0.6}
        r0 = {(a, a) for a in a0}
        r0.update(p for p in sort_keys(self.elements["R"])
                  if p[0] in a0 and p[1] in a0 and p[0] != p[1] and rng.random() < 0.5)
        return Subobject(self, (frozenset(a0), frozenset(transitive_closure(r0))))


def partial_order_violation(elements: set, rel: set) -> tuple[str, tuple] | None:
    """First failed partial-order axiom as (axiom, witness), or None."""
    for a in sort_keys(elements):
        if (a, a) not in rel:
            return ("reflexivity", (a, a))
    for a, b in sort_keys(rel):
        if a != b and (b, a) in rel:
            return ("anti-symmetry", (a, b))
    closed = transitive_closure(rel)
    extra = closed - rel
    if extra:
        return ("transitivity", sort_keys(extra)[0])
    return None


def transitive_closure(rel: Iterable[tuple]) -> set[tuple]:
    """Least transitive superset, by composing with the relation until a fixpoint."""
    closure = set(rel)
    while True:
        succ: dict = {}
        for a, b in closure:
            succ.setdefault(a, set()).add(b)
        new = {(a, c) for a, b in closure for c in succ.get(b, ()) if (a, c) not in closure}
        if not new:
            return closure
        closure |= new


def poset_closure(background: PosetBackground, raw: Iterable[tuple[str, str]]) -> frozenset:
    pairs = {tuple(p) for p in raw}
    outside = pairs - background.elements["R"]
    if outside:
        raise PairOutsideBackground(f"pair {sort_keys(outside)[0]!r} is not in the relation of {background.id!r}")
    return frozenset(transitive_closure(pairs))


KINDS = ("set", "graph", "hypergraph", "poset", "diagram")


def construct_background(kind: str, data: Mapping, id: str = "B") -> Background:
    """Build a validated background of ``kind`` from plain carrier data."""
    if kind == "set":
        return SetBackground(id, data["elements"])
    if kind == "graph":
        edges = [(e["id"], e["source"], e["target"], e.get("label", "")) for e in data.get("edges", ())]
        return GraphBackground(id, data["vertices"], edges, data.get("alphabet"))
    if kind == "hypergraph":
        edges = [(e["id"], e["attachment"], e.get("label", "")) for e in data.get("edges", ())]
        return HypergraphBackground(id, data["vertices"], edges, data.get("alphabet"))
    if kind == "poset":
        return PosetBackground(id, data["elements"], data.get("relation", ()))
    if kind == "diagram":
        from .diagrams import instantiate_from_data
        return instantiate_from_data(data, id=id)
    raise SurfError(f"unknown background kind {kind!r}")


def random_background(kind: str, rng: random.Random, size: int = 4, id: str | None = None) -> Background:
    """Small random background of the given kind, for law checks."""
    id = id or f"rand-{kind}"
    n = rng.randint(1, size)
    names = [f"v{i}" for i in range(n)]
    if kind == "set":
        return SetBackground(id, names)
    if kind == "graph":
        edges = [(f"e{j}", rng.choice(names), rng.choice(names), rng.choice("xy"))
                 for j in range(rng.randint(0, size))]
        return GraphBackground(id, names, edges, ["x", "y"])
    if kind == "hypergraph":
        edges = [(f"h{j}", [rng.choice(names) for _ in range(rng.randint(0, 3))], rng.choice("*+"))
                 for j in range(rng.randint(0, size))]
        return HypergraphBackground(id, names, edges, ["*", "+"])
    if kind == "poset":
        # random linear extension keeps the random relation anti-symmetric
        order = names[:]
        rng.shuffle(order)
        rel = {(a, a) for a in names}
        rel |= {(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4}
        return PosetBackground(id, names, transitive_closure(rel))
    if kind == "diagram":
        from .diagrams import random_diagram_background
        return random_diagram_background(rng, size=size, id=id)
    raise SurfError(f"unknown background kind {kind!r}")

