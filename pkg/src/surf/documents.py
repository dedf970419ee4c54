"""JSON documents: parsing with located errors, and canonical emission.

Every document is an envelope ``{"format_version": 1, "kind": ..., "payload": ...}``.
Kinds: background, system, process, morphism, scheme, instance (cover
instances) and trace (output only).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

from .core import Background, Subobject, SurfError, sort_keys, validate_subobject
from .diagrams import DiagramBackground, scheme_from_data, scheme_to_data
from .morphisms import BackgroundMorphism
from .process import ProcessTrace, check_context_independent, detect_cycle
from .reactions import Reaction, ReactionSystem, make_reaction
from .universes import (
    GraphBackground,
    HypergraphBackground,
    PosetBackground,
    SetBackground,
    construct_background,
)

FORMAT_VERSION = 1
KINDS = ("background", "system", "process", "morphism", "scheme", "instance", "trace")


class DocumentSyntaxError(SurfError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class SchemaError(SurfError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class VersionUnsupported(SurfError):
    pass


@dataclass(frozen=True)
class Document:
    format_version: int
    kind: str
    payload: Any
    value: Any = None  # the constructed object for self-contained kinds


def _need(d: Any, key: str, path: str, types=None):
    if not isinstance(d, Mapping):
        raise SchemaError(path, "expected an object")
    if key not in d:
        raise SchemaError(f"{path}.{key}", "missing")
    value = d[key]
    if types is not None and not isinstance(value, types):
        raise SchemaError(f"{path}.{key}", f"expected {_type_name(types)}")
    return value


def _type_name(types) -> str:
    names = {dict: "object", list: "array", str: "string", int: "integer", bool: "boolean"}
    if isinstance(types, tuple):
        return " or ".join(names.get(t, t.__name__) for t in types)
    return names.get(types, types.__name__)


def parse_document(text: str, expect: str | None = None) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    version = _need(raw, "format_version", "$")
    if version != FORMAT_VERSION:
        raise VersionUnsupported(f"format_version {version!r} is not supported (expected {FORMAT_VERSION})")
    kind = _need(raw, "kind", "$", str)
    if kind not in KINDS:
        raise SchemaError("$.kind", f"unknown kind {kind!r}")
    if expect is not None and kind != expect:
        raise SchemaError("$.kind", f"expected a {expect} document, got {kind}")
    payload = _need(raw, "payload", "$")
    value = None
    if kind == "background":
        value = background_from_payload(payload, "$.payload")
    elif kind == "system":
        value = system_from_payload(payload, "$.payload")
    elif kind == "scheme":
        value = _wrap("$.payload", scheme_from_data, payload)
    elif kind == "instance":
        value = instance_from_payload(payload, "$.payload")
    elif kind in ("process", "morphism", "trace"):
        _need(payload, "contexts" if kind == "process" else "maps" if kind == "morphism" else "delta",
              "$.payload")
    return Document(version, kind, payload, value)


def read_document(path: str, expect: str | None = None) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), expect)


def _wrap(path: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except SchemaError:
        raise
    except SurfError as exc:
        raise SchemaError(path, str(exc)) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(path, f"malformed data ({type(exc).__name__}: {exc})") from None


def envelope(kind: str, payload: Any) -> dict:
    return {"format_version": FORMAT_VERSION, "kind": kind, "payload": payload}


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# backgrounds

def background_from_payload(payload: Any, path: str = "$") -> Background:
    if isinstance(payload, Mapping) and "generator" in payload:
        return _generated_background(payload, path)
    kind = _need(payload, "kind", path, str)
    id = payload.get("id", "B")
    if kind == "hypergraph":
        vertices = set(_need(payload, "vertices", path, list))
        for i, e in enumerate(_need(payload, "edges", path, list)):
            _need(e, "id", f"{path}.edges[{i}]", str)
            att = _need(e, "attachment", f"{path}.edges[{i}]", list)
            for j, v in enumerate(att):
                if v not in vertices:
                    raise SchemaError(f"{path}.edges[{i}].attachment[{j}]", f"unknown vertex {v!r}")
    if kind == "graph":
        vertices = set(_need(payload, "vertices", path, list))
        for i, e in enumerate(_need(payload, "edges", path, list)):
            for end in ("source", "target"):
                if _need(e, end, f"{path}.edges[{i}]") not in vertices:
                    raise SchemaError(f"{path}.edges[{i}].{end}", f"unknown vertex {e[end]!r}")
    return _wrap(path, construct_background, kind, payload, id=id)


def _generated_background(payload: Mapping, path: str) -> Background:
    from .cover import build_ch2, build_cover_background

    gen = _need(payload, "generator", path, str)
    m = _need(payload, "m", path, int)
    n = _need(payload, "n", path, int)
    if gen == "cover":
        return _wrap(path, build_cover_background, m, n)
    if gen == "ch2":
        return _wrap(path, build_ch2, m, n)
    raise SchemaError(f"{path}.generator", f"unknown background generator {gen!r}")


def background_to_payload(bg: Background) -> dict:
    out: dict[str, Any] = {"id": bg.id, "kind": bg.kind}
    if isinstance(bg, SetBackground):
        out["elements"] = sort_keys(bg.elements["S"])
    elif isinstance(bg, GraphBackground):
        out["vertices"] = sort_keys(bg.elements["V"])
        out["alphabet"] = sorted(bg.alphabet)
        out["edges"] = [{"id": e, "source": bg.source[e], "target": bg.target[e], "label": bg.label[e]}
                        for e in sort_keys(bg.elements["E"])]
    elif isinstance(bg, HypergraphBackground):
        out["vertices"] = sort_keys(bg.elements["V"])
        out["alphabet"] = sorted(bg.alphabet)
        out["edges"] = [{"id": e, "attachment": list(bg.att[e]), "label": bg.label[e]}
                        for e in sort_keys(bg.elements["E"])]
    elif isinstance(bg, PosetBackground):
        out["elements"] = sort_keys(bg.elements["A"])
        out["relation"] = [list(p) for p in sort_keys(bg.elements["R"])]
    elif isinstance(bg, DiagramBackground):
        out["scheme"] = scheme_to_data(bg.scheme)
        out["sets"] = {c: sort_keys(bg.elements[c]) for c in bg.components}
        out["maps"] = {a: dict(sorted(fn.items())) for a, fn in sorted(bg.diagram.maps.items())}
    else:
        raise SurfError(f"cannot serialize background kind {bg.kind!r}")
    return out


# subobjects

def subobject_from_json(bg: Background, data: Any, path: str = "$") -> Subobject:
    if not isinstance(data, Mapping):
        raise SchemaError(path, "expected an object mapping components to element lists")
    for c, keys in data.items():
        if not isinstance(keys, list):
            raise SchemaError(f"{path}.{c}", "expected an array")
    return _wrap(path, validate_subobject, bg, data)


def subobject_to_json(s: Subobject) -> dict:
    return {c: [list(k) if isinstance(k, tuple) else k for k in keys]
            for c, keys in s.canonical() if keys}


# systems

def system_from_payload(payload: Any, path: str = "$") -> ReactionSystem:
    if isinstance(payload, Mapping) and "generator" in payload:
        from .cover import build_cover_system, build_twin_sustain_system

        gen = _need(payload, "generator", path, str)
        m = _need(payload, "m", path, int)
        n = _need(payload, "n", path, int)
        if gen == "cover":
            return _wrap(path, build_cover_system, m, n)
        if gen == "twin-sustain":
            return _wrap(path, build_twin_sustain_system, m, n)
        raise SchemaError(f"{path}.generator", f"unknown system generator {gen!r}")
    bg = background_from_payload(_need(payload, "background", path), f"{path}.background")
    reactions = []
    for i, r in enumerate(_need(payload, "reactions", path, list)):
        rp = f"{path}.reactions[{i}]"
        reactions.append(reaction_from_json(bg, r, rp))
    return _wrap(path, ReactionSystem, bg, reactions, name=payload.get("name", ""))


def reaction_from_json(bg: Background, data: Any, path: str) -> Reaction:
    rid = _need(data, "id", path, str)
    reactant = subobject_from_json(bg, _need(data, "reactant", path), f"{path}.reactant")
    product = subobject_from_json(bg, _need(data, "product", path), f"{path}.product")
    inh = data.get("inhibitor", "-")
    if inh == "-" or inh is None:
        inhibitor = core = None
    else:
        inhibitor = subobject_from_json(bg, _need(inh, "set", f"{path}.inhibitor"), f"{path}.inhibitor.set")
        core = subobject_from_json(bg, inh.get("core", {}), f"{path}.inhibitor.core")
    return _wrap(path, make_reaction, rid, reactant, product, inhibitor, core)


def reaction_to_json(a: Reaction) -> dict:
    out = {"id": a.id, "reactant": subobject_to_json(a.reactant), "product": subobject_to_json(a.product)}
    if a.uninhibited:
        out["inhibitor"] = "-"
    else:
        out["inhibitor"] = {"set": subobject_to_json(a.inhibitor), "core": subobject_to_json(a.inhibitor_core)}
    return out


def system_to_payload(system: ReactionSystem) -> dict:
    return {"name": system.name, "background": background_to_payload(system.background),
            "reactions": [reaction_to_json(a) for a in system.reactions]}


# processes

def process_from_payload(system: ReactionSystem, payload: Any, path: str = "$") -> tuple[list[Subobject], Subobject]:
    """Resolve a process document against ``system``: returns ``(gamma, start)``."""
    bg = system.background
    contexts = _need(payload, "contexts", path)
    start = subobject_from_json(bg, payload.get("start", {}), f"{path}.start")
    if isinstance(contexts, list):
        gamma = [subobject_from_json(bg, c, f"{path}.contexts[{i}]") for i, c in enumerate(contexts)]
    elif isinstance(contexts, Mapping):
        policy = _need(contexts, "policy", f"{path}.contexts", str)
        length = _need(contexts, "length", f"{path}.contexts", int)
        if policy == "constant-empty":
            gamma = [bg.empty()] * length
        elif policy == "one-shot":
            given = _need(contexts, "contexts", f"{path}.contexts", list)
            gamma = [subobject_from_json(bg, c, f"{path}.contexts.contexts[{i}]") for i, c in enumerate(given)]
            if len(gamma) > length:
                raise SchemaError(f"{path}.contexts.length", "shorter than the given contexts")
            gamma += [bg.empty()] * (length - len(gamma))
        else:
            raise SchemaError(f"{path}.contexts.policy", f"unknown policy {policy!r}")
    else:
        raise SchemaError(f"{path}.contexts", "expected an array or a policy object")
    return gamma, start


def trace_to_payload(trace: ProcessTrace) -> dict:
    tau = trace.tau
    cycle = detect_cycle(tau)
    return {
        "system": trace.system.name,
        "background": trace.system.background.id,
        "gamma": [subobject_to_json(c) for c in trace.gamma],
        "delta": [subobject_to_json(d) for d in trace.delta],
        "tau": [subobject_to_json(t) for t in tau],
        "enabled": [list(ids) for ids in trace.enabled],
        "context_independent": check_context_independent(trace),
        "cycle": None if cycle is None else {
            "i0": cycle.i0, "j0": cycle.j0, "cycle_length": cycle.cycle_length,
            "repetitions": cycle.repetitions, "residual_length": len(cycle.residual),
        },
    }


# morphisms

def morphism_from_payload(source: Background, target: Background, payload: Any,
                          path: str = "$") -> BackgroundMorphism:
    maps = _need(payload, "maps", path, dict)
    out = {}
    for c, fn in maps.items():
        if not isinstance(fn, Mapping):
            raise SchemaError(f"{path}.maps.{c}", "expected an object")
        out[c] = dict(fn)
    return BackgroundMorphism(source, target, out)


def morphism_to_payload(f: BackgroundMorphism) -> dict:
    comps = ("A",) if isinstance(f.source, PosetBackground) else f.source.components
    return {"source": f.source.id, "target": f.target.id,
            "maps": {c: dict(sorted(f.maps[c].items())) for c in comps}}


# cover instances

def instance_from_payload(payload: Any, path: str = "$"):
    from .cover import normalize_hypergraph

    edges = _need(payload, "hyperedges", path, list)
    for i, e in enumerate(edges):
        if not isinstance(e, list):
            raise SchemaError(f"{path}.hyperedges[{i}]", "expected an array of vertices")
    if "vertices" in payload:
        vertices = _need(payload, "vertices", path, list)
    elif "n" in payload:
        vertices = list(range(1, _need(payload, "n", path, int) + 1))
    else:
        vertices = []
    known = set(vertices)
    if "vertices" in payload or "n" in payload:
        for i, e in enumerate(edges):
            for j, v in enumerate(e):
                if v not in known:
                    raise SchemaError(f"{path}.hyperedges[{i}][{j}]", f"unknown vertex {v!r}")
    inst, _ = _wrap(path, normalize_hypergraph, vertices, edges, payload.get("k", 0), payload.get("m"))
    return inst
