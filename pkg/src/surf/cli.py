"""``surf`` command-line entry point.

Exit codes: 0 on success, 1 when the computed verdict is negative
(not coverable, not a morphism, not strong, a law failed), 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import documents as docs
from .core import SurfError
from .cover import is_k_coverable
from .laws import CORE_LAWS, LAWS, check_laws
from .morphisms import check_background_mono, is_rs_morphism, is_strong, missing_reactions
from .process import build_transition_graph, run_process, transition_graph_dot
from .universes import KINDS, random_background


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_laws(args) -> int:
    kind = args.kind
    if kind == "diagram" and args.scheme:
        from .diagrams import random_diagram_background

        def make(rng):
            return random_diagram_background(rng, size=args.size, scheme=args.scheme)
    else:
        def make(rng):
            return random_background(kind, rng, args.size)
    laws = tuple(args.law) if args.law else tuple(LAWS)
    start = time.perf_counter()
    results = check_laws(make, args.cases, args.seed, laws)
    ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        marker = "" if res.law in CORE_LAWS else " (supporting)"
        print(f"{status} {res.law}{marker}: {res.cases - len(res.failures)}/{res.cases}")
        ok &= res.passed
    print(f"kind={kind} seed={args.seed} time={time.perf_counter() - start:.2f}s")
    return 0 if ok else 1


def cmd_run(args) -> int:
    system = docs.read_document(args.system, "system").value
    proc = docs.read_document(args.process, "process")
    gamma, start = docs.process_from_payload(system, proc.payload, "$.payload")
    trace = run_process(system, gamma, start)
    payload = docs.trace_to_payload(trace)
    if args.out:
        _write(args.out, docs.dumps(docs.envelope("trace", payload)))
    for i, d in enumerate(payload["delta"]):
        print(f"d{i} = {json.dumps(d, sort_keys=True)}")
    print(f"context-independent: {str(payload['context_independent']).lower()}")
    return 0


def cmd_cover(args) -> int:
    inst = docs.read_document(args.instance, "instance").value
    k = args.k if args.k is not None else inst.k
    inst = inst.with_k(k)
    ok, witness = is_k_coverable(inst, parallel=args.parallel, one_step=args.one_step)
    result = {"m": inst.m, "n": inst.n, "k": k, "coverable": ok,
              "witness": list(witness) if witness else None,
              "hyperedges": [list(u) for u in inst.hyperedges]}
    if args.out:
        _write(args.out, docs.dumps(result))
    print(f"{k}-cover: {str(ok).lower()}" + (f" witness={list(witness)}" if witness else ""))
    return 0 if ok else 1


def cmd_morphism(args) -> int:
    src = docs.read_document(args.source, "system").value
    tgt = docs.read_document(args.target, "system").value
    fdoc = docs.read_document(args.map, "morphism")
    f = docs.morphism_from_payload(src.background, tgt.background, fdoc.payload, "$.payload")
    try:
        check_background_mono(f)
    except SurfError as exc:
        print(f"not a monomorphism: {exc}")
        return 1
    if not is_rs_morphism(f, src, tgt):
        missing = missing_reactions(f, src, tgt)
        print(f"not a morphism: image of reaction {missing[0].id!r} is not a reaction of {tgt.name!r}")
        return 1
    print("morphism: true")
    if not args.strong:
        return 0
    if args.strong == "exhaustive":
        verdict = is_strong(f, src, tgt, "exhaustive")
    elif args.strong.startswith("sample:"):
        if args.seed is None:
            raise SurfError("--seed is required for sampled strongness checks")
        verdict = is_strong(f, src, tgt, "sample", samples=int(args.strong.split(":", 1)[1]), seed=args.seed)
    else:
        raise SurfError(f"--strong expects 'exhaustive' or 'sample:N', got {args.strong!r}")
    if verdict.strong:
        print(f"strong: true ({verdict.checked} states)")
        return 0
    witness = docs.subobject_to_json(verdict.witness)
    print(f"strong: false witness={json.dumps(witness, sort_keys=True)}")
    return 1


def cmd_transitions(args) -> int:
    system = docs.read_document(args.system, "system").value
    graph = build_transition_graph(system)
    _write(args.dot, transition_graph_dot(graph, system.name))
    if args.dot and args.dot != "-":
        print(f"{len(graph)} states written to {args.dot}")
    return 0


def cmd_validate(args) -> int:
    for path in args.files:
        doc = docs.read_document(path)
        print(f"ok {path} ({doc.kind})")
    return 0


def cmd_emit(args) -> int:
    """Write a generated background or system as an explicit document."""
    from .cover import build_ch2, build_cover_background, build_cover_system, build_twin_sustain_system

    builders = {
        "cover-background": lambda: ("background", docs.background_to_payload(build_cover_background(args.m, args.n))),
        "ch2-background": lambda: ("background", docs.background_to_payload(build_ch2(args.m, args.n))),
        "cover-system": lambda: ("system", docs.system_to_payload(build_cover_system(args.m, args.n))),
        "twin-sustain-system": lambda: ("system", docs.system_to_payload(build_twin_sustain_system(args.m, args.n))),
    }
    kind, payload = builders[args.what]()
    _write(args.out, docs.dumps(docs.envelope(kind, payload)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surf", description="Reaction systems over subobject lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("laws", help="run the subobject law suite on random backgrounds")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--cases", type=int, default=200)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--size", type=int, default=4)
    s.add_argument("--scheme", help="shipped scheme name for --kind diagram")
    s.add_argument("--law", action="append", choices=tuple(LAWS))
    s.set_defaults(func=cmd_laws)

    s = sub.add_parser("run", help="run an interactive process")
    s.add_argument("--system", required=True)
    s.add_argument("--process", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("cover", help="k-vertex-coverability test")
    s.add_argument("--instance", required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--parallel", action="store_true", help="run combinations in worker processes")
    s.add_argument("--one-step", action="store_true", help="put all flags in the first context")
    s.add_argument("--out")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("morphism", help="check a reaction-system morphism")
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--to", dest="target", required=True)
    s.add_argument("--map", required=True)
    s.add_argument("--strong", help="'exhaustive' or 'sample:N'")
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_morphism)

    s = sub.add_parser("transitions", help="export the empty-context transition graph as DOT")
    s.add_argument("--system", required=True)
    s.add_argument("--dot", default="-")
    s.set_defaults(func=cmd_transitions)

    s = sub.add_parser("validate", help="parse and validate documents")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("emit", help="write a generated background or system as JSON")
    s.add_argument("what", choices=("cover-background", "ch2-background", "cover-system", "twin-sustain-system"))
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_emit)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SurfError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
