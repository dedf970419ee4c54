"""Interactive processes, context independence and cycle analysis."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import BackgroundMismatch, Subobject, SurfError, enumerate_subobjects, is_included, union_all
from .reactions import ReactionSystem


class TooShort(SurfError):
    pass


@dataclass(frozen=True)
class ProcessTrace:
    """Context sequence ``gamma`` and result sequence ``delta`` of one process.

    The state sequence ``tau`` is derived on demand as ``c_i ∪ d_i``.
    """

    system: ReactionSystem
    gamma: tuple[Subobject, ...]
    delta: tuple[Subobject, ...]
    enabled: tuple[tuple[str, ...], ...] = ()  # enabled reaction ids at steps 1..n

    @property
    def n(self) -> int:
        return len(self.delta) - 1

    @property
    def tau(self) -> tuple[Subobject, ...]:
        bg = self.system.background
        return tuple(union_all(bg, (c, d)) for c, d in zip(self.gamma, self.delta))

    @property
    def start(self) -> Subobject:
        return self.delta[0]

    @property
    def final(self) -> Subobject:
        return self.delta[-1]

    def replay(self) -> ProcessTrace:
        return run_process(self.system, self.gamma, self.delta[0])


def run_process(system: ReactionSystem, gamma: Sequence[Subobject], start: Subobject) -> ProcessTrace:
    gamma = tuple(gamma)
    if len(gamma) < 2:
        raise TooShort(f"a process needs at least two contexts, got {len(gamma)}")
    bg = system.background
    for s in (*gamma, start):
        if s.background.id != bg.id:
            raise BackgroundMismatch(f"process subobject of {s.background.id!r} for system over {bg.id!r}")
    delta = [start]
    enabled = []
    for c in gamma[:-1]:
        t = union_all(bg, (c, delta[-1]))
        fired = system.enabled(t)
        enabled.append(tuple(a.id for a in fired))
        delta.append(union_all(bg, [a.product for a in fired]))
    return ProcessTrace(system, gamma, tuple(delta), tuple(enabled))


def check_context_independent(trace: ProcessTrace) -> bool:
    return all(is_included(c, d) for c, d in zip(trace.gamma, trace.delta))


def empty_contexts(system: ReactionSystem, length: int) -> tuple[Subobject, ...]:
    return (system.background.empty(),) * length


@dataclass(frozen=True)
class CycleInfo:
    """Decomposition ``t_0..t_i0, (t_{i0+1}..t_j0)^m, residual`` of a state sequence."""

    i0: int
    j0: int
    repetitions: int
    residual: tuple[Subobject, ...]
    prefix: tuple[Subobject, ...]
    cycle: tuple[Subobject, ...]

    @property
    def prefix_length(self) -> int:
        return len(self.prefix)

    @property
    def cycle_length(self) -> int:
        return self.j0 - self.i0

    def reassemble(self) -> tuple[Subobject, ...]:
        return self.prefix + self.cycle * self.repetitions + self.residual


def detect_cycle(tau: Sequence[Subobject]) -> CycleInfo | None:
    """Find the first repeat in ``tau``; None means the sequence is repetition-free.

    The pair is minimal in the sense that ``j0`` is the first index whose
    state already occurred, and ``i0`` is that earlier occurrence.
    """
    tau = tuple(tau)
    seen: dict[Subobject, int] = {}
    for j, t in enumerate(tau):
        if t in seen:
            i0, j0 = seen[t], j
            break
        seen[t] = j
    else:
        return None
    prefix = tau[:i0 + 1]
    cycle = tau[i0 + 1:j0 + 1]
    size = len(cycle)
    m = 1
    while tau[i0 + 1 + m * size:i0 + 1 + (m + 1) * size] == cycle:
        m += 1
    # for a deterministic run the residual is an initial section of the cycle
    residual = tau[i0 + 1 + m * size:]
    return CycleInfo(i0, j0, m, residual, prefix, cycle)


def build_transition_graph(system: ReactionSystem, cap: int | None = None) -> dict[Subobject, Subobject]:
    """Successor of every state under the empty context."""
    return {t: system.result(t) for t in enumerate_subobjects(system.background, cap)}


def trajectory(system: ReactionSystem, start: Subobject, steps: int) -> list[Subobject]:
    """States reached from ``start`` under empty contexts: ``steps + 1`` entries."""
    out = [start]
    for _ in range(steps):
        out.append(system.result(out[-1]))
    return out


def transition_graph_dot(graph: dict[Subobject, Subobject], name: str = "transitions") -> str:
    states = sorted(graph)
    ids = {s: f"s{i}" for i, s in enumerate(states)}
    lines = [f'digraph "{name}" {{']
    for s in states:
        label = _state_label(s).replace('"', '\\"')
        lines.append(f'  {ids[s]} [label="{label}"];')
    for s in states:
        lines.append(f"  {ids[s]} -> {ids[graph[s]]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _state_label(s: Subobject) -> str:
    parts = []
    for c, keys in s.canonical():
        if keys:
            parts.append(f"{c}: " + ", ".join(
                "(" + ",".join(k) + ")" if isinstance(k, tuple) else str(k) for k in keys))
    return "; ".join(parts) or "∅"
