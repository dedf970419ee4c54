from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surf.core import enumerate_subobjects, validate_subobject
from surf.cover import build_cover_system
from surf.process import (
    TooShort,
    build_transition_graph,
    check_context_independent,
    detect_cycle,
    empty_contexts,
    run_process,
    trajectory,
    transition_graph_dot,
)
from surf.reactions import ReactionSystem, make_reaction
from surf.universes import SetBackground


def S(bg, *xs):
    return validate_subobject(bg, {"S": xs})


@pytest.fixture
def flip_flop():
    bg = SetBackground("ab", "ab")
    return ReactionSystem(bg, [make_reaction("ab", S(bg, "a"), S(bg, "b")),
                               make_reaction("ba", S(bg, "b"), S(bg, "a"))], name="flip-flop")


def test_empty_everything(flip_flop):
    bg = flip_flop.background
    trace = run_process(flip_flop, empty_contexts(flip_flop, 2), bg.empty())
    assert trace.delta == (bg.empty(), bg.empty())
    with pytest.raises(TooShort):
        run_process(flip_flop, [bg.empty()], bg.empty())


def test_flip_flop_cycle(flip_flop):
    bg = flip_flop.background
    trace = run_process(flip_flop, empty_contexts(flip_flop, 7), S(bg, "a"))
    assert check_context_independent(trace)
    assert trace.tau == trace.delta
    info = detect_cycle(trace.tau)
    assert (info.i0, info.j0, info.cycle_length) == (0, 2, 2)
    assert info.reassemble() == trace.tau
    assert trace.replay() == trace


def test_detect_cycle_trivial():
    bg = SetBackground("s", "a")
    s = S(bg, "a")
    info = detect_cycle([s, s])
    assert (info.i0, info.j0, info.cycle_length) == (0, 1, 1)
    assert detect_cycle([s, bg.empty()]) is None


def test_self_sustaining_is_context_independent():
    bg = SetBackground("s", "a")
    sys = ReactionSystem(bg, [make_reaction("keep", S(bg, "a"), S(bg, "a"))])
    trace = run_process(sys, empty_contexts(sys, 4), S(bg, "a"))
    assert check_context_independent(trace) and trace.tau == trace.delta


def test_transition_graphs(flip_flop):
    bg = flip_flop.background
    graph = build_transition_graph(flip_flop)
    assert graph[S(bg, "a")] == S(bg, "b") and graph[S(bg, "b")] == S(bg, "a")
    assert graph[bg.empty()] == bg.empty() and graph[bg.full()] == bg.full()
    dot = transition_graph_dot(graph, "ff")
    assert dot.startswith('digraph "ff"') and dot.count("->") == 4
    lonely = SetBackground("one", "a")
    g = build_transition_graph(ReactionSystem(lonely, []))
    assert set(g.values()) == {lonely.empty()}


def test_sustaining_only_system_is_fixpoints():
    sys = build_cover_system(1, 2)
    only_sustain = ReactionSystem(sys.background, [a for a in sys if not a.id.startswith("twin")])
    for t, nxt in build_transition_graph(only_sustain).items():
        assert nxt == t


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=20))
def test_detect_cycle_reassembles_any_sequence(xs):
    bg = SetBackground("s", "abc")
    names = ["", "a", "b", "c"]
    tau = [S(bg, *names[x]) if names[x] else bg.empty() for x in xs]
    info = detect_cycle(tau)
    if info is None:
        assert len(set(tau)) == len(tau)
    else:
        assert info.reassemble() == tuple(tau)
        assert tau[info.i0] == tau[info.j0]
        assert len(set(tau[:info.j0])) == info.j0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_long_runs_repeat(seed):
    rng = random.Random(seed)
    bg = SetBackground("s", "abc")
    subs = enumerate_subobjects(bg)
    reactions = [make_reaction(f"r{i}", rng.choice(subs[1:]), rng.choice(subs[1:])) for i in range(4)]
    sys = ReactionSystem(bg, reactions)
    tau = trajectory(sys, rng.choice(subs), len(subs) + 1)
    assert detect_cycle(tau) is not None
