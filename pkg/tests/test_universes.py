from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_subobjects
from surf.core import enumerate_subobjects, validate_subobject
from surf.cover import build_cover_background
from surf.universes import (
    KINDS,
    DanglingReference,
    DuplicateId,
    HypergraphBackground,
    NotAPartialOrder,
    PairOutsideBackground,
    PosetBackground,
    UnknownLabel,
    construct_background,
    poset_closure,
    random_background,
    transitive_closure,
)

CHAIN = [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c"), ("a", "c")]


def test_construct_set():
    bg = construct_background("set", {"elements": ["a", "b", "c"]})
    assert len(enumerate_subobjects(bg)) == 8


def test_cover_background_sizes():
    bg = build_cover_background(3, 5)
    assert len(bg.elements["V"]) == 5
    twins = [e for e in bg.elements["E"] if not e.startswith("flag")]
    assert len(twins) == 2 * (5 + 25 + 125) == 310
    assert len(bg.elements["E"]) == 315


def test_construct_graph_and_hypergraph():
    g = construct_background("graph", {"vertices": ["a", "b"],
                                       "edges": [{"id": "e", "source": "a", "target": "b", "label": "x"}]})
    assert len(enumerate_subobjects(g)) == 5
    h = construct_background("hypergraph", {"vertices": ["1", "2"], "alphabet": ["*"],
                                            "edges": [{"id": "h", "attachment": ["1", "2", "1"], "label": "*"}]})
    assert h.att["h"] == ("1", "2", "1")
    assert len(enumerate_subobjects(h)) == 5


def test_construct_rejects_bad_data():
    with pytest.raises(DanglingReference):
        construct_background("graph", {"vertices": ["a"],
                                       "edges": [{"id": "e", "source": "a", "target": "z", "label": "x"}]})
    with pytest.raises(DuplicateId):
        construct_background("set", {"elements": ["a", "a"]})
    with pytest.raises(UnknownLabel):
        HypergraphBackground("h", ["1"], [("e", ["1"], "?")], ["*"])


def test_not_a_partial_order():
    with pytest.raises(NotAPartialOrder) as exc:
        PosetBackground("p", "ab", [("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")])
    assert exc.value.axiom == "anti-symmetry"
    assert set(exc.value.witness) == {"a", "b"}


def test_transitive_closure_examples():
    assert transitive_closure({("a", "b"), ("b", "c")}) == {("a", "b"), ("b", "c"), ("a", "c")}
    assert transitive_closure(set(CHAIN)) == set(CHAIN)
    assert transitive_closure(set()) == set()


def test_poset_closure_checks_background():
    chain = PosetBackground("chain", "abc", CHAIN)
    assert ("a", "c") in poset_closure(chain, [("a", "b"), ("b", "c")])
    with pytest.raises(PairOutsideBackground):
        poset_closure(chain, [("c", "a")])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(KINDS))
def test_random_backgrounds_enumerate_like_brute_force(seed, kind):
    rng = random.Random(seed)
    bg = random_background(kind, rng, size=3)
    if bg.element_count() > 12:
        return
    assert set(enumerate_subobjects(bg)) == set(brute_subobjects(bg))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(KINDS))
def test_random_subobjects_are_valid(seed, kind):
    rng = random.Random(seed)
    bg = random_background(kind, rng)
    s = bg.random_subobject(rng)
    assert validate_subobject(bg, s.as_dict()) == s
