from __future__ import annotations

import pytest

from oracles import brute_subobjects
from surf.core import (
    ClosureViolation,
    TooLarge,
    UnknownElement,
    empty_subobject,
    enumerate_subobjects,
    intersect,
    is_included,
    union_all,
    validate_subobject,
)
from surf.cover import build_cover_background
from surf.universes import GraphBackground, PosetBackground, SetBackground

CHAIN = [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c"), ("a", "c")]


@pytest.fixture
def chain():
    return PosetBackground("chain", "abc", CHAIN)


def test_empty_subobject_is_included_everywhere(chain):
    e = empty_subobject(chain)
    assert e.is_empty()
    assert all(is_included(e, s) for s in enumerate_subobjects(chain))


def test_empty_of_cover_background_has_nothing():
    e = empty_subobject(build_cover_background(3, 5))
    assert e.size() == 0


def test_validate_rejects_dangling_edge():
    g = GraphBackground("g", ["a", "b"], [("e", "a", "b", "x")])
    with pytest.raises(ClosureViolation) as exc:
        validate_subobject(g, {"E": ["e"]})
    assert exc.value.element == ("E", "e")
    assert set(exc.value.missing) == {("V", "a"), ("V", "b")}


def test_validate_unknown_element():
    with pytest.raises(UnknownElement):
        validate_subobject(SetBackground("s", "ab"), {"S": ["z"]})


def test_validate_induced_hyperedge():
    bg = build_cover_background(3, 5)
    s = validate_subobject(bg, {"V": ["1", "2", "3"], "E": ["(123,*)"]})
    assert s["E"] == {"(123,*)"}


def test_validate_subposet(chain):
    s = validate_subobject(chain, {"A": ["a", "c"], "R": [("a", "a"), ("c", "c"), ("a", "c")]})
    assert s in brute_subobjects(chain)


def test_validate_requires_reflexive_pair(chain):
    with pytest.raises(ClosureViolation):
        validate_subobject(chain, {"A": ["a"]})


def test_intersect_sets():
    bg = SetBackground("s", "abc")
    s1 = validate_subobject(bg, {"S": "ab"})
    s2 = validate_subobject(bg, {"S": "bc"})
    assert intersect(s1, s2) == validate_subobject(bg, {"S": "b"})


def test_intersect_subposets(chain):
    ab = validate_subobject(chain, {"A": "ab", "R": [("a", "a"), ("b", "b"), ("a", "b")]})
    bc = validate_subobject(chain, {"A": "bc", "R": [("b", "b"), ("c", "c"), ("b", "c")]})
    assert intersect(ab, bc) == validate_subobject(chain, {"A": "b", "R": [("b", "b")]})
    assert union_all(chain, [ab, bc]) == chain.full()


def test_union_special_cases(chain):
    assert union_all(chain, []) == chain.empty()
    s = chain.full()
    assert union_all(chain, [s]) is s


def test_enumeration_counts(chain):
    assert len(enumerate_subobjects(SetBackground("s", "ab"))) == 4
    assert len(enumerate_subobjects(SetBackground("s", "abc"))) == 8
    g = GraphBackground("g", ["a", "b"], [("e", "a", "b", "x")])
    assert len(enumerate_subobjects(g)) == 5
    two = PosetBackground("two", "ab", [("a", "a"), ("b", "b"), ("a", "b")])
    assert len(enumerate_subobjects(two)) == 5


@pytest.mark.parametrize("make", [
    lambda: SetBackground("s", "abcd"),
    lambda: GraphBackground("g", "abc", [("e", "a", "b", "x"), ("f", "b", "b", "y"), ("h", "c", "a", "x")]),
    lambda: PosetBackground("chain", "abc", CHAIN),
    lambda: PosetBackground("v", "abc", [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("a", "c")]),
])
def test_enumeration_matches_brute_force(make):
    bg = make()
    listed = enumerate_subobjects(bg)
    assert len(set(listed)) == len(listed)
    assert set(listed) == set(brute_subobjects(bg))
    assert listed == sorted(listed)


def test_enumeration_cap():
    with pytest.raises(TooLarge):
        enumerate_subobjects(SetBackground("s", [f"x{i}" for i in range(12)]), cap=1000)


def test_subobjects_of_different_backgrounds_do_not_mix():
    a, b = SetBackground("a", "xy"), SetBackground("b", "xy")
    with pytest.raises(Exception):
        intersect(a.full(), b.full())
