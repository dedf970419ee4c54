from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surf.core import intersect, is_included, union_all
from surf.diagrams import SCHEMES, random_diagram_background
from surf.laws import LAWS, check_bounds_against_enumeration, check_kind, check_laws
from surf.universes import KINDS, random_background


@pytest.mark.parametrize("kind", KINDS)
def test_every_law_on_every_kind(kind):
    for res in check_kind(kind, cases=40, seed=11):
        assert res.passed, (res.law, res.failures[:1])


@pytest.mark.parametrize("scheme", SCHEMES)
def test_every_law_on_every_scheme(scheme):
    results = check_laws(lambda rng: random_diagram_background(rng, size=2, scheme=scheme), 25, 5)
    assert all(r.passed for r in results)
    assert {r.law for r in results} == set(LAWS)


def test_check_laws_is_seeded():
    a = check_kind("graph", cases=10, seed=1)
    b = check_kind("graph", cases=10, seed=1)
    assert [(r.law, r.cases) for r in a] == [(r.law, r.cases) for r in b]


@pytest.mark.parametrize("kind", KINDS)
def test_bounds_match_brute_force(kind):
    rng = random.Random(kind)
    for _ in range(3):
        bg = random_background(kind, rng, size=3)
        assert check_bounds_against_enumeration(bg, 20, seed=rng.randrange(1000)) == []


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(KINDS))
def test_inclusion_is_a_partial_order(seed, kind):
    rng = random.Random(seed)
    bg = random_background(kind, rng)
    p, q = bg.random_subobject(rng), bg.random_subobject(rng)
    assert is_included(p, p)
    if is_included(p, q) and is_included(q, p):
        assert p == q
    assert is_included(intersect(p, q), union_all(bg, [p, q]))
