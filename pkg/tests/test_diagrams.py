from __future__ import annotations

import itertools

import pytest

from oracles import brute_subobjects
from surf.core import enumerate_subobjects
from surf.diagrams import (
    SCHEMES,
    Diagram,
    DiagramBackground,
    FixedSourceArrow,
    SchemeMismatch,
    SquareFails,
    check_diagram_morphism,
    instantiate_diagram_universe,
    make_scheme,
    shipped_scheme,
    typed_graph_background,
)
from surf.universes import GraphBackground, SetBackground


def test_graph_scheme_ok():
    scm = make_scheme("g", ["V", "E"], [("s", "E", "V"), ("t", "E", "V")])
    assert scm.free == ("V", "E")


def test_sigma_graph_scheme_ok():
    scm = make_scheme("sg", [("Sigma", ["x"]), "V", "E"], [("l", "E", "Sigma"), ("s", "E", "V")])
    assert scm.is_fixed("Sigma")


def test_arrow_out_of_fixed_component():
    with pytest.raises(FixedSourceArrow):
        make_scheme("bad", [("Sigma", ["x"]), "V"], [("oops", "Sigma", "V")])


def test_graph_scheme_matches_graph_kind():
    scm = shipped_scheme("graphs")
    d = Diagram.of({"V": ["a", "b"], "E": ["e"]}, {"s": {"e": "a"}, "t": {"e": "b"}})
    bg = instantiate_diagram_universe(scm, d)
    assert len(enumerate_subobjects(bg)) == 5
    g = GraphBackground("g", ["a", "b"], [("e", "a", "b", "")])
    assert len(enumerate_subobjects(g)) == 5


def test_single_component_is_sets():
    bg = instantiate_diagram_universe(shipped_scheme("sets"), Diagram.of({"X": "abc"}, {}))
    assert len(enumerate_subobjects(bg)) == len(enumerate_subobjects(SetBackground("s", "abc")))


def _two_element_diagram(scm):
    sets = {c: [f"{c.lower()}1", f"{c.lower()}2"] for c in scm.free}
    maps = {}
    for i, a in enumerate(scm.arrows):
        tgt = sorted(scm.fixed.get(a.target, sets.get(a.target)))
        maps[a.name] = {x: tgt[(j + i) % len(tgt)] for j, x in enumerate(sets[a.source])}
    return Diagram.of(sets, maps)


@pytest.mark.parametrize("name", SCHEMES)
def test_shipped_schemes_count_like_brute_force(name):
    scm = shipped_scheme(name)
    bg = DiagramBackground(name, scm, _two_element_diagram(scm))
    assert set(enumerate_subobjects(bg)) == set(brute_subobjects(bg))


def test_typed_graph_counts():
    bg = typed_graph_background(["N"], {"link": ("N", "N")},
                                {"a": "N", "b": "N"}, {"e": ("a", "b", "link"), "f": ("b", "b", "link")})
    assert set(enumerate_subobjects(bg)) == set(brute_subobjects(bg))
    with pytest.raises(SchemeMismatch):
        typed_graph_background(["N", "M"], {"link": ("N", "N")},
                               {"a": "N", "b": "M"}, {"e": ("a", "b", "link")})


def test_diagram_morphisms():
    scm = shipped_scheme("graphs")
    d1 = Diagram.of({"V": ["a", "b"], "E": ["e"]}, {"s": {"e": "a"}, "t": {"e": "b"}})
    ident = {"V": {"a": "a", "b": "b"}, "E": {"e": "e"}}
    assert check_diagram_morphism(ident, scm, d1, d1) is True
    loop = Diagram.of({"V": ["v"], "E": ["l"]}, {"s": {"l": "v"}, "t": {"l": "v"}})
    collapse = {"V": {"a": "v", "b": "v"}, "E": {"e": "l"}}
    assert check_diagram_morphism(collapse, scm, d1, loop) is False
    back = Diagram.of({"V": ["a", "b"], "E": ["e"]}, {"s": {"e": "b"}, "t": {"e": "a"}})
    with pytest.raises(SquareFails):
        check_diagram_morphism(ident, scm, d1, back)


def test_relabeling_is_not_a_morphism():
    scm = shipped_scheme("sigma-sets")
    d1 = Diagram.of({"X": ["x"]}, {"l": {"x": "a"}})
    d2 = Diagram.of({"X": ["x"]}, {"l": {"x": "b"}})
    with pytest.raises(SquareFails):
        check_diagram_morphism({"X": {"x": "x"}}, scm, d1, d2)


def test_fixed_components_never_appear_in_subobjects():
    scm = shipped_scheme("sigma-graphs")
    bg = DiagramBackground("sg", scm, _two_element_diagram(scm))
    assert "Sigma" not in bg.components
    for s in itertools.islice(enumerate_subobjects(bg), 20):
        assert set(dict(s.items())) == {"V", "E"}
