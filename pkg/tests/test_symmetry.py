from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from conic_forge.graph import complete_graph, from_edges, gen_family
from conic_forge.poset import all_posets, antichain, chain, is_general_x_shape
from conic_forge.symmetry import classify_hibi, classify_stab, is_quasi_symmetric, is_weakly_symmetric, lines
from conic_forge.toric import hibi_presentation


def test_quasi_examples():
    assert is_quasi_symmetric([(1,), (1,), (-1,), (-1,)])
    assert not is_quasi_symmetric([(1,), (1,), (-1,)])
    assert is_quasi_symmetric([])
    assert is_quasi_symmetric([(0, 0), (0, 0)])


def test_weakly_examples():
    assert is_weakly_symmetric([(1, 0), (-1, 0), (2, 0)])
    assert not is_weakly_symmetric([(1, 0), (0, 1), (-1, 0)])
    assert is_weakly_symmetric([])


def test_lines_grouping():
    ls = lines([(2, 0), (-1, 0), (0, 3)])
    assert [(ln.direction, ln.weight_sum, ln.cone) for ln in ls] == [
        ((0, 1), (0, 3), "ray+"),
        ((1, 0), (1, 0), "line"),
    ]


vectors = st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), max_size=8)


@settings(max_examples=300, deadline=None)
@given(vectors)
def test_quasi_implies_weakly(ws):
    if is_quasi_symmetric(ws):
        assert is_weakly_symmetric(ws)


@settings(max_examples=200, deadline=None)
@given(vectors)
def test_symmetrized_multiset_is_quasi(ws):
    both = ws + [tuple(-x for x in w) for w in ws]
    assert is_quasi_symmetric(both) and is_weakly_symmetric(both)


def test_classify_hibi_examples():
    rep = classify_hibi(antichain(2))
    assert (rep.structural, rep.weakly, rep.quasi, rep.gorenstein) == (True, True, True, True)
    rep = classify_hibi(antichain(3))
    assert not rep.structural and not rep.weakly
    rep = classify_hibi(chain(4))
    assert rep.structural and rep.weakly and rep.quasi and rep.lines == ()


def test_classify_stab_examples():
    rep = classify_stab(complete_graph(4))
    assert rep.structural and rep.weakly and rep.quasi and rep.gorenstein
    rep = classify_stab(from_edges(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]))
    assert rep.structural and rep.weakly and rep.gorenstein
    rep = classify_stab(gen_family((1, 1, 1)).graph)
    assert not rep.structural and not rep.weakly


def test_hibi_weak_symmetry_matches_structure_up_to_six():
    for p in all_posets(6):
        weights = hibi_presentation(p).weights
        assert is_weakly_symmetric(weights) == is_general_x_shape(p)
