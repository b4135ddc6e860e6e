from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conic_forge.errors import CyclicRelation, RedundantCover
from conic_forge.poset import (
    all_posets,
    antichain,
    antichains,
    chain,
    comparability_graph,
    contains_x_shape,
    disjoint_union,
    from_covers,
    from_relation,
    hasse_hat,
    is_general_x_shape,
    is_pure,
    maximal_chains,
    maximal_chains_hat,
    ordinal_sum,
    parse_poset,
    poset_ideals,
    x_shape,
)

# Two minimal elements below one element below three maximal elements.
TWO_ONE_THREE = from_covers(6, [(1, 3), (2, 3), (3, 4), (3, 5), (3, 6)])
SMALL_POSETS = all_posets(5)


def test_from_covers_basic():
    p = from_covers(2, [])
    assert p == antichain(2)
    x = from_covers(5, [(1, 3), (2, 3), (3, 4), (3, 5)])
    assert x == x_shape()
    assert x.lt(1, 4) and not x.comparable(1, 2)


def test_from_covers_rejects_cycles_and_redundancy():
    with pytest.raises(CyclicRelation):
        from_covers(2, [(1, 2), (2, 1)])
    with pytest.raises(RedundantCover):
        from_covers(3, [(1, 2), (2, 3), (1, 3)])


def test_from_relation_reduces():
    p = from_relation(3, [(1, 2), (2, 3), (1, 3)])
    assert p == chain(3)


def test_parse_round_trip():
    p = x_shape()
    assert parse_poset(json.dumps(p.to_json())) == p


def test_hasse_hat_sizes():
    h = hasse_hat(antichain(2))
    assert (h.vertex_count, len(h.edges)) == (4, 4)
    h = hasse_hat(chain(3))
    assert (h.vertex_count, len(h.edges)) == (5, 4)
    h = hasse_hat(x_shape())
    assert (h.vertex_count, len(h.edges)) == (7, 8)


@pytest.mark.parametrize("p", SMALL_POSETS, ids=lambda p: json.dumps(p.to_json()))
def test_hasse_hat_single_source_and_sink(p):
    h = hasse_hat(p)
    assert h.sources() == [0] and h.sinks() == [h.top]


def test_ideals_and_chains():
    assert sorted(map(sorted, poset_ideals(antichain(2)))) == [[], [1], [1, 2], [2]]
    assert sorted(map(sorted, poset_ideals(chain(2)))) == [[], [1], [1, 2]]
    assert len(maximal_chains_hat(x_shape())) == 4
    assert len(maximal_chains(TWO_ONE_THREE)) == 6


def test_ideals_biject_with_antichains():
    for p in all_posets(6):
        assert len(poset_ideals(p)) == len(antichains(p))


def test_is_pure():
    assert is_pure(antichain(2))
    assert not is_pure(from_covers(3, [(1, 2)]))
    assert is_pure(x_shape())


def test_ordinal_sum_and_disjoint_union():
    assert ordinal_sum(chain(1), chain(1)) == chain(3)
    assert disjoint_union(chain(1), chain(1)) == antichain(2)
    bowtie = ordinal_sum(antichain(2), antichain(2))
    assert bowtie.element_count == 5
    middle = 3
    assert all(bowtie.comparable(middle, q) for q in range(1, 6) if q != middle)


def test_general_x_shape_examples():
    assert is_general_x_shape(antichain(2))
    assert is_general_x_shape(x_shape())
    assert not is_general_x_shape(antichain(3))
    assert contains_x_shape(x_shape())
    assert not contains_x_shape(chain(4))
    assert contains_x_shape(TWO_ONE_THREE)


two_chain_unions = st.tuples(st.integers(1, 3), st.integers(1, 3)).map(
    lambda ab: disjoint_union(chain(ab[0]), chain(ab[1]))
)
gx_pieces = st.one_of(st.integers(1, 3).map(chain), two_chain_unions)


@settings(max_examples=60, deadline=None)
@given(st.lists(gx_pieces, min_size=1, max_size=3))
def test_general_x_shape_closed_under_ordinal_sum(pieces):
    p = pieces[0]
    for q in pieces[1:]:
        p = ordinal_sum(p, q)
    assert is_general_x_shape(p)


def test_comparability_graph():
    assert sorted(comparability_graph(chain(3)).edges) == [(1, 2), (1, 3), (2, 3)]
    assert not comparability_graph(antichain(2)).edges
    assert sorted(comparability_graph(x_shape()).edges) == [
        (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)
    ]


def test_poset_enumeration_counts():
    counts = [0] * 7
    for p in all_posets(6):
        counts[p.element_count] += 1
    assert counts == [1, 1, 2, 5, 16, 63, 318]
