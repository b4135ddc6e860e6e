from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conic_forge.exactmath import (
    Ineq,
    canonical_direction,
    coordinate_range,
    det,
    fm_solve,
    hnf,
    invariant_factors,
    lattice_canonical,
    nullspace_vector,
    primitive,
    rank,
    rational_feasible,
    rational_point,
    snf,
)

from kernel_cases import (
    check_fm_against_grid,
    check_hnf,
    check_lattice_canonical,
    check_snf,
    fraction_point_ok,
    grid_feasible,
    random_system,
)

small_matrix = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-6, 6), min_size=cols, max_size=cols), min_size=rows, max_size=rows
        )
    )
)


def test_snf_identity_and_zero():
    assert snf([[1, 0], [0, 1]])[0] == ((1, 0), (0, 1))
    assert snf([[0, 0, 0], [0, 0, 0]])[0] == ((0, 0, 0), (0, 0, 0))


def test_snf_two_by_two():
    s, _, _ = snf([[2, 4], [6, 8]])
    assert s == ((2, 0), (0, 4))
    assert invariant_factors([[2, 4], [6, 8]]) == (2, 4)


def test_hnf_examples():
    assert hnf([[1, 0], [0, 1]])[0] == ((1, 0), (0, 1))
    assert hnf([[2], [3]])[0] == ((1,), (0,))
    assert hnf([[0, 0]])[0] == ((0, 0),)


@settings(max_examples=300, deadline=None)
@given(small_matrix)
def test_snf_identity_property(m):
    check_snf(m)


@settings(max_examples=300, deadline=None)
@given(small_matrix)
def test_hnf_identity_property(m):
    check_hnf(m)


@settings(max_examples=200, deadline=None)
@given(small_matrix)
def test_snf_product_matches_determinant(m):
    if len(m) == len(m[0]):
        prod = 1
        for d in invariant_factors(m):
            prod *= d
        assert prod == abs(det(m))


def test_rank_and_nullspace():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([]) == 0
    v = nullspace_vector([[1, 1, 0], [0, 1, 1]], 3)
    assert v is not None and canonical_direction(v) == (1, -1, 1)
    assert nullspace_vector([[1, 0], [0, 1]], 2) is None


def test_primitive_and_direction():
    assert primitive((4, -6, 0)) == (2, -3, 0)
    assert canonical_direction((0, -2, 4)) == (0, 1, -2)


def test_lattice_canonical_examples():
    assert lattice_canonical([(1, 0), (0, 1)], (7, -3)) == (0, 0)
    assert lattice_canonical([], (7, -3)) == (7, -3)
    assert lattice_canonical([(2, 0), (0, 2)], (3, 5)) == (1, 1)


def test_lattice_canonical_exhaustive_cosets():
    gens = [(2, 0), (0, 2)]
    reps = {lattice_canonical(gens, (x, y)) for x in range(-4, 5) for y in range(-4, 5)}
    assert reps == {(0, 0), (0, 1), (1, 0), (1, 1)}


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_lattice_canonical_coset_constant(seed):
    check_lattice_canonical(random.Random(seed))


def test_rational_feasible_examples():
    assert rational_feasible([[1]], [0], [1], [True], [True])
    assert not rational_feasible([[1], [1]], [None, 0], [0, None], [False, True], [True, False])
    assert not rational_feasible([[1]], [1], [0])
    assert rational_feasible([], [], [], ncols=2)


def test_rational_feasible_realized_ceiling_pattern():
    # x = (x0, x1, x2) in (-1, 0]^3 with rows x1 - x0, x2 - x0, -x1, -x2.
    sigma = [[-1, 1, 0], [-1, 0, 1], [0, -1, 0], [0, 0, -1]]
    x = (Fraction(-1, 2), Fraction(-1, 4), Fraction(-3, 4))
    a = [-(-sum(c * xi for c, xi in zip(row, x)) // 1) for row in sigma]
    rows = sigma + [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    lo = [ai - 1 for ai in a] + [-1, -1, -1]
    hi = list(a) + [0, 0, 0]
    strict = [True] * len(a) + [True, True, True]
    assert rational_feasible(rows, lo, hi, strict, [False] * len(rows))


def test_fm_strict_witness():
    qs = [Ineq((1, 1), Fraction(1), True, 1), Ineq((-1, 0), Fraction(0), True, 2), Ineq((0, -1), Fraction(0), True, 4)]
    x = fm_solve(qs, 2)
    assert x is not None and x[0] + x[1] < 1 and x[0] > 0 and x[1] > 0


def test_coordinate_range():
    qs = [Ineq((1, 1), Fraction(3), False, 1), Ineq((-1, 0), Fraction(0), False, 2), Ineq((0, -1), Fraction(-1), True, 4)]
    lo, lo_s, hi, hi_s = coordinate_range(qs, 2, 0)
    assert (lo, lo_s, hi, hi_s) == (0, False, 2, True)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_fm_matches_grid(seed):
    check_fm_against_grid(random.Random(seed))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_fm_witness_satisfies_system(seed):
    a, lo, hi = random_system(random.Random(seed))
    x = rational_point(a, lo, hi)
    assert (x is not None) == grid_feasible(a, lo, hi)
    if x is not None:
        assert fraction_point_ok(a, lo, hi, x)


@pytest.mark.parametrize("seed", range(5))
def test_snf_larger_matrices(seed):
    rng = random.Random(seed)
    m = [[rng.randint(-20, 20) for _ in range(6)] for _ in range(5)]
    check_snf(m)
    check_hnf(m)
