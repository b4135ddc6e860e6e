"""Random instances and independent checks shared by the kernel tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import numpy as np

from conic_forge.exactmath import det, hnf, lattice_canonical, matmul, rational_feasible, snf


def random_matrix(rng: random.Random, max_dim: int = 4, entry: int = 6) -> list[list[int]]:
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return [[rng.randint(-entry, entry) for _ in range(cols)] for _ in range(rows)]


def check_snf(m: list[list[int]]) -> None:
    rows, cols = len(m), len(m[0])
    s, u, v = snf(m)
    assert matmul(matmul(u, m), v, cols, cols) == s
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    diag = []
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert s[i][j] == 0
            else:
                diag.append(s[i][j])
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)


def check_hnf(m: list[list[int]]) -> None:
    rows, cols = len(m), len(m[0])
    h, u = hnf(m)
    assert matmul(u, m, rows, cols) == h
    assert abs(det(u)) == 1
    last_pivot = -1
    seen_zero = False
    for i, row in enumerate(h):
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            seen_zero = True
            continue
        assert not seen_zero
        assert c > last_pivot and row[c] > 0
        assert all(0 <= h[k][c] < row[c] for k in range(i))
        last_pivot = c


def same_lattice(a: list[list[int]], b: list[list[int]]) -> bool:
    ha, _ = hnf(a)
    hb, _ = hnf(b)
    return [r for r in ha if any(r)] == [r for r in hb if any(r)]


def check_lattice_canonical(rng: random.Random) -> None:
    dim = rng.randint(1, 3)
    gens = [[rng.randint(-4, 4) for _ in range(dim)] for _ in range(rng.randint(0, 3))]
    v = [rng.randint(-9, 9) for _ in range(dim)]
    w = list(v)
    for g in gens:
        c = rng.randint(-3, 3)
        w = [x + c * y for x, y in zip(w, g)]
    cv = lattice_canonical(gens, v)
    assert cv == lattice_canonical(gens, w)
    assert lattice_canonical(gens, cv) == cv
    diff = [x - y for x, y in zip(v, cv)]
    if gens:
        assert same_lattice(gens, gens + [diff])
    else:
        assert not any(diff)


def random_system(rng: random.Random, nvars: int = 3):
    """Integer rows in {-1,0,1}, integer bounds, plus the box [-2,2]^3."""
    a, lo, hi = [], [], []
    for _ in range(rng.randint(1, 5)):
        row = [rng.randint(-1, 1) for _ in range(nvars)]
        a.append(row)
        lo.append(rng.choice([None, rng.randint(-3, 2)]))
        hi.append(rng.choice([None, rng.randint(-2, 3)]))
    for k in range(nvars):
        a.append([int(j == k) for j in range(nvars)])
        lo.append(-2)
        hi.append(2)
    return a, lo, hi


# Every 3x3 minor of a {-1,0,1} matrix has |det| <= 4, so each vertex of the
# bounded region has coordinates with denominator dividing 12.
_GRID = np.array(list(product(range(-24, 25), repeat=3)), dtype=np.int64)


def grid_feasible(a, lo, hi) -> bool:
    vals = _GRID @ np.array(a, dtype=np.int64).T
    ok = np.ones(len(_GRID), dtype=bool)
    for i in range(len(a)):
        if lo[i] is not None:
            ok &= vals[:, i] >= 12 * lo[i]
        if hi[i] is not None:
            ok &= vals[:, i] <= 12 * hi[i]
    return bool(ok.any())


def check_fm_against_grid(rng: random.Random) -> None:
    a, lo, hi = random_system(rng)
    assert rational_feasible(a, lo, hi) == grid_feasible(a, lo, hi)


def fraction_point_ok(a, lo, hi, x) -> bool:
    for row, l, h in zip(a, lo, hi):
        val = sum(Fraction(c) * xi for c, xi in zip(row, x))
        if (l is not None and val < l) or (h is not None and val > h):
            return False
    return True
