"""Exact integer and rational linear algebra.

Matrices are plain tuples of row tuples of Python ints, so they are immutable
and never overflow. The module provides Smith and Hermite normal forms with
their unimodular transforms, reduction of vectors modulo an integer lattice,
and exact feasibility of rational linear systems with strict inequalities by
Fourier-Motzkin elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def as_matrix(rows: Iterable[Iterable[int]], ncols: Optional[int] = None) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    widths = {len(r) for r in m}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    if ncols is not None and m and len(m[0]) != ncols:
        raise ValueError("column count mismatch")
    return m


def shape(m: Matrix, ncols: int = 0) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else ncols)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def transpose(m: Matrix, ncols: int = 0) -> Matrix:
    rows, cols = shape(m, ncols)
    return tuple(tuple(m[i][j] for i in range(rows)) for j in range(cols))


def matmul(a: Matrix, b: Matrix, inner: int = 0, bcols: int = 0) -> Matrix:
    """Product of ``a`` (p x q) and ``b`` (q x r).

    ``inner`` and ``bcols`` give the dimensions when a factor has no rows.
    """
    q = len(b) if b else inner
    r = len(b[0]) if b else bcols
    if a and len(a[0]) != q:
        raise ValueError("inner dimensions differ")
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(q)) for j in range(r)) for row in a
    )


def matvec(m: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def det(m: Matrix) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence[int]]) -> int:
    return len(_echelon_rows([list(r) for r in m]))


def _echelon_rows(rows: list[list[int]]) -> list[list[int]]:
    """Fraction-free row echelon form; returns the nonzero rows."""
    if not rows:
        return []
    ncols = len(rows[0])
    rows = [r[:] for r in rows]
    out: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        piv = next((r for r in rows if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        new_rows = []
        for r in rows:
            if r[col] != 0:
                r = [piv[col] * x - r[col] * y for x, y in zip(r, piv)]
                g = 0
                for x in r:
                    g = gcd(g, x)
                if g > 1:
                    r = [x // g for x in r]
            if any(r):
                new_rows.append(r)
        rows = new_rows
        out.append(piv)
        col += 1
    return out


def primitive(v: Sequence[int]) -> Vector:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def canonical_direction(v: Sequence[int]) -> Vector:
    """Primitive vector with first nonzero entry positive (zero stays zero)."""
    p = primitive(v)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    return p


def nullspace_vector(rows: Sequence[Sequence[int]], ncols: int) -> Optional[Vector]:
    """Primitive integer generator of a one-dimensional kernel, else None."""
    if not rows:
        return (1,) if ncols == 1 else None
    red = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(red)) if red[i][c] != 0), None)
        if p is None:
            continue
        red[r], red[p] = red[p], red[r]
        inv = 1 / red[r][c]
        red[r] = [x * inv for x in red[r]]
        for i in range(len(red)):
            if i != r and red[i][c] != 0:
                f = red[i][c]
                red[i] = [a - f * b for a, b in zip(red[i], red[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    vec = [Fraction(0)] * ncols
    vec[f] = Fraction(1)
    for i, c in enumerate(pivots):
        vec[c] = -red[i][f]
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    return canonical_direction([int(x * den) for x in vec])


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


def snf(m: Sequence[Sequence[int]], ncols: int = 0) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``S`` with unimodular ``U``, ``V`` and ``U*M*V == S``.

    The diagonal of ``S`` is nonnegative and each entry divides the next.
    """
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else ncols
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, f: int) -> None:
        # row[dst] += f * row[src]
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, f: int) -> None:
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return as_matrix(a), as_matrix(u), as_matrix(v)


def invariant_factors(m: Sequence[Sequence[int]], ncols: int = 0) -> tuple[int, ...]:
    s, _, _ = snf(m, ncols)
    return tuple(s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)))


def hnf(m: Sequence[Sequence[int]], ncols: int = 0) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form ``H == U*M``.

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``;
    zero rows sit at the bottom.
    """
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else ncols
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        while True:
            nz = [i for i in range(r, rows) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    f = a[i][c] // a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - f * y for x, y in zip(u[i], u[r])]
                    done = done and a[i][c] == 0
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        p = a[r][c]
        for i in range(r):
            f = a[i][c] // p
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                u[i] = [x - f * y for x, y in zip(u[i], u[r])]
        r += 1
    return as_matrix(a), as_matrix(u)


def lattice_canonical(generators: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    """Canonical representative of ``v`` modulo the row lattice of ``generators``."""
    out = list(v)
    if not generators:
        return tuple(out)
    if len(generators[0]) != len(out):
        raise ValueError("dimension mismatch")
    h, _ = hnf(generators)
    for row in h:
        c = next((j for j, x in enumerate(row) if x != 0), None)
        if c is None:
            break
        q = out[c] // row[c]
        if q:
            out = [x - q * y for x, y in zip(out, row)]
    return tuple(out)


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination


@dataclass(frozen=True)
class Ineq:
    """``coeffs . x <= bound`` (``<`` when strict); ``history`` is a bitmask of
    the input rows this inequality was derived from."""

    coeffs: tuple[int, ...]
    bound: Fraction
    strict: bool
    history: int


def _normalized(coeffs: Sequence[int], bound: Fraction, strict: bool, history: int) -> Ineq:
    g = 0
    for x in coeffs:
        g = gcd(g, x)
    if g > 1:
        coeffs = tuple(x // g for x in coeffs)
        bound = bound / g
    return Ineq(tuple(coeffs), Fraction(bound), strict, history)


def _prune(ineqs: Iterable[Ineq]) -> Optional[list[Ineq]]:
    """Drop trivial rows and keep the tightest per direction; None if a
    constant row is violated."""
    best: dict[tuple[int, ...], Ineq] = {}
    for q in ineqs:
        if not any(q.coeffs):
            if q.bound < 0 or (q.strict and q.bound == 0):
                return None
            continue
        cur = best.get(q.coeffs)
        if (
            cur is None
            or q.bound < cur.bound
            or (q.bound == cur.bound and q.strict and not cur.strict)
        ):
            best[q.coeffs] = q
    return list(best.values())


def _eliminate(
    ineqs: list[Ineq], k: int, n_eliminated: int, chernikov: bool = True
) -> Optional[list[Ineq]]:
    pos = [q for q in ineqs if q.coeffs[k] > 0]
    neg = [q for q in ineqs if q.coeffs[k] < 0]
    out = [q for q in ineqs if q.coeffs[k] == 0]
    limit = n_eliminated + 2  # Chernikov: history of size <= eliminated + 1
    for p in pos:
        for q in neg:
            hist = p.history | q.history
            if chernikov and hist.bit_count() > limit:
                continue
            a, b = -q.coeffs[k], p.coeffs[k]
            coeffs = tuple(a * x + b * y for x, y in zip(p.coeffs, q.coeffs))
            out.append(_normalized(coeffs, a * p.bound + b * q.bound, p.strict or q.strict, hist))
    return _prune(out)


def _pick_variable(ineqs: list[Ineq], live: list[int]) -> int:
    def cost(k: int) -> tuple[int, int]:
        p = sum(1 for q in ineqs if q.coeffs[k] > 0)
        n = sum(1 for q in ineqs if q.coeffs[k] < 0)
        return (p * n - p - n, k)

    return min(live, key=cost)


def _to_ineqs(
    a: Sequence[Sequence],
    lo: Sequence,
    hi: Sequence,
    strict_lo: Sequence[bool],
    strict_hi: Sequence[bool],
) -> list[Ineq]:
    out = []
    for i, row in enumerate(a):
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = tuple(int(x * den) for x in row)
        if hi[i] is not None:
            out.append(_normalized(ints, Fraction(hi[i]) * den, bool(strict_hi[i]), 1 << (2 * i)))
        if lo[i] is not None:
            out.append(
                _normalized(
                    tuple(-x for x in ints),
                    -Fraction(lo[i]) * den,
                    bool(strict_lo[i]),
                    1 << (2 * i + 1),
                )
            )
    return out


def _satisfies(q: Ineq, x: Sequence[Fraction]) -> bool:
    lhs = sum(c * v for c, v in zip(q.coeffs, x))
    return lhs < q.bound if q.strict else lhs <= q.bound


def fm_solve(ineqs: Sequence[Ineq], nvars: int) -> Optional[tuple[Fraction, ...]]:
    """Exact rational point satisfying every inequality, or None.

    The history-based pruning only discards rows, so an infeasibility verdict
    is always sound; a witness point is checked against the input and the
    elimination is repeated without pruning if the check fails.
    """
    point = _fm_solve(ineqs, nvars, True)
    if point is not None and not all(_satisfies(q, point) for q in ineqs):
        point = _fm_solve(ineqs, nvars, False)
    return point


def _fm_solve(ineqs: Sequence[Ineq], nvars: int, chernikov: bool) -> Optional[tuple[Fraction, ...]]:
    system = _prune(ineqs)
    if system is None:
        return None
    live = list(range(nvars))
    stages: list[tuple[int, list[Ineq]]] = []
    eliminated = 0
    while live:
        k = _pick_variable(system, live)
        stages.append((k, system))
        system = _eliminate(system, k, eliminated, chernikov)
        if system is None:
            return None
        live.remove(k)
        eliminated += 1
    x: list[Optional[Fraction]] = [None] * nvars
    for k, sys_k in reversed(stages):
        lo: Optional[Fraction] = None
        lo_strict = False
        hi: Optional[Fraction] = None
        hi_strict = False
        for q in sys_k:
            c = q.coeffs[k]
            if c == 0:
                continue
            rest = q.bound - sum(
                q.coeffs[j] * x[j] for j in range(nvars) if j != k and q.coeffs[j] != 0
            )
            val = rest / c
            if c > 0:
                if hi is None or val < hi or (val == hi and q.strict):
                    hi, hi_strict = val, q.strict
            else:
                if lo is None or val > lo or (val == lo and q.strict):
                    lo, lo_strict = val, q.strict
        if lo is not None and hi is not None:
            x[k] = lo if (lo == hi and not lo_strict and not hi_strict) else (lo + hi) / 2
        elif lo is not None:
            x[k] = lo + 1
        elif hi is not None:
            x[k] = hi - 1
        else:
            x[k] = Fraction(0)
    return tuple(Fraction(0) if v is None else v for v in x)


def fm_project(ineqs: Sequence[Ineq], nvars: int, keep: Sequence[int]) -> Optional[list[Ineq]]:
    """Eliminate every variable outside ``keep``; None when infeasible."""
    system = _prune(ineqs)
    if system is None:
        return None
    live = [k for k in range(nvars) if k not in set(keep)]
    eliminated = 0
    while live:
        k = _pick_variable(system, live)
        system = _eliminate(system, k, eliminated)
        if system is None:
            return None
        live.remove(k)
        eliminated += 1
    return system


def rational_feasible(
    a: Sequence[Sequence],
    lo: Sequence,
    hi: Sequence,
    strict_lo: Optional[Sequence[bool]] = None,
    strict_hi: Optional[Sequence[bool]] = None,
    ncols: Optional[int] = None,
) -> bool:
    """Decide whether some rational ``x`` has ``lo <= A x <= hi`` row-wise.

    ``None`` in ``lo``/``hi`` means that side is unbounded; the strict flags
    turn the corresponding side into a strict inequality.
    """
    return rational_point(a, lo, hi, strict_lo, strict_hi, ncols) is not None


def rational_point(
    a: Sequence[Sequence],
    lo: Sequence,
    hi: Sequence,
    strict_lo: Optional[Sequence[bool]] = None,
    strict_hi: Optional[Sequence[bool]] = None,
    ncols: Optional[int] = None,
) -> Optional[tuple[Fraction, ...]]:
    n = len(a[0]) if a else (ncols or 0)
    strict_lo = strict_lo if strict_lo is not None else [False] * len(a)
    strict_hi = strict_hi if strict_hi is not None else [False] * len(a)
    return fm_solve(_to_ineqs(a, lo, hi, strict_lo, strict_hi), n)


def coordinate_range(ineqs: Sequence[Ineq], nvars: int, k: int):
    """Exact (lo, lo_strict, hi, hi_strict) of variable ``k`` over the system.

    Returns None for an empty system; unbounded sides are None.
    """
    proj = fm_project(ineqs, nvars, [k])
    if proj is None:
        return None
    lo = hi = None
    lo_s = hi_s = False
    for q in proj:
        c = q.coeffs[k]
        val = q.bound / c
        if c > 0:
            if hi is None or val < hi or (val == hi and q.strict):
                hi, hi_s = val, q.strict
        elif c < 0:
            if lo is None or val > lo or (val == lo and q.strict):
                lo, lo_s = val, q.strict
    return lo, lo_s, hi, hi_s
