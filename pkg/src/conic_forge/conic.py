"""Conic divisorial ideal classes computed three ways.

* interior lattice points of the zonotope ``W' = sum [0, beta_i]``;
* lattice points of explicit inequality regions built from circuits of a
  Hasse diagram (Hibi rings) or from clique multisets (stable set rings);
* the definition itself: ceiling vectors of ``sigma(x)`` for ``x`` in the
  half-open cube ``(-1, 0]^d``, decided by exact rational feasibility.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import ceil, floor, gcd
from typing import Iterable, Optional, Sequence

from . import config
from . import exactmath as em
from .errors import BadMultiset, RankDeficient, TooLarge, Unbounded, InvariantViolation
from .graph import SimpleGraph, all_cycles, chordless_cycles, spanning_tree_with_cycles
from .poset import Poset, hasse_hat
from .toric import ToricPresentation, class_of, stab_presentation

ClassVector = tuple[int, ...]


@dataclass(frozen=True)
class Constraint:
    """``lo <= <normal, z> <= hi``."""

    normal: tuple[int, ...]
    lo: int
    hi: int
    provenance: str = ""
    info: dict = field(default_factory=dict, compare=False, hash=False)

    def to_json(self) -> dict:
        out = {"normal": list(self.normal), "lo": self.lo, "hi": self.hi, "provenance": self.provenance}
        out.update(self.info)
        return out


@dataclass(frozen=True)
class IneqRegion:
    dim: int
    constraints: tuple[Constraint, ...]

    def contains(self, z: Sequence[int]) -> bool:
        return all(c.lo <= _dot(c.normal, z) <= c.hi for c in self.constraints)

    def tightened(self) -> "IneqRegion":
        """Integer points strictly inside: bounds moved inward by one."""
        return IneqRegion(
            self.dim,
            tuple(Constraint(c.normal, c.lo + 1, c.hi - 1, c.provenance, c.info) for c in self.constraints),
        )

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.constraints]


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def make_constraint(normal: Sequence[int], lo, hi, provenance: str = "", info=None) -> Optional[Constraint]:
    """Primitive, sign-normalized constraint with integer bounds rounded inward.

    Returns None for a zero normal (after checking ``lo <= 0 <= hi``).
    """
    normal = tuple(int(x) for x in normal)
    g = 0
    for x in normal:
        g = gcd(g, x)
    if g == 0:
        if not (lo <= 0 <= hi):
            raise InvariantViolation("zero normal with bounds excluding zero")
        return None
    lo_f, hi_f = Fraction(lo) / g, Fraction(hi) / g
    normal = tuple(x // g for x in normal)
    first = next(x for x in normal if x != 0)
    if first < 0:
        normal = tuple(-x for x in normal)
        lo_f, hi_f = -hi_f, -lo_f
    return Constraint(normal, ceil(lo_f), floor(hi_f), provenance, dict(info or {}))


# ---------------------------------------------------------------------------
# Lattice points of a region


def _axis_box(region: IneqRegion) -> list[Optional[tuple[int, int]]]:
    box: list[Optional[tuple[int, int]]] = [None] * region.dim
    for c in region.constraints:
        nz = [i for i, x in enumerate(c.normal) if x != 0]
        if len(nz) == 1 and abs(c.normal[nz[0]]) == 1:
            i = nz[0]
            lo, hi = (c.lo, c.hi) if c.normal[i] == 1 else (-c.hi, -c.lo)
            cur = box[i]
            box[i] = (lo, hi) if cur is None else (max(cur[0], lo), min(cur[1], hi))
    return box


def region_ineqs(region: IneqRegion) -> list[em.Ineq]:
    rows = [c.normal for c in region.constraints]
    return em._to_ineqs(
        rows,
        [c.lo for c in region.constraints],
        [c.hi for c in region.constraints],
        [False] * len(rows),
        [False] * len(rows),
    )


def bounding_box(region: IneqRegion, hint: Optional[Sequence[tuple[int, int]]] = None) -> Optional[list[tuple[int, int]]]:
    """Integer box containing every lattice point; None when the region is empty."""
    box = _axis_box(region)
    if hint is not None:
        box = [h if b is None else (max(b[0], h[0]), min(b[1], h[1])) for b, h in zip(box, hint)]
    ineqs = None
    for k in range(region.dim):
        if box[k] is not None:
            continue
        if ineqs is None:
            ineqs = region_ineqs(region)
        rng = em.coordinate_range(ineqs, region.dim, k)
        if rng is None:
            return None
        lo, _, hi, _ = rng
        if lo is None or hi is None:
            raise Unbounded(f"coordinate {k} is unbounded")
        box[k] = (ceil(lo), floor(hi))
    return box  # type: ignore[return-value]


def lattice_points(region: IneqRegion, hint: Optional[Sequence[tuple[int, int]]] = None) -> list[ClassVector]:
    """All integer points, sorted, by depth-first search over a bounding box
    with interval pruning on every constraint."""
    if region.dim == 0:
        if all(c.lo <= 0 <= c.hi for c in region.constraints):
            return [()]
        return []
    box = bounding_box(region, hint)
    if box is None or any(lo > hi for lo, hi in box):
        return []
    cons = [(c.normal, c.lo, c.hi) for c in region.constraints]
    r = region.dim
    # tail[k][c] = (min, max) of sum_{j >= k} normal_j z_j over the box
    tail = [[(0, 0)] * len(cons) for _ in range(r + 1)]
    for k in range(r - 1, -1, -1):
        lo, hi = box[k]
        for ci, (nrm, _, _) in enumerate(cons):
            a, b = nrm[k] * lo, nrm[k] * hi
            tmin, tmax = tail[k + 1][ci]
            tail[k][ci] = (tmin + min(a, b), tmax + max(a, b))
    out: list[ClassVector] = []
    partial = [0] * len(cons)
    z = [0] * r

    def walk(k: int) -> None:
        if k == r:
            out.append(tuple(z))
            return
        lo, hi = box[k]
        for v in range(lo, hi + 1):
            ok = True
            for ci, (nrm, clo, chi) in enumerate(cons):
                s = partial[ci] + nrm[k] * v
                tmin, tmax = tail[k + 1][ci]
                if s + tmax < clo or s + tmin > chi:
                    ok = False
                    break
            if not ok:
                continue
            for ci, (nrm, _, _) in enumerate(cons):
                partial[ci] += nrm[k] * v
            z[k] = v
            walk(k + 1)
            for ci, (nrm, _, _) in enumerate(cons):
                partial[ci] -= nrm[k] * v

    walk(0)
    return out


def irredundant(region: IneqRegion) -> IneqRegion:
    """Drop every one-sided bound implied by the remaining constraints."""
    cons = list(region.constraints)
    kept_lo = [True] * len(cons)
    kept_hi = [True] * len(cons)
    for i, c in enumerate(cons):
        for side in ("hi", "lo"):
            rows, lo, hi = [], [], []
            for j, d in enumerate(cons):
                rows.append(d.normal)
                lo.append(d.lo if kept_lo[j] and (j != i or side != "lo") else None)
                hi.append(d.hi if kept_hi[j] and (j != i or side != "hi") else None)
            if side == "hi":
                rows.append(c.normal)
                lo.append(c.hi)
                hi.append(None)
                strict_lo = [False] * len(cons) + [True]
                strict_hi = [False] * (len(cons) + 1)
            else:
                rows.append(c.normal)
                lo.append(None)
                hi.append(c.lo)
                strict_lo = [False] * (len(cons) + 1)
                strict_hi = [False] * len(cons) + [True]
            if not em.rational_feasible(rows, lo, hi, strict_lo, strict_hi, region.dim):
                if side == "hi":
                    kept_hi[i] = False
                else:
                    kept_lo[i] = False
    return IneqRegion(
        region.dim, tuple(c for c, kl, kh in zip(cons, kept_lo, kept_hi) if kl or kh)
    )


# ---------------------------------------------------------------------------
# Zonotope facets and conic classes


def weight_directions(weights: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    return sorted({em.canonical_direction(w) for w in weights if any(w)})


def support(weights: Iterable[Sequence[int]], normal: Sequence[int]) -> tuple[int, int]:
    """Min and max of ``<normal, z>`` over the zonotope ``sum [0, beta_i]``."""
    lo = hi = 0
    for w in weights:
        v = _dot(normal, w)
        if v > 0:
            hi += v
        else:
            lo += v
    return lo, hi


def zonotope_facets(weights: Sequence[Sequence[int]], r: Optional[int] = None) -> IneqRegion:
    """Facets of ``W'``: one primitive normal per hyperplane spanned by
    ``r - 1`` independent weight directions, with the support bounds."""
    if r is None:
        r = len(weights[0]) if weights else 0
    if r == 0:
        return IneqRegion(0, ())
    if em.rank([list(w) for w in weights]) < r:
        raise RankDeficient("weights do not span the class group")
    dirs = weight_directions(weights)
    normals = set()
    if r == 1:
        normals.add((1,))
    else:
        for sub in combinations(dirs, r - 1):
            nv = em.nullspace_vector(sub, r)
            if nv is not None:
                normals.add(nv)
    out = []
    for nv in sorted(normals):
        lo, hi = support(weights, nv)
        out.append(Constraint(nv, lo, hi, "facet"))
    return IneqRegion(r, tuple(out))


def zonotope_box(weights: Sequence[Sequence[int]], r: int) -> list[tuple[int, int]]:
    box = []
    for k in range(r):
        box.append((sum(min(0, w[k]) for w in weights), sum(max(0, w[k]) for w in weights)))
    return box


def conic_classes(t: ToricPresentation) -> list[ClassVector]:
    """Integer points strictly inside every facet of the weight zonotope."""
    if t.class_rank == 0:
        return [()]
    facets = zonotope_facets(t.weights, t.class_rank)
    return lattice_points(facets.tightened(), zonotope_box(t.weights, t.class_rank))


def symmetry_center_doubled(t: ToricPresentation) -> ClassVector:
    """Twice the center of the zonotope, ``sum beta_i``."""
    return tuple(sum(w[k] for w in t.weights) for k in range(t.class_rank))


def is_centrally_symmetric(points: Iterable[Sequence[int]], center2: Sequence[int]) -> bool:
    s = {tuple(p) for p in points}
    return all(tuple(c - x for c, x in zip(center2, p)) in s for p in s)


def _merge(prev: Optional[Constraint], c: Constraint) -> Constraint:
    """Intersection of two constraints with the same normal."""
    if prev is None:
        return c
    return Constraint(c.normal, max(c.lo, prev.lo), min(c.hi, prev.hi), prev.provenance, prev.info)


# ---------------------------------------------------------------------------
# Hibi regions


def _cycle_normal(t_nontree: Sequence[int], vector: Sequence[int]) -> tuple[int, ...]:
    return tuple(vector[e] for e in t_nontree)


def region_CP(poset: Poset, prime: bool = False) -> IneqRegion:
    """One constraint per circuit of the Hasse diagram of P-hat, with bounds
    ``-|supp-| + 1 .. |supp+| - 1``; with ``prime`` every cycle is used and
    the bounds are ``-|supp-| .. |supp+|``."""
    hat = hasse_hat(poset)
    tree, _ = spanning_tree_with_cycles(hat)
    cycles = all_cycles(hat) if prime else chordless_cycles(hat)
    shift = 0 if prime else 1
    out = {}
    for cyc in cycles:
        nrm = _cycle_normal(tree.nontree, cyc.vector)
        c = make_constraint(
            nrm,
            -len(cyc.supp_minus) + shift,
            len(cyc.supp_plus) - shift,
            "cycle " + "-".join(map(str, cyc.vertices)),
        )
        if c is None:
            continue
        out[c.normal] = _merge(out.get(c.normal), c)
    return IneqRegion(len(tree.nontree), tuple(out[k] for k in sorted(out)))


# ---------------------------------------------------------------------------
# Stable set regions


@dataclass(frozen=True)
class IJInequality:
    normal: tuple[int, ...]
    lo_prime: int
    hi_prime: int
    lo: int
    hi: int
    x_plus: tuple[int, ...]
    x_minus: tuple[int, ...]
    multiplicity: dict = field(compare=False, hash=False, default_factory=dict)


def ineq_from_IJ(t: ToricPresentation, I: Sequence[int], J: Sequence[int]) -> IJInequality:
    """Inequality ``sum_I z_i - sum_J z_j`` (with ``z_0 = 0``) for clique
    multisets ``I``, ``J`` of a stable set presentation."""
    n = len(t.cliques) - 1
    I, J = list(I), list(J)
    if len(I) != len(J):
        raise BadMultiset("|I| must equal |J|")
    if set(I) & set(J):
        raise BadMultiset("I and J must be disjoint")
    if any(not (0 <= i <= n) for i in I + J):
        raise BadMultiset(f"clique indices must lie in 0..{n}")
    normal = [0] * n
    for i in I:
        if i:
            normal[i - 1] += 1
    for j in J:
        if j:
            normal[j - 1] -= 1
    verts = sorted({v for q in t.cliques for v in q})
    m = {}
    for v in verts:
        m[v] = sum(1 for i in I if v in t.cliques[i]) - sum(1 for j in J if v in t.cliques[j])
    xp = tuple(v for v in verts if m[v] > 0)
    xm = tuple(v for v in verts if m[v] < 0)
    hi_p = len(I) + sum(m[v] for v in xp)
    lo_p = -len(J) + sum(m[v] for v in xm)
    return IJInequality(tuple(normal), lo_p, hi_p, lo_p + 1, hi_p - 1, xp, xm, {v: m[v] for v in verts if m[v]})


def IJ_from_normal(normal: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Disjoint clique multisets with ``sum_I e_i - sum_J e_j = normal``,
    index 0 padding the shorter side."""
    I = [i + 1 for i, c in enumerate(normal) for _ in range(max(c, 0))]
    J = [i + 1 for i, c in enumerate(normal) for _ in range(max(-c, 0))]
    if len(I) < len(J):
        I = [0] * (len(J) - len(I)) + I
    else:
        J = [0] * (len(I) - len(J)) + J
    return tuple(I), tuple(J)


def region_CG_prime(g: SimpleGraph, t: Optional[ToricPresentation] = None) -> IneqRegion:
    """Facet constraints of ``W'`` annotated with their clique multisets; the
    bounds come from the multiset formula and must match the zonotope."""
    t = t or stab_presentation(g)
    if t.class_rank == 0:
        return IneqRegion(0, ())
    facets = zonotope_facets(t.weights, t.class_rank)
    out = []
    for f in facets.constraints:
        I, J = IJ_from_normal(f.normal)
        q = ineq_from_IJ(t, I, J)
        if q.normal != f.normal or (q.lo_prime, q.hi_prime) != (f.lo, f.hi):
            raise InvariantViolation(
                f"multiset bounds {q.lo_prime}..{q.hi_prime} differ from facet "
                f"{f.lo}..{f.hi} for normal {f.normal}"
            )
        out.append(
            Constraint(q.normal, q.lo_prime, q.hi_prime, "clique multisets", {"I": list(I), "J": list(J)})
        )
    return IneqRegion(t.class_rank, tuple(out))


def region_CG(g: SimpleGraph, t: Optional[ToricPresentation] = None) -> IneqRegion:
    """Tightened facet constraints: lattice points are the conic classes.
    Each constraint carries its untightened bounds as ``lo_prime``/``hi_prime``."""
    prime = region_CG_prime(g, t)
    return IneqRegion(
        prime.dim,
        tuple(
            Constraint(c.normal, c.lo + 1, c.hi - 1, c.provenance, dict(c.info, lo_prime=c.lo, hi_prime=c.hi))
            for c in prime.constraints
        ),
    )


def small_IJ_region(t: ToricPresentation, size: int) -> IneqRegion:
    """Untightened multiset constraints for all ``|I| = |J| <= size``.

    Normals are kept as computed (not divided by their content) so the real
    region is unchanged; the tightest bounds are kept per normal.
    """
    n = len(t.cliques) - 1
    best: dict[tuple[int, ...], Constraint] = {}
    for k in range(1, size + 1):
        for I in combinations_with_replacement(range(n + 1), k):
            for J in combinations_with_replacement(range(n + 1), k):
                if set(I) & set(J):
                    continue
                q = ineq_from_IJ(t, I, J)
                if not any(q.normal):
                    if not q.lo_prime <= 0 <= q.hi_prime:
                        raise InvariantViolation(f"multisets {I}, {J} exclude the origin")
                    continue
                c = Constraint(q.normal, q.lo_prime, q.hi_prime, "clique multisets", {"I": list(I), "J": list(J)})
                best[c.normal] = _merge(best.get(c.normal), c)
    return IneqRegion(n, tuple(best[k] for k in sorted(best)))


def intersect(*regions: IneqRegion) -> IneqRegion:
    """Conjunction of regions of equal dimension, merged per normal."""
    best: dict[tuple[int, ...], Constraint] = {}
    for reg in regions:
        for c in reg.constraints:
            best[c.normal] = _merge(best.get(c.normal), c)
    return IneqRegion(regions[0].dim, tuple(best[k] for k in sorted(best)))


# ---------------------------------------------------------------------------
# Definitional oracle


def conic_oracle(t: ToricPresentation, bound: Optional[int] = None) -> list[ClassVector]:
    """Classes of ``T(ceil(sigma(x)))`` over ``x`` in ``(-1, 0]^d``.

    Ceiling vectors are built row by row; a prefix is kept only if the
    corresponding half-open slab system is rationally feasible.
    """
    limit = config.max_d() if bound is None else bound
    d = t.ncols
    if d > limit + 1:
        raise TooLarge(f"{d} variables exceeds bound {limit + 1}")
    rows = t.sigma
    ranges = []
    for row in rows:
        pos = sum(c for c in row if c > 0)
        neg = -sum(c for c in row if c < 0)
        ranges.append(range(min(0, 1 - pos), neg + 1))
    base = []
    for j in range(d):
        e = tuple(int(i == j) for i in range(d))
        base.append(em.Ineq(e, Fraction(0), False, 0))
        base.append(em.Ineq(tuple(-x for x in e), Fraction(1), True, 0))
    found: set[ClassVector] = set()
    a: list[int] = []

    def slab(i: int, ai: int, bit: int) -> list[em.Ineq]:
        row = rows[i]
        return [
            em.Ineq(tuple(row), Fraction(ai), False, 1 << bit),
            em.Ineq(tuple(-x for x in row), Fraction(1 - ai), True, 1 << (bit + 1)),
        ]

    def walk(i: int, system: list[em.Ineq]) -> None:
        if i == len(rows):
            found.add(class_of(t, a))
            return
        for ai in ranges[i]:
            ext = system + slab(i, ai, 2 * i)
            if len(ranges[i]) > 1 and em.fm_solve(ext, d) is None:
                continue
            a.append(ai)
            walk(i + 1, ext)
            a.pop()

    walk(0, base)
    return sorted(found)


# ---------------------------------------------------------------------------
# Zonotope equality


@dataclass(frozen=True)
class EqualityReport:
    zonotope_in_region: bool
    region_in_zonotope: bool
    failures: tuple[str, ...]
    counterexample: Optional[tuple[Fraction, ...]] = None

    @property
    def equal(self) -> bool:
        return self.zonotope_in_region and self.region_in_zonotope

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "zonotope_in_region": self.zonotope_in_region,
            "region_in_zonotope": self.region_in_zonotope,
            "failures": list(self.failures),
            "counterexample": None if self.counterexample is None else [str(x) for x in self.counterexample],
        }


def expressible(weights: Sequence[Sequence[int]], z: Sequence) -> bool:
    """Whether ``z = sum a_i beta_i`` for some ``a`` in ``[0, 1]^m``."""
    m = len(weights)
    r = len(z)
    rows = [[w[k] for w in weights] for k in range(r)]
    lo = [Fraction(x) for x in z]
    hi = list(lo)
    for i in range(m):
        rows.append([int(j == i) for j in range(m)])
        lo.append(0)
        hi.append(1)
    return em.rational_feasible(rows, lo, hi, ncols=m)


def verify_zonotope_equality(t: ToricPresentation, region: IneqRegion) -> EqualityReport:
    """Decide ``W' == region`` exactly.

    ``W'`` lies in the region iff its support in every constraint direction
    fits the bounds (equivalently every zonotope vertex satisfies the region).
    The region lies in ``W'`` iff no point of the region violates a facet of
    ``W'``; facets repeated verbatim in the region are settled directly and
    the rest by Fourier-Motzkin. A violating point is confirmed to be outside
    ``{sum a_i beta_i : a in [0, 1]^m}``.
    """
    r = t.class_rank
    if r == 0:
        return EqualityReport(True, True, ())
    if em.rank([list(c.normal) for c in region.constraints]) < r:
        raise Unbounded("region normals do not span")
    failures = []
    inside = True
    for c in region.constraints:
        lo, hi = support(t.weights, c.normal)
        if lo < c.lo or hi > c.hi:
            inside = False
            failures.append(f"zonotope exceeds {c.normal}: support {lo}..{hi} vs {c.lo}..{c.hi}")
    facets = zonotope_facets(t.weights, r)
    literal = {c.normal: (c.lo, c.hi) for c in region.constraints}
    rows = [c.normal for c in region.constraints]
    covered = True
    witness = None
    for f in facets.constraints:
        got = literal.get(f.normal)
        for side in ("hi", "lo"):
            if got is not None and ((side == "hi" and got[1] <= f.hi) or (side == "lo" and got[0] >= f.lo)):
                continue
            lo = [c.lo for c in region.constraints] + [f.hi if side == "hi" else None]
            hi = [c.hi for c in region.constraints] + [None if side == "hi" else f.lo]
            slo = [False] * len(rows) + [side == "hi"]
            shi = [False] * len(rows) + [side == "lo"]
            pt = em.rational_point(rows + [f.normal], lo, hi, slo, shi, r)
            if pt is not None:
                covered = False
                failures.append(f"region exceeds facet {f.normal} on the {side} side")
                if witness is None:
                    if expressible(t.weights, pt):
                        raise InvariantViolation("point beyond a facet is expressible")
                    witness = pt
    return EqualityReport(inside, covered, tuple(failures), witness)


def classes_json(points: Iterable[Sequence[int]]) -> list[list[int]]:
    return [list(p) for p in sorted(points)]


def conjecture_regions(poset: Poset):
    from .conjecture import conjecture_regions as _impl

    return _impl(poset)
