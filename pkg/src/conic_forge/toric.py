"""Toric presentations of Hibi rings and stable set rings.

A presentation records the linear forms ``sigma_i`` cutting out the cone, the
rank ``r`` of the class group ``Z^m / sigma(Z^d)`` and the weight ``beta_i``
of every prime divisor in the chosen coordinates of ``Z^r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import exactmath as em
from .errors import DimensionMismatch, InvariantViolation, NotPerfect, Unsupported
from .graph import SimpleGraph, is_perfect, maximal_cliques, spanning_tree_with_cycles
from .poset import Poset, hasse_hat


@dataclass(frozen=True)
class ToricPresentation:
    kind: str
    sigma: em.Matrix
    ncols: int
    class_rank: int
    weights: tuple[em.Vector, ...]
    labels: tuple[str, ...]
    # stable set rings: cliques in coordinate order; Hibi rings: arcs of the Hasse diagram
    cliques: tuple[tuple[int, ...], ...] = field(default=())
    arcs: tuple[tuple[int, int], ...] = field(default=())
    nontree: tuple[int, ...] = field(default=())

    @property
    def m(self) -> int:
        return len(self.sigma)

    def weight_matrix(self) -> em.Matrix:
        """``r x m`` matrix whose columns are the weights."""
        return tuple(tuple(w[k] for w in self.weights) for k in range(self.class_rank))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "sigma": [list(row) for row in self.sigma],
            "class_rank": self.class_rank,
            "weights": [
                {"label": lab, "weight": list(w)} for lab, w in zip(self.labels, self.weights)
            ],
        }


def class_group(sigma: Sequence[Sequence[int]], ncols: int) -> tuple[int, tuple[int, ...]]:
    """Rank and torsion invariant factors of ``Z^m / sigma(Z^ncols)``."""
    factors = em.invariant_factors(sigma, ncols)
    nonzero = [f for f in factors if f != 0]
    return len(sigma) - len(nonzero), tuple(f for f in nonzero if f > 1)


def class_of(t: ToricPresentation, a: Sequence[int]) -> em.Vector:
    """Class of the divisorial ideal ``T(a)``: ``sum a_i beta_i``."""
    if len(a) != t.m:
        raise DimensionMismatch(f"expected {t.m} entries, got {len(a)}")
    return tuple(
        sum(ai * w[k] for ai, w in zip(a, t.weights)) for k in range(t.class_rank)
    )


def check_presentation(t: ToricPresentation) -> None:
    """Validate that the weights give an isomorphism ``Z^m / sigma(Z^d) -> Z^r``
    and that any ``m - 1`` of them still generate ``Z^r``."""
    rank, torsion = class_group(t.sigma, t.ncols)
    if torsion:
        raise Unsupported(f"class group has torsion {list(torsion)}")
    if rank != t.class_rank:
        raise InvariantViolation(f"class rank {t.class_rank} but quotient rank {rank}")
    if t.class_rank == 0:
        return
    b = t.weight_matrix()
    if any(any(row) for row in em.matmul(b, t.sigma, inner=t.m, bcols=t.ncols)):
        raise InvariantViolation("weights do not annihilate sigma(Z^d)")
    if not _generates(b, t.class_rank):
        raise InvariantViolation("weights do not generate Z^r")
    for i in range(t.m):
        rest = tuple(row[:i] + row[i + 1 :] for row in b)
        if not _generates(rest, t.class_rank):
            raise InvariantViolation(f"weights without #{i} do not generate Z^r")


def _generates(b: em.Matrix, r: int) -> bool:
    if not b or not b[0]:
        return r == 0
    factors = em.invariant_factors(b)
    return len(factors) == r and all(f == 1 for f in factors)


def hibi_presentation(poset: Poset, check: bool = True) -> ToricPresentation:
    """Coordinates are indexed by the non-tree arcs of a BFS spanning tree of
    the Hasse diagram of P-hat; the weight of an arc records its signs in
    the fundamental cycles."""
    hat = hasse_hat(poset)
    tree, cycles = spanning_tree_with_cycles(hat)
    d = hat.top
    sigma = []
    labels = []
    for i, j in tree.arcs:
        row = [0] * d
        row[i] += 1
        if j != d:
            row[j] -= 1
        sigma.append(tuple(row))
        labels.append(f"arc {i}-{j}")
    weights = tuple(tuple(c.vector[e] for c in cycles) for e in range(len(tree.arcs)))
    t = ToricPresentation(
        kind="hibi",
        sigma=tuple(sigma),
        ncols=d,
        class_rank=len(cycles),
        weights=weights,
        labels=tuple(labels),
        arcs=tree.arcs,
        nontree=tree.nontree,
    )
    if check:
        check_presentation(t)
        check_hibi_relations(t)
    return t


def check_hibi_relations(t: ToricPresentation) -> None:
    """Weights into a vertex equal weights out of it; sums at 0-hat and 1-hat vanish."""
    if t.class_rank == 0:
        return
    top = t.ncols
    zero = (0,) * t.class_rank
    for p in range(top + 1):
        up = [w for (i, _), w in zip(t.arcs, t.weights) if i == p]
        down = [w for (_, j), w in zip(t.arcs, t.weights) if j == p]
        su = tuple(map(sum, zip(*up))) if up else zero
        sd = tuple(map(sum, zip(*down))) if down else zero
        ok = (su == zero) if p == 0 else (sd == zero) if p == top else su == sd
        if not ok:
            raise InvariantViolation(f"weight relation fails at vertex {p}")


def stab_presentation(
    g: SimpleGraph,
    cliques: Optional[Sequence[Sequence[int]]] = None,
    check: bool = True,
) -> ToricPresentation:
    """Rows ``x_0 - sum_{Q_i} x_j`` for the cliques, then ``x_k`` per vertex.

    ``cliques`` fixes the order ``Q_0..Q_n`` (default lexicographic).
    """
    if not is_perfect(g):
        raise NotPerfect("graph contains an odd hole or odd antihole")
    qs = tuple(tuple(sorted(q)) for q in (cliques if cliques is not None else maximal_cliques(g)))
    if cliques is not None and sorted(qs) != maximal_cliques(g):
        raise InvariantViolation("supplied cliques are not the maximal cliques")
    d = g.vertex_count
    n = len(qs) - 1
    sigma = []
    labels = []
    for i, q in enumerate(qs):
        row = [0] * (d + 1)
        row[0] = 1
        for v in q:
            row[v] -= 1
        sigma.append(tuple(row))
        labels.append(f"clique {i}")
    for k in range(1, d + 1):
        row = [0] * (d + 1)
        row[k] = 1
        sigma.append(tuple(row))
        labels.append(f"vertex {k}")

    def e(j: int) -> em.Vector:
        if j == 0:
            return (-1,) * n
        return tuple(int(i == j - 1) for i in range(n))

    weights = [e(i) for i in range(n + 1)]
    for k in range(1, d + 1):
        w = [0] * n
        for j, q in enumerate(qs):
            if k in q:
                w = [a + b for a, b in zip(w, e(j))]
        weights.append(tuple(w))
    t = ToricPresentation(
        kind="stab",
        sigma=tuple(sigma),
        ncols=d + 1,
        class_rank=n,
        weights=tuple(weights),
        labels=tuple(labels),
        cliques=qs,
    )
    if check:
        check_presentation(t)
    return t
