"""Chain-indexed regions for stable set rings of comparability graphs.

For a poset ``P`` the maximal cliques of its comparability graph are the
maximal chains of ``P``, equivalently of ``P-hat``. Two families of
inequalities on chain coordinates are built here: one per circuit of the
Hasse diagram of ``P-hat`` (through its runs between local minima and
maxima) and one per general X-shape subposet of ``P-hat`` whose maximal
chains are maximal in ``P-hat``. Their common lattice points are compared
with the conic classes of the stable set ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Optional

from . import config
from .conic import (
    ClassVector,
    Constraint,
    IneqRegion,
    conic_classes,
    lattice_points,
    make_constraint,
)
from .errors import InvariantViolation, TooLarge, Unbounded
from .exactmath import rank
from .graph import chordless_cycles
from .poset import (
    Poset,
    comparability_graph,
    from_relation,
    hasse_hat,
    is_general_x_shape,
    maximal_chains,
    maximal_chains_hat,
)
from .toric import stab_presentation

Chain = frozenset[int]


@dataclass(frozen=True)
class ConjectureReport:
    circuit_region: IneqRegion
    x_region: IneqRegion
    chains: tuple[tuple[int, ...], ...]
    x_subposets: tuple[tuple[int, ...], ...]
    containment: bool
    verdict: str
    extra_points: tuple[ClassVector, ...]
    conic_count: int

    def to_json(self) -> dict:
        return {
            "chains": [list(c) for c in self.chains],
            "circuit_constraints": self.circuit_region.to_json(),
            "x_constraints": self.x_region.to_json(),
            "x_subposets": [list(x) for x in self.x_subposets],
            "containment": self.containment,
            "verdict": self.verdict,
            "extra_points": [list(p) for p in self.extra_points],
            "conic_count": self.conic_count,
        }


class _HatOrder:
    """Order on the vertices ``0..top`` of P-hat."""

    def __init__(self, poset: Poset):
        self.poset = poset
        self.top = poset.element_count + 1

    def lt(self, a: int, b: int) -> bool:
        if a == b:
            return False
        if a == 0 or b == self.top:
            return True
        if b == 0 or a == self.top:
            return False
        return self.poset.lt(a, b)

    def chains_below(self, p: int) -> list[tuple[int, ...]]:
        """Maximal chains of ``{q : q <= p}``, ascending from 0-hat.

        These are exactly the prefixes of maximal chains of P-hat through p.
        """
        return _unique(c[: c.index(p) + 1] for c in self.hat_chains if p in c)

    def chains_above(self, p: int) -> list[tuple[int, ...]]:
        return _unique(c[c.index(p) :] for c in self.hat_chains if p in c)

    @cached_property
    def hat_chains(self) -> list[tuple[int, ...]]:
        return maximal_chains_hat(self.poset)


def _unique(seq):
    out = []
    for x in seq:
        if x not in out:
            out.append(x)
    return out


def _circuit_runs(order: _HatOrder, cycle: tuple[int, ...]):
    """Rotate a cycle to start at a local minimum; return the vertex list and
    the 1-based positions of local minima ``m_1..m_k`` and maxima ``M_1..M_k``."""
    s = len(cycle)

    def is_min(i):
        return order.lt(cycle[i], cycle[i - 1]) and order.lt(cycle[i], cycle[(i + 1) % s])

    start = next(i for i in range(s) if is_min(i))
    p = list(cycle[start:] + cycle[:start])
    if not order.lt(p[0], p[1]):
        p = [p[0]] + p[1:][::-1]
    mins, maxs = [], []
    for i in range(s):
        prev, nxt = p[i - 1], p[(i + 1) % s]
        if order.lt(p[i], prev) and order.lt(p[i], nxt):
            mins.append(i + 1)
        elif order.lt(prev, p[i]) and order.lt(nxt, p[i]):
            maxs.append(i + 1)
    return p, mins, maxs


def circuit_constraints(poset: Poset, coord: dict[Chain, Optional[int]], dim: int) -> list[Constraint]:
    order = _HatOrder(poset)
    hat = hasse_hat(poset)
    out: dict[tuple[int, ...], Constraint] = {}
    for cyc in chordless_cycles(hat):
        p, mins, maxs = _circuit_runs(order, cyc.vertices)
        k = len(maxs)
        s = len(p)
        m = mins + [s + 1]
        lo = -k - sum(m[l + 1] - maxs[l] - 1 for l in range(k)) + 1
        hi = k + sum(maxs[l] - m[l] - 1 for l in range(k)) - 1
        ups = [order.chains_above(p[maxs[l] - 1]) for l in range(k)]
        downs = [order.chains_below(p[m[l] - 1]) for l in range(k)]
        label = "circuit " + "-".join(map(str, p))
        for U in product(*ups):
            for D in product(*downs):
                normal = [0] * dim
                for i in range(k):
                    rise = p[m[i] - 1 : maxs[i]]
                    fall = (p + [p[0]])[maxs[i] - 1 : m[i + 1]]
                    q_up = frozenset(D[i]) | frozenset(rise) | frozenset(U[i])
                    q_down = frozenset(U[i]) | frozenset(fall) | frozenset(D[(i + 1) % k])
                    for q, sign in ((q_up, 1), (q_down, -1)):
                        if q not in coord:
                            raise InvariantViolation(f"{sorted(q)} is not a maximal chain")
                        idx = coord[q]
                        if idx is not None:
                            normal[idx] += sign
                c = make_constraint(normal, lo, hi, label)
                if c is not None:
                    out[c.normal] = _tighter(out.get(c.normal), c)
    return [out[key] for key in sorted(out)]


def _tighter(prev: Optional[Constraint], c: Constraint) -> Constraint:
    if prev is None:
        return c
    return Constraint(c.normal, max(c.lo, prev.lo), min(c.hi, prev.hi), prev.provenance)


def x_subposets(poset: Poset) -> list[tuple[tuple[int, ...], list[Chain]]]:
    """General X-shape subsets of P-hat whose maximal chains (at least four)
    are maximal chains of P-hat."""
    order = _HatOrder(poset)
    top = order.top
    hat_chains = {frozenset(c) for c in maximal_chains_hat(poset)}
    inner = list(poset.elements)
    found = []
    for size in range(len(inner) + 1):
        for sub in combinations(inner, size):
            verts = (0,) + sub + (top,)
            index = {v: i + 1 for i, v in enumerate(verts)}
            rel = [(index[a], index[b]) for a in verts for b in verts if order.lt(a, b)]
            x = from_relation(len(verts), rel)
            if not is_general_x_shape(x):
                continue
            chains = [frozenset(verts[i - 1] for i in ch) for ch in maximal_chains(x)]
            if len(chains) < 4 or not all(c in hat_chains for c in chains):
                continue
            found.append((verts, chains))
    return found


def x_constraints(poset: Poset, coord: dict[Chain, Optional[int]], dim: int):
    out: dict[tuple[int, ...], Constraint] = {}
    subs = x_subposets(poset)
    for verts, chains in subs:
        whole = frozenset(verts)
        partner = {}
        for q in chains:
            mates = [q2 for q2 in chains if q | q2 == whole]
            if len(mates) != 1:
                raise InvariantViolation("complementary chain is not unique")
            partner[q] = mates[0]
        label = "x-shape " + "-".join(map(str, verts))
        for q, q2 in combinations(sorted(chains, key=sorted), 2):
            normal = [0] * dim
            for ch, sign in ((q, 1), (partner[q], 1), (q2, -1), (partner[q2], -1)):
                idx = coord[ch]
                if idx is not None:
                    normal[idx] += sign
            c = make_constraint(normal, -1, 1, label)
            if c is not None:
                out[c.normal] = _tighter(out.get(c.normal), c)
    return [out[key] for key in sorted(out)], [v for v, _ in subs]


def conjecture_regions(poset: Poset, bound: Optional[int] = None) -> ConjectureReport:
    """Both chain regions, the asserted containment of the conic classes, and
    a verdict on the reverse inclusion (``MATCH``, ``EXTRA`` or ``UNBOUNDED``)."""
    limit = config.max_d() if bound is None else bound
    if poset.element_count > limit:
        raise TooLarge(f"{poset.element_count} elements exceeds bound {limit}")
    g = comparability_graph(poset)
    t = stab_presentation(g)
    top = poset.element_count + 1
    coord: dict[Chain, Optional[int]] = {}
    for i, clique in enumerate(t.cliques):
        coord[frozenset((0, top) + tuple(clique))] = None if i == 0 else i - 1
    dim = t.class_rank
    fk_c = IneqRegion(dim, tuple(circuit_constraints(poset, coord, dim)))
    x_list, subs = x_constraints(poset, coord, dim)
    fk_x = IneqRegion(dim, tuple(x_list))
    conic = conic_classes(t)
    both = IneqRegion(dim, fk_c.constraints + fk_x.constraints)
    containment = all(both.contains(z) for z in conic)
    if not containment:
        raise InvariantViolation("a conic class violates a chain inequality")
    if dim and rank([list(c.normal) for c in both.constraints]) < dim:
        return ConjectureReport(fk_c, fk_x, t.cliques, tuple(subs), True, "UNBOUNDED", (), len(conic))
    try:
        pts = lattice_points(both)
    except Unbounded:
        return ConjectureReport(fk_c, fk_x, t.cliques, tuple(subs), True, "UNBOUNDED", (), len(conic))
    extra = tuple(sorted(set(pts) - set(conic)))
    verdict = "MATCH" if not extra else "EXTRA"
    return ConjectureReport(fk_c, fk_x, t.cliques, tuple(subs), True, verdict, extra, len(conic))
