"""Combinatorial certificate for the endomorphism ring of the box of conic
classes of ``G_{r_1..r_n}``.

Condition (a): every difference of two box classes is conic.
Condition (b): every class of ``Ltilde`` is discharged, starting from ``L``,
by a separation step: a one-parameter subgroup ``lambda`` with
``<lambda, chi>`` below every ``<lambda, chi'>`` (``chi'`` in ``L``) such
that all sums ``chi + sum_S beta_i`` over nonempty sub-multisets ``S`` of the
weights pairing positively with ``lambda`` are already discharged.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from . import config
from .conic import ClassVector, conic_classes
from .errors import BadArity, BadMultiplicity, InvariantViolation, ScheduleStuck, SeparationBlowup
from .graph import gen_family
from .toric import ToricPresentation, stab_presentation


@dataclass(frozen=True)
class ScheduleStep:
    chi: ClassVector
    lam: tuple[int, ...]
    mus: tuple[ClassVector, ...]
    argmin: ClassVector

    def to_json(self) -> dict:
        return {
            "chi": list(self.chi),
            "lambda": list(self.lam),
            "mu": [list(m) for m in self.mus],
            "separating_min": list(self.argmin),
        }


@dataclass(frozen=True)
class NccrCertificate:
    L: tuple[ClassVector, ...]
    Ltilde: tuple[ClassVector, ...]
    schedule: tuple[ScheduleStep, ...]
    condition_a: bool
    condition_b: bool
    stratified: Optional[bool] = None

    @property
    def valid(self) -> bool:
        return self.condition_a and self.condition_b

    def to_json(self) -> dict:
        return {
            "L": [list(x) for x in self.L],
            "Ltilde": [list(x) for x in self.Ltilde],
            "schedule": [s.to_json() for s in self.schedule],
            "condition_a": self.condition_a,
            "condition_b": self.condition_b,
            "stratified": self.stratified,
            "valid": self.valid,
        }


def _check_r(r: Sequence[int]) -> tuple[int, ...]:
    r = tuple(int(x) for x in r)
    if len(r) < 3:
        raise BadArity(f"need at least 3 parts, got {len(r)}")
    if any(x < 1 for x in r):
        raise BadMultiplicity("every part must be at least 1")
    return r


def box_L(r: Sequence[int]) -> list[ClassVector]:
    """Integer points of ``prod [0, r_i]``."""
    r = _check_r(r)
    return sorted(product(*(range(0, ri + 1) for ri in r)))


def box(r: Sequence[int]) -> list[ClassVector]:
    """Integer points of ``prod [-r_i, r_i]``."""
    return sorted(product(*(range(-ri, ri + 1) for ri in r)))


def check_condition_a(L: Iterable[Sequence[int]], conic: Iterable[Sequence[int]]) -> bool:
    conic_set = {tuple(c) for c in conic}
    pts = [tuple(x) for x in L]
    return all(
        tuple(a - b for a, b in zip(x, y)) in conic_set for x in pts for y in pts
    )


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def subset_sums(weights: Sequence[Sequence[int]], cap: int = config.SEPARATION_SUM_CAP) -> list[ClassVector]:
    """Distinct sums over nonempty sub-multisets."""
    sums: set[ClassVector] = set()
    for w in weights:
        w = tuple(w)
        new = {tuple(a + b for a, b in zip(s, w)) for s in sums}
        sums |= new
        sums.add(w)
        if len(sums) > cap:
            raise SeparationBlowup(f"more than {cap} distinct sums")
    return sorted(sums)


def default_pool(r: int) -> list[tuple[int, ...]]:
    """``e_1, -e_1, e_2, -e_2, ...``"""
    out = []
    for i in range(r):
        e = tuple(int(j == i) for j in range(r))
        out.append(e)
        out.append(tuple(-x for x in e))
    return out


def separation_schedule(
    t: ToricPresentation,
    L: Iterable[Sequence[int]],
    Ltilde: Iterable[Sequence[int]],
    lambda_pool: Optional[Sequence[Sequence[int]]] = None,
) -> NccrCertificate:
    """Discharge ``Ltilde`` from ``L`` round by round.

    In every round each pending class (in sorted order) is admitted with the
    first ``lambda`` of the pool that separates it from ``L`` and whose
    positive sums were discharged before the round began.
    """
    L_list = sorted({tuple(x) for x in L})
    target = sorted({tuple(x) for x in Ltilde})
    if not set(L_list) <= set(target):
        raise InvariantViolation("L is not contained in Ltilde")
    pool = [tuple(x) for x in (lambda_pool if lambda_pool is not None else default_pool(t.class_rank))]
    sums = {lam: subset_sums([w for w in t.weights if _dot(lam, w) > 0]) for lam in pool}
    mins = {}
    for lam in pool:
        best = min(L_list, key=lambda c: (_dot(lam, c), c))
        mins[lam] = (_dot(lam, best), best)
    verified = set(L_list)
    steps: list[ScheduleStep] = []
    pending = [c for c in target if c not in verified]
    while pending:
        admitted = []
        for chi in pending:
            for lam in pool:
                low, arg = mins[lam]
                if not _dot(lam, chi) < low:
                    continue
                mus = tuple(tuple(a + b for a, b in zip(chi, s)) for s in sums[lam])
                if all(mu in verified for mu in mus):
                    admitted.append(ScheduleStep(chi, lam, mus, arg))
                    break
        if not admitted:
            cert = NccrCertificate(tuple(L_list), tuple(target), tuple(steps), True, False)
            raise ScheduleStuck(pending, cert)
        for step in admitted:
            verified.add(step.chi)
        steps.extend(admitted)
        done = {s.chi for s in admitted}
        pending = [c for c in pending if c not in done]
    return NccrCertificate(tuple(L_list), tuple(target), tuple(steps), True, True)


def stratum(chi: Sequence[int]) -> tuple[int, int]:
    """``(j, k)`` with ``j`` the last index (1-based) where ``chi`` is negative
    and ``k = -chi_j``; ``(0, 0)`` on the nonnegative orthant."""
    for j in range(len(chi), 0, -1):
        if chi[j - 1] < 0:
            return (j, -chi[j - 1])
    return (0, 0)


def is_stratified(cert: NccrCertificate) -> bool:
    """Every step uses ``lambda = e_j`` for its stratum ``(j, k)`` and only
    needs classes from strictly lower strata."""
    for step in cert.schedule:
        j, k = stratum(step.chi)
        if j == 0:
            return False
        e_j = tuple(int(i == j - 1) for i in range(len(step.chi)))
        if step.lam != e_j:
            return False
        if any(stratum(mu) >= (j, k) for mu in step.mus):
            return False
    return True


def stratified_pool(n: int) -> list[tuple[int, ...]]:
    """``e_n, ..., e_1, -e_n, ..., -e_1``: the last negative coordinate is
    tried first."""
    pos = [tuple(int(i == j) for i in range(n)) for j in range(n - 1, -1, -1)]
    return pos + [tuple(-x for x in e) for e in pos]


def nccr_certificate(r: Sequence[int]) -> NccrCertificate:
    r = _check_r(r)
    fam = gen_family(r)
    t = stab_presentation(fam.graph, fam.cliques)
    conic = conic_classes(t)
    if conic != box(r):
        raise InvariantViolation("conic classes differ from the box prod [-r_i, r_i]")
    L = box_L(r)
    cond_a = check_condition_a(L, conic)
    cert = separation_schedule(t, L, conic, stratified_pool(len(r)))
    return NccrCertificate(cert.L, cert.Ltilde, cert.schedule, cond_a, cert.condition_b, is_stratified(cert))
