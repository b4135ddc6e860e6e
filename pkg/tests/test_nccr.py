from __future__ import annotations

import pytest

from conic_forge.errors import BadArity, BadMultiplicity, ScheduleStuck, SeparationBlowup
from conic_forge.graph import gen_family
from conic_forge.nccr import (
    box,
    box_L,
    check_condition_a,
    is_stratified,
    nccr_certificate,
    separation_schedule,
    stratified_pool,
    stratum,
    subset_sums,
)
from conic_forge.toric import stab_presentation


def _family(r):
    fam = gen_family(r)
    return stab_presentation(fam.graph, fam.cliques)


def test_box_L_sizes():
    assert len(box_L((1, 1, 1))) == 8
    assert len(box_L((2, 1, 1))) == 12
    assert len(box_L((1, 1, 1, 1))) == 16
    with pytest.raises(BadArity):
        box_L((1, 1))
    with pytest.raises(BadMultiplicity):
        box_L((1, 0, 1))


def test_condition_a():
    assert check_condition_a(box_L((1, 1, 1)), box((1, 1, 1)))
    assert check_condition_a([(0, 0, 0)], [(0, 0, 0)])
    truncated = [c for c in box((2, 1, 1)) if c != (-2, 0, 0)]
    assert not check_condition_a(box_L((2, 1, 1)), truncated)


def test_subset_sums():
    assert subset_sums([(1, 0), (1, 0)]) == [(1, 0), (2, 0)]
    assert subset_sums([]) == []
    with pytest.raises(SeparationBlowup):
        subset_sums([(2**i,) for i in range(13)], cap=100)


def test_schedule_family_111():
    t = _family((1, 1, 1))
    cert = separation_schedule(t, box_L((1, 1, 1)), box((1, 1, 1)))
    assert cert.condition_b
    step = next(s for s in cert.schedule if s.chi == (-1, 0, 0))
    assert step.lam == (1, 0, 0)
    assert step.mus == ((0, 0, 0), (1, 0, 0))


def test_schedule_family_211_uses_three_copies():
    t = _family((2, 1, 1))
    cert = separation_schedule(t, box_L((2, 1, 1)), box((2, 1, 1)), stratified_pool(3))
    assert cert.condition_b and is_stratified(cert)
    step = next(s for s in cert.schedule if s.chi == (-2, 0, 0))
    assert step.lam == (1, 0, 0)
    assert step.mus == ((-1, 0, 0), (0, 0, 0), (1, 0, 0))


def test_schedule_stuck_on_enlarged_target():
    r = (2, 1, 1)
    t = _family(r)
    target = box(r) + [(-r[0] - 2, 0, 0)]
    with pytest.raises(ScheduleStuck) as info:
        separation_schedule(t, box_L(r), target, stratified_pool(3))
    assert (-4, 0, 0) in [tuple(c) for c in info.value.residual]
    assert not info.value.certificate.condition_b


def test_stratum():
    assert stratum((0, 1, 2)) == (0, 0)
    assert stratum((-1, -2, 0)) == (2, 2)
    assert stratum((-3, 0, 1)) == (1, 3)


@pytest.mark.parametrize("r,count", [((1, 1, 1), 27), ((1, 1, 1, 1), 81), ((2, 2, 1), 75), ((2, 1, 1), 45)])
def test_certificates(r, count):
    cert = nccr_certificate(r)
    assert cert.valid and cert.stratified
    assert len(cert.Ltilde) == count
    assert len(cert.schedule) == count - len(cert.L)


def test_schedule_reaches_one_step_beyond_box():
    # (-r1-1, 0, 0) only needs (-r1, 0, 0) .. (0, 0, 0) from the box itself.
    r = (2, 1, 1)
    cert = separation_schedule(_family(r), box_L(r), box(r) + [(-3, 0, 0)], stratified_pool(3))
    assert cert.condition_b
