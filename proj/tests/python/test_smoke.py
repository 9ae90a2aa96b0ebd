import math

import pytest

delayctl = pytest.importorskip("delayctl")


def test_model_spectrum():
    kernel = delayctl.DelayKernel.zero()
    spectrum = delayctl.find_roots(kernel, -3, 3)
    assert len(spectrum.records) == 7
    lam1 = spectrum.by_branch(1).lambda_
    assert abs(lam1 - (4.3751851530618984 + 1.5339133197935746j)) < 1e-9
    assert abs(delayctl.eval_charfn(lam1, kernel)) < 1e-10


def test_expansion_collapse():
    kernel = delayctl.DelayKernel.zero()
    spectrum = delayctl.find_roots(kernel, -2, 2)
    mu = spectrum.by_branch(1)
    e_mu = delayctl.MState.eigenvector(mu.lambda_, 256)
    for rec in spectrum.records:
        coeff = delayctl.expansion_coefficient(e_mu, rec, kernel)
        expected = 1.0 if rec.branch == 1 else 0.0
        assert abs(coeff - expected) < 1e-8


def test_null_control_end_to_end():
    kernel = delayctl.DelayKernel.zero()
    spectrum = delayctl.find_roots(kernel, 1, 1)
    rec = spectrum.by_branch(1)
    horizon = delayctl.Horizon.of(1.5)
    u = delayctl.u_for_eigenvector(rec, horizon, 1536)
    x0 = delayctl.MState.eigenvector(rec.lambda_, 1024)
    free = delayctl.simulate(x0, None, kernel, 1.5, steps_per_unit=1024)
    ctrl = delayctl.simulate(x0, u, kernel, 1.5, steps_per_unit=1024)
    ratio = delayctl.terminal_segment_norm(ctrl, 1.5) / delayctl.terminal_segment_norm(free, 1.5)
    assert ratio < 1e-3


def test_simulator_hand_values():
    kernel = delayctl.DelayKernel.zero()
    traj = delayctl.simulate(delayctl.MState.ones(1024), None, kernel, 1.5, steps_per_unit=1024)
    assert math.isclose(traj.value_at(1.0).real, 2.0, abs_tol=1e-7)
    assert math.isclose(traj.value_at(1.5).real, 2.625, abs_tol=1e-7)


def test_schedule_validation():
    schedule = delayctl.SummationSchedule()
    schedule.validate(50)
    schedule.l_power = 0.6
    with pytest.raises(ValueError):
        schedule.validate(50)
