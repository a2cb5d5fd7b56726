import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spincord import decoherence
from spincord.decoherence import BadGamma, ChannelParams
from spincord.qcore import DensityMatrix
from spincord.xstate import discord_numeric, from_matrix, wootters_concurrence


def test_kraus_completeness():
    for g in np.linspace(0, 1, 101):
        ks = decoherence.dephasing_kraus(float(g))
        total = sum(k.conj().T @ k for k in ks)
        assert np.max(np.abs(total - np.eye(4))) <= 1e-14


def test_dephasing_scales_coherence_and_keeps_populations():
    rng = np.random.default_rng(0)
    for _ in range(20):
        alpha, g = rng.uniform(), rng.uniform()
        before = from_matrix(decoherence.werner(alpha))
        after = from_matrix(decoherence.apply_dephasing(decoherence.werner(alpha), g))
        assert after.z == pytest.approx(before.z * (1 - g), abs=1e-14)
        assert (after.a, after.b1, after.b2, after.d) == pytest.approx((before.a, before.b1, before.b2, before.d), abs=1e-14)


def test_dephasing_general_state_stays_valid():
    rng = np.random.default_rng(1)
    gm = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = gm @ gm.conj().T
    rho = DensityMatrix(m / np.trace(m).real, 2)
    out = decoherence.apply_dephasing(rho, 0.4).matrix
    assert np.allclose(np.diag(out), np.diag(rho.matrix))
    assert out[0, 3] == pytest.approx(rho.matrix[0, 3] * 0.6)
    assert out[0, 1] == pytest.approx(rho.matrix[0, 1] * math.sqrt(0.6))


def test_werner_state_and_validation():
    w = from_matrix(decoherence.werner(1.0))
    assert w.astuple() == pytest.approx((0, 0.5, 0.5, 0, -0.5, 0))
    with pytest.raises(ValueError):
        decoherence.werner(1.2)


def test_bad_gamma():
    for g in (-0.1, 1.1):
        with pytest.raises(BadGamma):
            decoherence.dephasing_kraus(g)
        with pytest.raises(BadGamma):
            ChannelParams(g)
    with pytest.raises(BadGamma):
        decoherence.trajectory(0.5, 11, 0.5, 0.2)


def test_channel_from_rate():
    c = ChannelParams.from_rate(2.0, 0.5)
    assert c.gamma == pytest.approx(1 - math.exp(-1))
    assert ChannelParams.from_rate(0.0, 3.0).gamma == 0.0


def test_closed_forms_match_kraus_pipeline():
    for alpha in np.linspace(0, 1, 21):
        for g in np.linspace(0, 1, 11):
            rho = decoherence.apply_dephasing(decoherence.werner(float(alpha)), float(g))
            cn = decoherence.concurrence_closed(float(alpha), float(g))
            assert abs(cn - wootters_concurrence(rho)) <= 1e-10
            assert abs(decoherence.discord_closed(float(alpha), float(g)) - discord_numeric(rho).Q) <= 1e-5


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 1))
def test_discord_does_not_increase_with_dephasing(alpha):
    q = decoherence.trajectory(alpha, 101).discords
    assert np.all(np.diff(q) <= 1e-15)


def test_sudden_death_points():
    assert decoherence.sudden_death_gamma(2 / 3) == pytest.approx(0.75, abs=1e-15)
    assert decoherence.sudden_death_gamma(1 / 3) == 0.0
    assert decoherence.sudden_death_gamma(1.0) == pytest.approx(1.0)
    assert decoherence.concurrence_closed(0.2, 0.0) == 0.0


def test_first_zero():
    x = np.linspace(0, 1, 11)
    assert decoherence.first_zero(x, 0.55 - x) == pytest.approx(0.55)
    assert decoherence.first_zero(x, -x) == 0.0
    assert decoherence.first_zero(x, 1 + x) is None


def test_trajectory_properties():
    traj = decoherence.trajectory(2 / 3, 5)
    assert list(traj.gammas) == [0, 0.25, 0.5, 0.75, 1.0]
    assert traj.concurrences[0] == pytest.approx(0.5)
    assert traj.concurrences[-2:] == pytest.approx([0, 0], abs=1e-15)
    with pytest.raises(ValueError):
        decoherence.trajectory(0.5, 1)
