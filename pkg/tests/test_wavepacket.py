import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flavorent.errors import BracketInvalid, UnitError
from flavorent.linalg import eig_hermitian
from flavorent.measures import Bipartition, average_negativity, bipartitions, log_negativity
from flavorent.mixing import MNSP, MixingParams3, u3
from flavorent.states import density_matrix, flavor_state
from flavorent.wavepacket import (
    HBAR_C_GEV_M,
    WavePacketParams,
    damping_exponent,
    decoherence_length,
    kinematics,
    negativity_profile,
    rho_dynamic,
    rho_stationary,
    splittings,
    vanishing_distance,
)

# distance (m) where the (2,1) coherence exponent reaches 1 for E=10 GeV,
# sigma_p=1 GeV: 2 sqrt(2) E^2 hbar_c / (sigma_p dm2_21), computed by hand
COHERENCE_1E = 7.04703e8
ONE_HOT = [4, 2, 1]


@pytest.fixture(scope="module")
def beam():
    return WavePacketParams.mnsp_beam(0.0)


def toy_beam(delta=0.7):
    # hbar_c = 1 and huge splittings keep every scale within a few 1e4 1/GeV
    return WavePacketParams.from_splittings(MNSP.params(delta), 1e16, 3e16, hbar_c=1.0)


def test_splittings():
    np.testing.assert_allclose(splittings(7.92e-5, 2.6e-3), (7.92e-5, 2.6396e-3, 2.5604e-3), rtol=1e-12)
    assert splittings(0.0, 1e-3) == (0.0, 1e-3, 1e-3)
    d21, d31, d32 = splittings(3e-5, 1e-3)
    assert d31 - d32 == pytest.approx(3e-5)


def test_parameter_validation():
    mix = MNSP.params(0.0)
    with pytest.raises(UnitError):
        WavePacketParams(mix, E0=0.0)
    with pytest.raises(UnitError):
        WavePacketParams(mix, sigma_p=-1.0)
    with pytest.raises(UnitError):
        WavePacketParams(mix, dm2_21=1e-4, dm2_31=3e-3, dm2_32=3e-3)
    with pytest.raises(UnitError):
        rho_stationary("e", -1.0, WavePacketParams(mix))
    assert WavePacketParams(mix).narrow_packet
    assert not WavePacketParams(mix, E0=1.0, sigma_p=1.0).narrow_packet


def test_defaults(beam):
    assert (beam.E0, beam.sigma_p, beam.xi, beam.sigma_x) == (10.0, 1.0, 0.0, 0.5)
    assert beam.hbar_c == HBAR_C_GEV_M
    assert beam.dm2_31 == pytest.approx(2.6396e-3)


def test_coherence_scale(beam):
    assert damping_exponent(COHERENCE_1E, beam)[1, 0] == pytest.approx(1.0, rel=0.02)
    # the exponent is quadratic in x: half the distance gives a quarter
    assert damping_exponent(COHERENCE_1E / 2, beam)[1, 0] == pytest.approx(0.25, rel=0.02)


def test_origin_is_pure_projector(beam):
    for f in ("e", "mu", "tau"):
        psi = flavor_state(u3(beam.mixing), f)
        np.testing.assert_allclose(rho_stationary(f, 0.0, beam), density_matrix(psi), atol=1e-15)


def test_far_limit_is_diagonal(beam):
    rho = rho_stationary("mu", 1e13, beam)
    weights = np.abs(u3(beam.mixing)[1]) ** 2
    np.testing.assert_allclose(rho, np.diag(np.bincount(ONE_HOT, weights, minlength=8)), atol=1e-15)
    assert average_negativity(rho, 2).average == 0.0


def test_localization_term_damps_at_origin():
    p = WavePacketParams.from_splittings(MNSP.params(0.0), 1e16, 3e16, hbar_c=1.0, xi=0.5)
    rho = rho_stationary("e", 0.0, p)
    assert abs(rho[4, 2]) < abs(rho_stationary("e", 0.0, toy_beam(0.0))[4, 2])


@pytest.mark.parametrize("flavor", ["e", "mu", "tau"])
def test_trace_and_positivity_on_log_grid(beam, flavor):
    for x in np.geomspace(1.0, 1e12, 49):
        rho = rho_stationary(flavor, x, beam)
        assert abs(np.trace(rho) - 1.0) < 1e-12
        assert eig_hermitian(rho)[0] >= -1e-10


def test_coherences_decrease_with_distance(beam):
    grid = np.geomspace(1.0, 1e12, 200)
    mags = np.array([np.abs(rho_stationary("tau", x, beam)) for x in grid])
    for j, k in [(4, 2), (4, 1), (2, 1)]:
        assert np.all(np.diff(mags[:, j, k]) <= 1e-15)


def test_electron_curves_ignore_the_phase():
    grid = np.geomspace(1e3, 1e11, 30)
    base = negativity_profile("e", grid, WavePacketParams.mnsp_beam(0.0))
    for d in (math.pi / 2, math.pi):
        other = negativity_profile("e", grid, WavePacketParams.mnsp_beam(d))
        for b in base.curves:
            np.testing.assert_allclose(other.curves[b], base.curves[b], atol=1e-10)


def _mu_pair_curves(theta13, grid):
    b = Bipartition.from_side(3, (1, 2))
    out = []
    for d in (0.0, math.pi / 2, math.pi):
        mix = MixingParams3(MNSP.theta[0], theta13, MNSP.theta[2], d)
        out.append(negativity_profile("mu", grid, WavePacketParams.from_splittings(mix)).curves[b])
    return np.array(out)


def test_mu_pair_12_curve_and_the_phase():
    grid = np.geomspace(1e3, 1e10, 25)
    # exact when theta13 = 0: then |U_mu j| carries no phase dependence
    curves = _mu_pair_curves(0.0, grid)
    np.testing.assert_allclose(curves[1:], curves[[0, 0]], atol=1e-10)
    # at the central theta13 the plane-wave value is still phase free, but the
    # (1,3) and (2,3) coherences decay at different rates and weigh |U_mu1| and
    # |U_mu2| differently, so the curves separate slightly mid-way
    curves = _mu_pair_curves(MNSP.theta[1], grid)
    np.testing.assert_allclose(curves[1:, :3], curves[[0, 0], :3], atol=1e-10)
    assert np.max(np.abs(curves - curves[0])) < 5e-3


def test_profile_shape_and_start(beam):
    prof = negativity_profile("e", [1.0, 1e3, 1e6], beam)
    assert set(prof.curves) == set(bipartitions(3, 2))
    assert np.all(prof.average >= 0)
    assert prof.curves[Bipartition.from_side(3, (1, 3))][0] > 0.93
    assert prof.curves[Bipartition.from_side(3, (2, 3))][0] > 0.93
    plane = average_negativity(density_matrix(flavor_state(u3(beam.mixing), "e")), 2).average
    assert prof.average[0] == pytest.approx(plane, abs=1e-6)
    with pytest.raises(ValueError):
        negativity_profile("e", [1.0, 1.0], beam)


def test_decoherence_length_scaling_and_threshold(beam):
    base = decoherence_length("e", beam)
    scaled = WavePacketParams.from_splittings(beam.mixing, 7.92e-4, 2.6e-2)
    assert decoherence_length("e", scaled) / base == pytest.approx(0.1, rel=0.03)
    assert decoherence_length("e", beam, eps=0.5) < base


def test_decoherence_length_phase_independent():
    a = decoherence_length("mu", WavePacketParams.mnsp_beam(0.0))
    b = decoherence_length("mu", WavePacketParams.mnsp_beam(math.pi))
    assert a / b == pytest.approx(1.0, rel=0.02)


def test_bracket_validation(beam):
    with pytest.raises(BracketInvalid):
        decoherence_length("e", beam, bracket=(1e3, 1e5))
    with pytest.raises(BracketInvalid):
        decoherence_length("e", beam, bracket=(1e12, 1e13))
    with pytest.raises(BracketInvalid):
        vanishing_distance(lambda x: 1.0 / x, 0.1, (5.0, 1.0))


def test_vanishing_distance_resolution():
    x = vanishing_distance(lambda x: 1.0 / x, 1e-4, (1.0, 1e8))
    assert 1e4 <= x <= 1.01e4


def test_kinematics_massless_anchor():
    e, p, v = kinematics(toy_beam())
    assert e[0] == 10.0 and p[0] == 10.0 and v[0] == 1.0
    assert np.all(np.diff(v) < 0)


def test_dynamic_degenerate_masses_give_pure_projector():
    p = WavePacketParams(MNSP.params(0.3), dm2_21=0.0, dm2_31=0.0, dm2_32=0.0, hbar_c=1.0)
    psi = flavor_state(u3(p.mixing), "tau")
    for x, t in [(0.0, 0.0), (50.0, 50.0), (50.0, 49.0)]:
        rho = rho_dynamic("tau", x, t, p)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(rho, density_matrix(psi), atol=1e-12)


def test_dynamic_renormalized_trace():
    p = toy_beam()
    for x, t in [(1e3, 1e3), (2e4, 2e4 + 0.3), (5e4, 5e4 - 2.0)]:
        rho = rho_dynamic("mu", x, t, p)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert eig_hermitian(rho)[0] >= -1e-10


@pytest.mark.parametrize("x", [1e3, 2e4, 6e4])
def test_time_average_reproduces_stationary(x):
    p = toy_beam()
    ts = np.linspace(x - 12.0, x + 12.0, 2401)  # 24 sigma_x either side
    samples = np.array([rho_dynamic("mu", x, t, p, normalize=False) for t in ts])
    avg = np.trapezoid(samples, ts, axis=0) if hasattr(np, "trapezoid") else np.trapz(samples, ts, axis=0)
    stat = rho_stationary("mu", x, p)
    assert np.max(np.abs(avg - stat)) <= 0.05 * np.max(np.abs(stat))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 1e12), st.floats(0.0, 2 * math.pi), st.sampled_from(["e", "mu", "tau"]))
def test_stationary_is_density_matrix(x, delta, flavor):
    rho = rho_stationary(flavor, x, WavePacketParams.mnsp_beam(delta))
    assert abs(np.trace(rho) - 1.0) < 1e-12
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)
    assert eig_hermitian(rho)[0] >= -1e-10
    for b in bipartitions(3, 2):
        assert log_negativity(rho, b) >= 0.0
