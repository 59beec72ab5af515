import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvedspin import geometry as geo
from curvedspin import kinematics as kin
from curvedspin import transport as tr
from curvedspin.errors import DomainError, FrameMismatch
from curvedspin.geometry import ETA, ChartId, SpacetimePoint

XI = math.atanh(0.6)  # cosh = 1.25, sinh = 0.75
STATIC = ChartId.SCHWARZSCHILD_STATIC


def test_rapidity_round_trip():
    assert kin.speed(kin.rapidity(0.6)) == pytest.approx(0.6, rel=1e-15)
    with pytest.raises(DomainError):
        kin.rapidity(1.0)


def test_static_worldline_velocity():
    u = kin.circular_velocity(1.0, 2.0, 0.0)
    np.testing.assert_allclose(u.components, [math.sqrt(2), 0, 0, 0], rtol=1e-15)


def test_circular_velocity_values():
    u = kin.circular_velocity(1.0, 2.0, XI)
    assert u.components[0] == pytest.approx(1.25 * math.sqrt(2), rel=1e-14)
    assert u.components[3] == pytest.approx(0.375, rel=1e-14)
    assert kin.norm2(STATIC, 1.0, u) == pytest.approx(-1.0, abs=1e-12)


def test_hovering_acceleration():
    a = kin.circular_acceleration(1.0, 2.0, 0.0)
    assert a.components[1] == pytest.approx(1.0 / 8.0, rel=1e-14)
    flat = kin.circular_acceleration(0.0, 2.0, 0.0)
    assert not flat.components.any()


def test_hovering_limit_is_continuous():
    a0 = kin.circular_acceleration(1.0, 3.0, 0.0).components[1]
    a_small = kin.circular_acceleration(1.0, 3.0, 1e-6).components[1]
    assert a_small == pytest.approx(a0, rel=1e-10)


def test_acceleration_is_covariant_derivative_of_velocity():
    # for the circular orbit the velocity components are constant along the path
    x = kin.equatorial_point(1.0, 2.5)
    u = kin.circular_velocity(1.0, 2.5, 0.7, point=x)
    direct = kin.geodesic_deviation_acceleration(STATIC, 1.0, u, np.zeros(4))
    np.testing.assert_allclose(direct.components,
                               kin.circular_acceleration(1.0, 2.5, 0.7, point=x).components, atol=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.floats(1.05, 30.0), st.floats(-2.5, 2.5), st.sampled_from([0.0, 1.0]))
def test_velocity_normalized_and_orthogonal_to_acceleration(r, xi, r_s):
    u = kin.circular_velocity(r_s, r, xi)
    a = kin.circular_acceleration(r_s, r, xi)
    chart = u.point.chart
    assert kin.norm2(chart, r_s, u) == pytest.approx(-1.0, abs=1e-12)
    assert abs(kin.dot(chart, r_s, a, u)) < 1e-12 * max(1.0, abs(a.components).max())


def test_kruskal_velocity_on_horizon():
    x = SpacetimePoint(ChartId.KRUSKAL, (0.3, 0.3, math.pi / 2, 0.0))
    u = kin.kruskal_velocity(1.0, x, XI)
    assert u.components[0] == pytest.approx(1.25 * math.exp(0.5), rel=1e-12)
    assert kin.norm2(ChartId.KRUSKAL, 1.0, u) == pytest.approx(-1.0, abs=1e-12)
    vb = geo.kruskal_vierbein(1.0, x)
    p = kin.local_momentum(vb, 1.0, u)
    assert p.components[1] == 0.0


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 2.0), st.floats(0.2, 2.5), st.floats(-2.0, 2.0))
def test_kruskal_kinematics_consistent(T, R, xi):
    if R * R - T * T <= -3.5:
        return
    x = SpacetimePoint(ChartId.KRUSKAL, (T, R, math.pi / 2, 0.0))
    u = kin.kruskal_velocity(1.0, x, xi)
    a = kin.kruskal_acceleration(1.0, x, xi)
    assert kin.norm2(ChartId.KRUSKAL, 1.0, u) == pytest.approx(-1.0, abs=1e-11)
    assert abs(kin.dot(ChartId.KRUSKAL, 1.0, a, u)) < 1e-10 * max(1.0, abs(a.components).max())


def test_local_momentum_on_circular_orbit():
    g = tr.CircularOrbit(1.0, 2.0, XI, mass=2.0).generators()
    np.testing.assert_allclose(g.momentum, [2.5, 0.0, 0.0, 1.5], atol=1e-14)
    assert g.momentum @ ETA @ g.momentum == pytest.approx(-4.0, rel=1e-12)
    g_back = tr.CircularOrbit(1.0, 2.0, XI, direction=-1).generators()
    assert g_back.momentum[3] == pytest.approx(-0.75, rel=1e-14)


def test_static_particle_momentum():
    g = tr.CircularOrbit(1.0, 3.0, 0.0).generators()
    np.testing.assert_allclose(g.momentum, [1.0, 0, 0, 0], atol=1e-15)


def test_chi_components():
    g = tr.CircularOrbit(1.0, 2.0, XI).generators()
    assert g.chi[0, 1] == pytest.approx(-1.25 / (8 / math.sqrt(2)), rel=1e-12)
    assert g.chi[1, 0] == pytest.approx(g.chi[0, 1], rel=1e-14)
    assert g.chi[1, 3] == pytest.approx(0.75 / math.sqrt(2) / 2, rel=1e-12)


def test_chi_vanishes_at_rest_in_flat_space():
    g = tr.FlatCircular(3.0, 0.0).generators()
    assert np.max(np.abs(g.chi)) == 0.0
    assert np.max(np.abs(g.lam)) == 0.0


def test_lambda_components():
    g = tr.CircularOrbit(1.0, 2.0, XI).generators()
    expected = 1.5625 * 0.75 / 2 * 0.5 / math.sqrt(2)
    assert g.lam[1, 3] == pytest.approx(expected, rel=1e-12)
    assert np.max(np.abs(g.lam @ g.momentum)) < 1e-14


@settings(max_examples=60, deadline=None)
@given(st.one_of(st.just(0.0), st.floats(1e-6, 0.95)), st.floats(-2.0, 2.0))
def test_generators_antisymmetric(x, xi):
    orbit = tr.CircularOrbit(1.0, 1.0 / x, xi) if x > 0 else tr.FlatCircular(1.0, xi)
    g = orbit.generators()
    assert kin.antisymmetry_residual(g.chi) < 1e-13
    assert kin.antisymmetry_residual(g.lam) < 1e-13
    assert np.max(np.abs(g.lam @ g.momentum)) < 1e-12 * max(1.0, math.cosh(xi) ** 3)


def test_frame_mismatch_is_rejected():
    x1, x2 = kin.equatorial_point(1.0, 2.0), kin.equatorial_point(1.0, 3.0)
    u = kin.circular_velocity(1.0, 2.0, 0.4, point=x1)
    a = kin.circular_acceleration(1.0, 3.0, 0.4, point=x2)
    with pytest.raises(FrameMismatch):
        kin.dot(STATIC, 1.0, u, a)
    vb = geo.static_vierbein(1.0, x1)
    with pytest.raises(FrameMismatch):
        kin.lambda_generator(kin.to_local(vb, u), u, np.zeros((4, 4)), 1.0)
