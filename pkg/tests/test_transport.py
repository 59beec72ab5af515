import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from curvedspin import kinematics as kin
from curvedspin import transport as tr
from curvedspin.errors import DomainError
from curvedspin.geometry import ETA
from curvedspin.transport import PAULI, SIGMA_Y

XI = math.atanh(0.6)


def test_wigner_generator_value():
    g = tr.CircularOrbit(1.0, 2.0, XI).generators()
    expected = 1.25 * 0.75 / 2 * 0.5 / math.sqrt(2)
    assert g.wigner[1, 3] == pytest.approx(expected, rel=1e-12)
    assert g.wigner[3, 1] == pytest.approx(-expected, rel=1e-12)
    assert not g.wigner[0].any() and not g.wigner[:, 0].any()


def test_wigner_generator_flat():
    g = tr.FlatCircular(3.0, XI).generators()
    assert g.wigner[1, 3] == pytest.approx(1.25 * 0.75 / 3.0, rel=1e-13)


def test_wigner_generator_zero_lambda():
    assert not tr.wigner_generator(np.zeros((4, 4)), np.array([2.0, 0.3, 0.0, 1.0]), 1.7).any()


def test_four_rates_all_differ():
    g = tr.CircularOrbit(1.0, 2.0, XI).generators()
    rates = [g.wigner[1, 3], g.lam[1, 3], g.chi[1, 3], kin.trivial_rotation(2.0, XI)[1, 3]]
    assert len({round(v, 12) for v in rates}) == 4


# ---------------------------------------------------------------- single steps

def test_spin_half_step_identity():
    np.testing.assert_array_equal(tr.spin_half_step(np.zeros((4, 4)), 0.3), np.eye(2))


@pytest.mark.parametrize("w,dtau", [(0.4, 0.5), (-2.0, 1.3), (3.0, 1e-3)])
def test_spin_half_step_pure_axis2(w, dtau):
    th = np.zeros((4, 4))
    th[1, 3], th[3, 1] = w, -w
    expected = scipy.linalg.expm(-0.5j * SIGMA_Y * w * dtau)
    np.testing.assert_allclose(tr.spin_half_step(th, dtau), expected, atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3), st.floats(1e-4, 2.0))
def test_steps_are_unitary_and_match_expm(n, dtau):
    th = np.zeros((4, 4))
    th[2, 3], th[3, 2] = n[0], -n[0]
    th[3, 1], th[1, 3] = n[1], -n[1]
    th[1, 2], th[2, 1] = n[2], -n[2]
    U = tr.spin_half_step(th, dtau)
    np.testing.assert_allclose(U @ U.conj().T, np.eye(2), atol=1e-14)
    assert abs(np.linalg.det(U) - 1.0) < 1e-14
    ns = sum(c * s for c, s in zip(n, PAULI))
    np.testing.assert_allclose(U, scipy.linalg.expm(0.5j * ns * dtau), atol=1e-13)
    W = tr.so3_step(th, dtau)
    np.testing.assert_allclose(W, scipy.linalg.expm(th * dtau), atol=1e-12)
    # the spin-1/2 step covers the vector step
    np.testing.assert_allclose(tr.su2_to_so3(U), W[1:, 1:], atol=1e-12)


# ---------------------------------------------------------------- Lorentz helpers

def test_standard_boost_rest_is_identity():
    np.testing.assert_array_equal(tr.standard_boost(np.array([1.0, 0, 0, 0]), 1.0), np.eye(4))


def test_standard_boost_along_axis3():
    L = tr.standard_boost(np.array([1.25, 0, 0, 0.75]), 1.0)
    assert L[0, 0] == pytest.approx(1.25) and L[3, 3] == pytest.approx(1.25)
    assert L[0, 3] == pytest.approx(0.75) and L[3, 0] == pytest.approx(0.75)
    assert L[1, 1] == 1.0 and L[2, 2] == 1.0
    assert tr.lorentz_residual(L) < 1e-12


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=3, max_size=3), st.floats(0.2, 3.0))
def test_standard_boost_maps_rest_to_p(pv, m):
    p = np.array([math.sqrt(m * m + sum(c * c for c in pv)), *pv])
    L = tr.standard_boost(p, m)
    np.testing.assert_allclose(L @ np.array([m, 0, 0, 0]), p, atol=1e-12 * max(1.0, p[0]))
    assert tr.lorentz_residual(L) < 1e-11 * max(1.0, p[0] ** 2)


def test_wigner_from_identity():
    p = np.array([1.25, 0, 0, 0.75])
    np.testing.assert_allclose(tr.wigner_from_lorentz(np.eye(4), p, 1.0), np.eye(4), atol=1e-14)


def test_wigner_of_rotation_at_rest():
    rot = np.eye(4)
    rot[1:, 1:] = scipy.linalg.expm(np.array([[0, -0.3, 0.2], [0.3, 0, -0.5], [-0.2, 0.5, 0]]))
    np.testing.assert_allclose(tr.wigner_from_lorentz(rot, np.array([1.0, 0, 0, 0]), 1.0), rot, atol=1e-14)


# ---------------------------------------------------------------- transport

def test_closed_form_values():
    assert tr.closed_form_circular(1.0, 2.0, XI, 1.0) == pytest.approx(0.441941738, abs=1e-9)
    assert tr.closed_form_circular(0.0, 1.0, XI, 1.0) == pytest.approx(1.25, rel=1e-15)
    assert tr.closed_form_circular(1.0, 2.0, 0.0, 1.0) == pytest.approx(0.5 / math.sqrt(2), rel=1e-15)


def test_transport_reaches_closed_form():
    out = tr.transport_over_angle(tr.CircularOrbit(1.0, 2.0, XI), 1.0, 10**6)
    assert out.angle == pytest.approx(0.441941738, abs=1e-8)
    assert out.angle == pytest.approx(tr.closed_form_circular(1.0, 2.0, XI, 1.0), rel=1e-8)


def test_zero_duration_transport():
    out = tr.transport_wigner(tr.CircularOrbit(1.0, 2.0, XI), 1.0, 1.0, 10)
    np.testing.assert_array_equal(out.W, np.eye(4))
    np.testing.assert_array_equal(out.U, np.eye(2))


def test_transport_rejects_no_steps():
    with pytest.raises(DomainError):
        tr.transport_wigner(tr.CircularOrbit(1.0, 2.0, XI), 0.0, 1.0, 0)


def test_unwrapped_angle_beyond_pi():
    # deep near the horizon the rotation winds many times
    orbit = tr.CircularOrbit(1.0, 1.0001, XI)
    out = tr.transport_over_angle(orbit, 2.0, 20000)
    closed = tr.closed_form_circular(1.0, 1.0001, XI, 2.0)
    assert closed < -10 * math.pi
    assert out.angle == pytest.approx(closed, rel=1e-9)


def test_opposite_particles_rotate_oppositely():
    plus = tr.transport_over_angle(tr.CircularOrbit(1.0, 3.0, XI, direction=1), 1.0, 5000)
    minus = tr.transport_over_angle(tr.CircularOrbit(1.0, 3.0, XI, direction=-1), 1.0, 5000)
    assert minus.angle == pytest.approx(-plus.angle, rel=1e-12)


@pytest.mark.parametrize("x,v,phi", [(0.0, 0.6, 1.0), (0.5, 0.6, 1.0), (0.8, 0.3, 2.5), (0.2, 0.9, 0.4)])
def test_oracle_agrees_with_generator_route(x, v, phi):
    orbit = tr.CircularOrbit(1.0 if x else 0.0, 1.0 / x if x else 1.0, math.atanh(v))
    tau = orbit.proper_time_for_angle(phi)
    out = tr.transport_wigner(orbit, 0.0, tau, 4000)
    W = tr.wigner_via_lorentz(orbit, 0.0, tau, 4000)
    np.testing.assert_allclose(out.W, W, atol=1e-10)
    np.testing.assert_allclose(tr.su2_to_so3(out.U), out.W[1:, 1:], atol=1e-12)
    # little group of the rest momentum, and the momentum itself is conserved
    rest = np.array([1.0, 0, 0, 0])
    np.testing.assert_allclose(W @ rest, rest, atol=1e-10)
    lam = tr.lorentz_transport(orbit, 0.0, tau, 4000)
    p = orbit.generators().momentum
    np.testing.assert_allclose(lam @ p, p, atol=1e-10)
    assert tr.lorentz_residual(lam) < 1e-10


def test_composition_law():
    orbit = tr.CircularOrbit(1.0, 2.5, 0.8)
    h = 0.001
    full = tr.transport_wigner(orbit, 0.0, 2000 * h, 2000)
    first = tr.transport_wigner(orbit, 0.0, 700 * h, 700)
    second = tr.transport_wigner(orbit, 700 * h, 2000 * h, 1300)
    np.testing.assert_allclose(second.W @ first.W, full.W, atol=1e-10)
    np.testing.assert_allclose(second.U @ first.U, full.U, atol=1e-10)
    assert first.angle + second.angle == pytest.approx(full.angle, abs=1e-10)


def test_first_order_product_converges_quadratically():
    orbit = tr.CircularOrbit(1.0, 3.0, 0.9)
    tau = orbit.proper_time_for_angle(1.0)
    closed = tr.closed_form_circular(1.0, 3.0, 0.9, 1.0)
    ns = np.array([100, 200, 400, 800, 1600])
    errs = [abs(tr.transport_wigner(orbit, 0.0, tau, n, exact=False).angle - closed) for n in ns]
    order = -np.polyfit(np.log(ns), np.log(errs), 1)[0]
    assert order >= 1.9


def test_kruskal_worldline_is_pointwise_only():
    fall = tr.KruskalFall(1.0, XI, 0.2, 1.0)
    g = fall.generators()
    assert kin.antisymmetry_residual(g.wigner) < 1e-13
    with pytest.raises(NotImplementedError):
        tr.transport_wigner(fall, 0.0, 1.0, 10)


# ---------------------------------------------------------------- Thomas limit

@pytest.mark.parametrize("v", [1e-4, 1e-3, 0.01])
def test_thomas_limit(v):
    exact, approx = tr.thomas_rate(1.0, math.atanh(v))
    assert exact == pytest.approx(approx, rel=0.01)


def test_thomas_approximation_breaks_down():
    exact, approx = tr.thomas_rate(1.0, XI)
    assert abs(exact - approx) > 0.01 * abs(approx)
    assert tr.thomas_rate(1.0, 0.0) == (0.0, 0.0)


def test_lorentz_inverse():
    L = tr.standard_boost(np.array([2.0, 1.0, 0.5, 1.2]), math.sqrt(4 - 1 - 0.25 - 1.44))
    np.testing.assert_allclose(tr.lorentz_inverse(L) @ L, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(L.T @ ETA @ L, ETA, atol=1e-12)
