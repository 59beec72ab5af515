"""Local Wigner rotations and their transport along worldlines.

The spin of a particle moving through curved spacetime is rotated by the
little-group part of the local Lorentz transformation lambda at each step.
``transport_wigner`` multiplies the per-step rotations in chronological
order (latest factor leftmost). ``lorentz_transport`` and
``wigner_from_lorentz`` give an independent route to the same rotation:
compose the momentum Lorentz transformations first, then take
L^-1(Lambda p) Lambda L(p) once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import geometry as geo
from . import kinematics as kin
from .errors import DomainError
from .geometry import ETA, ChartId, SpacetimePoint

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# design default: 1e5 steps per 2 pi of azimuthal advance
STEPS_PER_TURN = 100_000


# --------------------------------------------------------------------------
# worldlines

@dataclass(frozen=True)
class Generators:
    """Everything the transport needs at one event of a worldline."""

    point: SpacetimePoint
    momentum: np.ndarray      # local p^a
    chi: np.ndarray
    lam: np.ndarray
    wigner: np.ndarray        # vartheta^a_b


@dataclass(frozen=True)
class CircularOrbit:
    """Equatorial circular motion at fixed r in the static chart, held by an external force."""

    r_s: float
    r: float
    xi: float
    direction: int = 1
    mass: float = 1.0
    stationary: bool = field(default=True, init=False)

    def __post_init__(self):
        geo._check_static(self.r_s, self.r)
        if self.direction not in (1, -1):
            raise DomainError("direction must be +1 or -1")
        if not math.isfinite(self.xi):
            raise DomainError("rapidity must be finite")

    @property
    def chart(self) -> ChartId:
        return ChartId.SCHWARZSCHILD_STATIC

    def angular_velocity(self) -> float:
        """d phi / d tau."""
        return self.direction * math.sinh(self.xi) / self.r

    def point(self, tau: float) -> SpacetimePoint:
        t = tau * math.cosh(self.xi) / math.sqrt(geo.f_static(self.r_s, self.r))
        return SpacetimePoint(self.chart, (t, self.r, math.pi / 2, tau * self.angular_velocity()))

    def proper_time_for_angle(self, phi: float) -> float:
        """Proper time needed to sweep the azimuth ``phi``: r phi / sinh(xi)."""
        if self.xi == 0.0:
            raise DomainError("a particle at rest never advances in azimuth")
        return abs(phi) * self.r / math.sinh(abs(self.xi))

    def generators(self, tau: float = 0.0) -> Generators:
        x = self.point(tau)
        vb = geo.vierbein_at(self.chart, self.r_s, x)
        u = kin.circular_velocity(self.r_s, self.r, self.xi, self.direction, point=x)
        a = kin.circular_acceleration(self.r_s, self.r, self.xi, point=x)
        omega = geo.spin_connection(self.chart, self.r_s, x)
        return _generators_from(x, vb, u, a, omega, self.mass)


class FlatCircular(CircularOrbit):
    """Circular motion in Minkowski spacetime (the r_s = 0 case)."""

    def __init__(self, r: float, xi: float, direction: int = 1, mass: float = 1.0):
        object.__setattr__(self, "r_s", 0.0)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "stationary", True)
        self.__post_init__()

    @property
    def chart(self) -> ChartId:
        return ChartId.MINKOWSKI


@dataclass(frozen=True)
class KruskalFall:
    """Particles co-falling with the Kruskal frame, sampled at one event.

    Only the pointwise generators are available: the full infalling
    trajectory is not prescribed, so this worldline cannot be transported.
    """

    r_s: float
    xi: float
    T: float
    R: float
    direction: int = 1
    mass: float = 1.0
    stationary: bool = field(default=False, init=False)

    def point(self, tau: float = 0.0) -> SpacetimePoint:
        if tau != 0.0:
            raise NotImplementedError("no infalling trajectory is prescribed beyond the sample event")
        return SpacetimePoint(ChartId.KRUSKAL, (self.T, self.R, math.pi / 2, 0.0))

    def generators(self, tau: float = 0.0) -> Generators:
        x = self.point(tau)
        vb = geo.kruskal_vierbein(self.r_s, x)
        u = kin.kruskal_velocity(self.r_s, x, self.xi, self.direction)
        a = kin.kruskal_acceleration(self.r_s, x, self.xi, self.direction)
        omega = geo.spin_connection(ChartId.KRUSKAL, self.r_s, x)
        return _generators_from(x, vb, u, a, omega, self.mass)


def _generators_from(x, vb, u, a, omega, m) -> Generators:
    p = kin.local_momentum(vb, m, u)
    a_loc = kin.to_local(vb, a)
    chi = kin.chi_generator(u, omega)
    lam = kin.lambda_generator(a_loc, p, chi, m)
    return Generators(point=x, momentum=p.components, chi=chi, lam=lam,
                      wigner=wigner_generator(lam, p.components, m))


# --------------------------------------------------------------------------
# infinitesimal Wigner rotation

def wigner_generator(lam: np.ndarray, p: np.ndarray, m: float) -> np.ndarray:
    """vartheta^i_k = lambda^i_k + (lambda^i_0 p_k - lambda_k0 p^i)/(p^0 + m); zero time row/column."""
    p = np.asarray(p, dtype=float)
    theta = np.zeros((4, 4))
    # spatial indices are raised and lowered with +1, so p_k = p^k and lambda_k0 = lambda^k_0
    boost = lam[1:, 0]
    theta[1:, 1:] = lam[1:, 1:] + (np.outer(boost, p[1:]) - np.outer(p[1:], boost)) / (p[0] + m)
    return theta


def rotation_vector(theta: np.ndarray) -> np.ndarray:
    """(vartheta_23, vartheta_31, vartheta_12): the coefficients of the Pauli matrices."""
    return np.array([theta[2, 3], theta[3, 1], theta[1, 2]])


def spin_half_step(theta: np.ndarray, dtau: float, exact: bool = True) -> np.ndarray:
    """D(W) for one step: exp((i/2) n.sigma dtau), or its first-order truncation."""
    n = rotation_vector(theta) * dtau
    if not exact:
        return np.eye(2, dtype=complex) + 0.5j * sum(c * s for c, s in zip(n, PAULI))
    angle = float(np.linalg.norm(n))
    if angle == 0.0:
        return np.eye(2, dtype=complex)
    axis = n / angle
    ns = sum(c * s for c, s in zip(axis, PAULI))
    return math.cos(angle / 2) * np.eye(2, dtype=complex) + 1j * math.sin(angle / 2) * ns


def so3_step(theta: np.ndarray, dtau: float, exact: bool = True) -> np.ndarray:
    """The 4x4 little-group element for one step: exp(vartheta dtau) or I + vartheta dtau."""
    if not exact:
        return np.eye(4) + theta * dtau
    K = theta[1:, 1:] * dtau
    # K v = w x v with w = (K_32, K_13, K_21)
    w = np.array([K[2, 1], K[0, 2], K[1, 0]])
    angle = float(np.linalg.norm(w))
    out = np.eye(4)
    if angle == 0.0:
        return out
    Kn = K / angle
    out[1:, 1:] = np.eye(3) + math.sin(angle) * Kn + (1.0 - math.cos(angle)) * (Kn @ Kn)
    return out


def axis2_angle(W: np.ndarray) -> float:
    """Rotation angle about local axis 2 read off W^1_3 = sin, W^3_3 = cos; range (-pi, pi]."""
    return math.atan2(W[1, 3], W[3, 3])


@dataclass(frozen=True)
class TransportResult:
    W: np.ndarray
    U: np.ndarray
    angle: float  # unwrapped rotation about axis 2


def ordered_product(generator_at, tau_i: float, tau_f: float, steps: int,
                    exact: bool = True, stationary: bool = False) -> TransportResult:
    """Chronological product of per-step rotations for a generator field ``generator_at(tau)``.

    Step k uses the generator sampled at tau_i + k h (k = 0 .. steps-1).
    """
    if steps < 1:
        raise DomainError("steps must be >= 1")
    h = (tau_f - tau_i) / steps
    W = np.eye(4)
    U = np.eye(2, dtype=complex)
    if h == 0.0:
        return TransportResult(W, U, 0.0)

    cached = None
    if stationary:
        th = generator_at(tau_i)
        cached = (so3_step(th, h, exact), spin_half_step(th, h, exact))

    total = 0.0
    prev = 0.0
    two_pi = 2.0 * math.pi
    for k in range(steps):
        if cached is None:
            th = generator_at(tau_i + k * h)
            w_step, u_step = so3_step(th, h, exact), spin_half_step(th, h, exact)
        else:
            w_step, u_step = cached
        W = w_step @ W
        U = u_step @ U
        cur = math.atan2(W[1, 3], W[3, 3])
        d = cur - prev
        # winding counter: per-step increments are far below pi
        if d > math.pi:
            d -= two_pi
        elif d <= -math.pi:
            d += two_pi
        total += d
        prev = cur
    return TransportResult(W, U, total)


def transport_wigner(worldline, tau_i: float, tau_f: float, steps: int,
                     exact: bool = True) -> TransportResult:
    """Wigner rotation accumulated between proper times tau_i and tau_f."""
    if isinstance(worldline, KruskalFall):
        raise NotImplementedError("the infalling worldline is only specified pointwise")
    return ordered_product(lambda tau: worldline.generators(tau).wigner, tau_i, tau_f, steps,
                           exact=exact, stationary=worldline.stationary)


def default_steps(phi: float) -> int:
    return max(1, math.ceil(STEPS_PER_TURN * abs(phi) / (2.0 * math.pi)))


def transport_over_angle(orbit: CircularOrbit, phi: float, steps: int | None = None,
                         exact: bool = True) -> TransportResult:
    """Transport from the source at azimuth 0 until the particle has swept ``phi``."""
    tau = orbit.proper_time_for_angle(phi)
    return transport_wigner(orbit, 0.0, tau, steps or default_steps(phi), exact=exact)


def closed_form_circular(r_s: float, r: float, xi: float, phi: float, direction: int = 1) -> float:
    """Theta = Phi cosh(xi) [1 - r_s/(2 r f)] sqrt(f), signed by the direction of motion."""
    geo._check_static(r_s, r)
    f = geo.f_static(r_s, r)
    return direction * phi * math.cosh(xi) * (1.0 - r_s / (2.0 * r * f)) * math.sqrt(f)


# --------------------------------------------------------------------------
# finite Lorentz transformations and the little-group oracle

def lorentz_inverse(L: np.ndarray) -> np.ndarray:
    return ETA @ L.T @ ETA


def lorentz_residual(L: np.ndarray) -> float:
    return float(np.max(np.abs(L.T @ ETA @ L - ETA)))


def standard_boost(p: np.ndarray, m: float) -> np.ndarray:
    """L(p) taking the rest momentum (m, 0, 0, 0) to p."""
    p = np.asarray(p, dtype=float)
    if p[0] <= 0.0:
        raise DomainError("standard boost needs positive energy")
    pv = p[1:]
    p2 = float(pv @ pv)
    gamma = math.sqrt(p2 + m * m) / m
    L = np.eye(4)
    L[0, 0] = gamma
    L[0, 1:] = L[1:, 0] = pv / m
    if p2 > 0.0:
        L[1:, 1:] += (gamma - 1.0) * np.outer(pv, pv) / p2
    return L


def wigner_from_lorentz(lam: np.ndarray, p: np.ndarray, m: float) -> np.ndarray:
    """W(Lambda, p) = L^-1(Lambda p) Lambda L(p)."""
    q = lam @ np.asarray(p, dtype=float)
    if q[0] <= 0.0:
        raise DomainError("Lambda p must have positive energy")
    return lorentz_inverse(standard_boost(q, m)) @ lam @ standard_boost(p, m)


def lorentz_transport(worldline, tau_i: float, tau_f: float, steps: int) -> np.ndarray:
    """Chronological product of exp(lambda h) for the local-frame momentum."""
    if steps < 1:
        raise DomainError("steps must be >= 1")
    h = (tau_f - tau_i) / steps
    if worldline.stationary:
        step = scipy.linalg.expm(worldline.generators(tau_i).lam * h)
        out = np.eye(4)
        for _ in range(steps):
            out = step @ out
        return out
    out = np.eye(4)
    for k in range(steps):
        out = scipy.linalg.expm(worldline.generators(tau_i + k * h).lam * h) @ out
    return out


def wigner_via_lorentz(worldline, tau_i: float, tau_f: float, steps: int) -> np.ndarray:
    """Oracle: the little-group element from the composed momentum transformation."""
    lam = lorentz_transport(worldline, tau_i, tau_f, steps)
    g = worldline.generators(tau_i)
    return wigner_from_lorentz(lam, g.momentum, worldline.mass)


def su2_to_so3(U: np.ndarray) -> np.ndarray:
    """R with U (a.sigma) U^dagger = (R a).sigma."""
    R = np.empty((3, 3))
    Ud = U.conj().T
    for j, sj in enumerate(PAULI):
        rotated = U @ sj @ Ud
        for k, sk in enumerate(PAULI):
            R[k, j] = 0.5 * np.trace(sk @ rotated).real
    return R


def thomas_rate(r: float, xi: float) -> tuple[float, float]:
    """Flat-space spin precession per unit coordinate time: (exact, -v a / 2).

    The exact value is (vartheta^3_1 - chi^3_1) dtau/dt with dt = cosh(xi) dtau
    and a = sinh^2(xi)/r.
    """
    g = FlatCircular(r, xi).generators()
    exact = (g.wigner[3, 1] - g.chi[3, 1]) / math.cosh(xi)
    v = math.tanh(xi)
    a = math.sinh(xi) ** 2 / r
    return exact, -v * a / 2.0
