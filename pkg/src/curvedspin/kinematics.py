"""Four-velocities, accelerations and the infinitesimal Lorentz generators.

Along a worldline the local-frame momentum changes as dp^a = lambda^a_b p^b dtau.
``lambda`` collects the boost produced by the external force and the frame
change ``chi`` seen by a particle moving through the spin connection.

Generators are plain 4x4 arrays ``G[a, b] = G^a_b`` in the local frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .errors import DomainError, FrameMismatch
from .geometry import ETA, ChartId, SpacetimePoint

COORDINATE = "coordinate"
LOCAL = "local"


@dataclass(frozen=True)
class FourVector:
    frame: str
    components: np.ndarray
    point: SpacetimePoint

    def __post_init__(self):
        if self.frame not in (COORDINATE, LOCAL):
            raise ValueError(f"unknown frame tag {self.frame!r}")
        object.__setattr__(self, "components", np.asarray(self.components, dtype=float))


def rapidity(v_over_c: float) -> float:
    if not -1.0 < v_over_c < 1.0:
        raise DomainError(f"|v/c| = {abs(v_over_c)!r} must be below 1")
    return math.atanh(v_over_c)


def speed(xi: float) -> float:
    return math.tanh(xi)


def _same_point(*items) -> None:
    points = [it.point for it in items if it is not None and it.point is not None]
    if any(p != points[0] for p in points[1:]):
        raise FrameMismatch("objects belong to different events")


def _require_frame(v: FourVector, frame: str) -> None:
    if v.frame != frame:
        raise FrameMismatch(f"expected a {frame}-frame vector, got {v.frame}")


def norm2(chart: ChartId, r_s: float, v: FourVector) -> float:
    """v.v with the metric of the vector's frame."""
    if v.frame == LOCAL:
        return float(v.components @ ETA @ v.components)
    g = geo.metric_at(chart, r_s, v.point).g
    return float(v.components @ g @ v.components)


def dot(chart: ChartId, r_s: float, a: FourVector, b: FourVector) -> float:
    _same_point(a, b)
    if a.frame != b.frame:
        raise FrameMismatch("cannot contract vectors given in different frames")
    if a.frame == LOCAL:
        return float(a.components @ ETA @ b.components)
    g = geo.metric_at(chart, r_s, a.point).g
    return float(a.components @ g @ b.components)


def equatorial_point(r_s: float, r: float, t: float = 0.0, phi: float = 0.0) -> SpacetimePoint:
    chart = ChartId.SCHWARZSCHILD_STATIC if r_s > 0.0 else ChartId.MINKOWSKI
    return SpacetimePoint(chart, (t, r, math.pi / 2, phi))


# --------------------------------------------------------------------------
# circular orbit in the static chart

def circular_velocity(r_s: float, r: float, xi: float, direction: int = 1,
                      point: SpacetimePoint | None = None) -> FourVector:
    """u^t = cosh(xi)/sqrt(f), u^phi = +-sinh(xi)/r on the equator."""
    geo._check_static(r_s, r)
    point = point or equatorial_point(r_s, r)
    f = geo.f_static(r_s, r)
    u = np.zeros(4)
    u[0] = math.cosh(xi) / math.sqrt(f)
    u[3] = direction * math.sinh(xi) / r
    return FourVector(COORDINATE, u, point)


def circular_acceleration(r_s: float, r: float, xi: float,
                          point: SpacetimePoint | None = None) -> FourVector:
    """Radial thrust keeping the particle on the circle.

    Written as r_s cosh^2(xi)/2r^2 - f sinh^2(xi)/r, which is the same
    expression as -sinh^2(xi)/r [1 - r_s coth^2(xi)/(2 r f)] f without the
    0 * inf at xi = 0.
    """
    geo._check_static(r_s, r)
    point = point or equatorial_point(r_s, r)
    f = geo.f_static(r_s, r)
    a = np.zeros(4)
    a[1] = r_s * math.cosh(xi) ** 2 / (2.0 * r * r) - f * math.sinh(xi) ** 2 / r
    return FourVector(COORDINATE, a, point)


def geodesic_deviation_acceleration(chart: ChartId, r_s: float, u: FourVector,
                                    du_along: np.ndarray | None = None) -> FourVector:
    """a^mu = u^nu d_nu u^mu + Gamma^mu_{nu rho} u^nu u^rho.

    ``du_along`` is the directional derivative u^nu d_nu u^mu; it vanishes
    for stationary circular orbits.
    """
    _require_frame(u, COORDINATE)
    gamma = geo.christoffel_at(chart, r_s, u.point)
    a = np.einsum("mnr,n,r->m", gamma, u.components, u.components)
    if du_along is not None:
        a = a + du_along
    return FourVector(COORDINATE, a, u.point)


# --------------------------------------------------------------------------
# infalling (Kruskal) frame

def kruskal_velocity(r_s: float, x: SpacetimePoint, xi: float, direction: int = 1) -> FourVector:
    """u^T = cosh(xi)/sqrt(F), u^phi = +-sinh(xi)/r; no radial motion relative to the frame."""
    if x.chart is not ChartId.KRUSKAL:
        raise DomainError("kruskal_velocity needs a Kruskal-chart point")
    r = geo.r_from_kruskal(r_s, x.coords[0], x.coords[1])
    u = np.zeros(4)
    u[0] = math.cosh(xi) / math.sqrt(geo.F_kruskal(r_s, r))
    u[3] = direction * math.sinh(xi) / (r * math.sin(x.theta))
    return FourVector(COORDINATE, u, x)


def kruskal_acceleration(r_s: float, x: SpacetimePoint, xi: float, direction: int = 1) -> FourVector:
    """Acceleration of the velocity field u~ (constant xi) through the Kruskal chart."""
    u = kruskal_velocity(r_s, x, xi, direction)
    T, R = x.coords[0], x.coords[1]
    r = geo.r_from_kruskal(r_s, T, R)
    F = geo.F_kruskal(r_s, r)
    dF = -F * (1.0 / r + 1.0 / r_s)
    r_T, _ = geo.kruskal_radius_derivatives(r_s, T, R, r)
    # only u^T d_T survives: the field does not depend on phi and u^R = 0
    du = np.zeros(4)
    du[0] = u.components[0] * math.cosh(xi) * (-0.5) * F ** -1.5 * dF * r_T
    du[3] = u.components[0] * (-direction * math.sinh(xi) * r_T / (r * r * math.sin(x.theta)))
    return geodesic_deviation_acceleration(ChartId.KRUSKAL, r_s, u, du)


# --------------------------------------------------------------------------
# local frame quantities and generators

def to_local(vb: geo.Vierbein, v: FourVector) -> FourVector:
    _require_frame(v, COORDINATE)
    _same_point(vb, v)
    return FourVector(LOCAL, vb.e_inv @ v.components, v.point)


def local_momentum(vb: geo.Vierbein, m: float, u: FourVector) -> FourVector:
    """p^a = e^a_mu m u^mu."""
    _require_frame(u, COORDINATE)
    _same_point(vb, u)
    return FourVector(LOCAL, m * (vb.e_inv @ u.components), u.point)


def chi_generator(u: FourVector, omega: geo.ConnectionOneForm) -> np.ndarray:
    """chi^a_b = -u^mu omega_mu^a_b: how the local frame turns along u."""
    _require_frame(u, COORDINATE)
    _same_point(u, omega)
    return -np.einsum("m,mab->ab", u.components, omega.omega)


def lambda_generator(a: FourVector, p: FourVector, chi: np.ndarray, m: float) -> np.ndarray:
    """lambda^a_b = -(a^a p_b - p^a a_b)/m + chi^a_b (local-frame a and p)."""
    _require_frame(a, LOCAL)
    _require_frame(p, LOCAL)
    _same_point(a, p)
    a_low = ETA @ a.components
    p_low = ETA @ p.components
    return -(np.outer(a.components, p_low) - np.outer(p.components, a_low)) / m + chi


def trivial_rotation(r: float, xi: float, direction: int = 1) -> np.ndarray:
    """Rotation of the static frame about axis 2 as seen by the orbiting particle: phi^1_3 = u^phi."""
    g = np.zeros((4, 4))
    g[1, 3] = direction * math.sinh(xi) / r
    g[3, 1] = -g[1, 3]
    return g


def lowered(gen: np.ndarray) -> np.ndarray:
    """G_ab = eta_ac G^c_b."""
    return ETA @ gen


def antisymmetry_residual(gen: np.ndarray) -> float:
    low = lowered(gen)
    return float(np.max(np.abs(low + low.T)))
