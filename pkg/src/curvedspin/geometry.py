"""Metrics, vierbeins, Christoffel symbols and spin connections.

Three charts are supported, all in geometric units (c = 1):

* ``MINKOWSKI`` -- flat spacetime in spherical coordinates (t, r, theta, phi).
* ``SCHWARZSCHILD_STATIC`` -- (t, r, theta, phi) with f(r) = 1 - r_s/r, valid for r > r_s.
* ``KRUSKAL`` -- (T, R, theta, phi) with F(r) = (r_s/r) exp(-r/r_s), regular at the horizon.

Index conventions for the arrays returned here:

* ``Vierbein.e[a, mu]`` is the frame field e_a^mu, ``Vierbein.e_inv[a, mu]`` is e^a_mu.
* ``christoffel_at(...)[lam, mu, nu]`` is Gamma^lam_{mu nu}.
* ``ConnectionOneForm.omega[mu, a, b]`` is omega_mu^a_b.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._roots import bisect_newton
from .errors import DomainError, HorizonSingularity, PhysicalSingularity

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])

# static-chart operations reject r <= r_s * (1 + HORIZON_GUARD)
HORIZON_GUARD = 1e-12


class ChartId(enum.Enum):
    MINKOWSKI = "minkowski"
    SCHWARZSCHILD_STATIC = "schwarzschild_static"
    KRUSKAL = "kruskal"


@dataclass(frozen=True)
class SpacetimePoint:
    """An event tagged with the chart its coordinates belong to.

    ``coords`` is (t, r, theta, phi) for the Minkowski and static charts and
    (T, R, theta, phi) for the Kruskal chart. The azimuth is wrapped into [0, 2 pi).
    """

    chart: ChartId
    coords: tuple

    def __post_init__(self):
        c = tuple(float(v) for v in self.coords)
        if len(c) != 4:
            raise DomainError(f"expected 4 coordinates, got {len(c)}")
        if not all(math.isfinite(v) for v in c):
            raise DomainError(f"non-finite coordinates {c}")
        theta = c[2]
        if not 0.0 < theta < math.pi:
            raise DomainError(f"theta = {theta!r} outside (0, pi)")
        phi = c[3] % (2.0 * math.pi)
        object.__setattr__(self, "coords", (c[0], c[1], theta, phi))

    @property
    def theta(self) -> float:
        return self.coords[2]

    @property
    def phi(self) -> float:
        return self.coords[3]


@dataclass(frozen=True)
class MetricTensor:
    g: np.ndarray
    g_inv: np.ndarray


@dataclass(frozen=True)
class Vierbein:
    e: np.ndarray
    e_inv: np.ndarray
    point: SpacetimePoint | None = None


@dataclass(frozen=True)
class ConnectionOneForm:
    omega: np.ndarray
    point: SpacetimePoint | None = None

    def lowered(self) -> np.ndarray:
        """omega_mu,ab with the first frame index lowered by eta."""
        return np.einsum("ac,mcb->mab", ETA, self.omega)


# --------------------------------------------------------------------------
# scalar helpers

def f_static(r_s: float, r: float) -> float:
    return 1.0 - r_s / r


def F_kruskal(r_s: float, r: float) -> float:
    return (r_s / r) * math.exp(-r / r_s)


def _check_static(r_s: float, r: float) -> None:
    if r_s < 0.0:
        raise DomainError(f"r_s = {r_s!r} must be non-negative")
    if r <= 0.0:
        raise DomainError(f"r = {r!r} must be positive")
    if r_s > 0.0 and r <= r_s * (1.0 + HORIZON_GUARD):
        raise HorizonSingularity(
            f"static chart breaks down at r = {r!r} <= r_s = {r_s!r}")


def _check_chart(chart: ChartId, x: SpacetimePoint) -> None:
    if x.chart is not chart:
        raise DomainError(f"point is in chart {x.chart.name}, expected {chart.name}")


def kruskal_invariant(r_s: float, r: float) -> float:
    """R^2 - T^2 as a function of r: 4 r_s (r - r_s) exp(r/r_s)."""
    return 4.0 * r_s * (r - r_s) * math.exp(r / r_s)


def kruskal_from_static(r_s: float, t: float, r: float) -> tuple[float, float]:
    """Map an exterior event (t, r) to Kruskal (T, R) with R > 0."""
    if r_s <= 0.0:
        raise DomainError("Kruskal coordinates need r_s > 0")
    if r <= r_s:
        raise DomainError(f"r = {r!r} is not in the exterior region (r_s = {r_s!r})")
    # R^2 - T^2 = 4 r_s^2 f/F, T/R = tanh(t / 2 r_s)
    rho = 2.0 * math.sqrt(r_s * (r - r_s)) * math.exp(r / (2.0 * r_s))
    a = t / (2.0 * r_s)
    return rho * math.sinh(a), rho * math.cosh(a)


def r_from_kruskal(r_s: float, T: float, R: float) -> float:
    """Invert R^2 - T^2 = 4 r_s (r - r_s) e^{r/r_s} for r > 0."""
    if r_s <= 0.0:
        raise DomainError("Kruskal coordinates need r_s > 0")
    d = (R * R - T * T) / (4.0 * r_s * r_s)
    if d == 0.0:
        return r_s
    if d <= -1.0:
        raise PhysicalSingularity(
            f"(T, R) = ({T!r}, {R!r}) lies at or beyond the singularity r = 0")

    # y = r/r_s solves h(y) = y - 1 - d e^{-y} = 0; h is increasing on y > 0
    def h(y):
        return y - 1.0 - d * math.exp(-y)

    def dh(y):
        return 1.0 + d * math.exp(-y)

    hi = 1.0 + d if d < 1.0 else 1.0 + math.log1p(d)
    hi = max(hi, 1.0)
    y = bisect_newton(h, dh, 0.0, hi)
    if y <= 0.0:
        raise PhysicalSingularity(f"implied r = {y * r_s!r} <= 0")
    return y * r_s


def kruskal_radius_derivatives(r_s: float, T: float, R: float, r: float) -> tuple[float, float]:
    """(dr/dT, dr/dR) at a Kruskal event with areal radius r."""
    F = F_kruskal(r_s, r)
    return -T * F / (2.0 * r_s), R * F / (2.0 * r_s)


def radius(r_s: float, x: SpacetimePoint) -> float:
    """Areal radius r of an event in any chart."""
    if x.chart is ChartId.KRUSKAL:
        return r_from_kruskal(r_s, x.coords[0], x.coords[1])
    return x.coords[1]


# --------------------------------------------------------------------------
# metric

def _metric_diag_and_derivs(chart: ChartId, r_s: float, x: SpacetimePoint):
    """Diagonal metric entries and dg[alpha, beta] = d_alpha g_{beta beta}."""
    _check_chart(chart, x)
    theta = x.theta
    s, c = math.sin(theta), math.cos(theta)
    dg = np.zeros((4, 4))
    if chart is ChartId.KRUSKAL:
        if r_s <= 0.0:
            raise DomainError("Kruskal chart needs r_s > 0")
        T, R = x.coords[0], x.coords[1]
        r = r_from_kruskal(r_s, T, R)
        F = F_kruskal(r_s, r)
        dF = -F * (1.0 / r + 1.0 / r_s)
        r_T, r_R = kruskal_radius_derivatives(r_s, T, R, r)
        diag = np.array([-F, F, r * r, r * r * s * s])
        for alpha, r_a in ((0, r_T), (1, r_R)):
            dg[alpha, 0] = -dF * r_a
            dg[alpha, 1] = dF * r_a
            dg[alpha, 2] = 2.0 * r * r_a
            dg[alpha, 3] = 2.0 * r * r_a * s * s
        dg[2, 3] = 2.0 * r * r * s * c
        return diag, dg

    if chart is ChartId.MINKOWSKI:
        r_s = 0.0
    r = x.coords[1]
    _check_static(r_s, r)
    f = f_static(r_s, r)
    df = r_s / (r * r)
    diag = np.array([-f, 1.0 / f, r * r, r * r * s * s])
    dg[1, 0] = -df
    dg[1, 1] = -df / (f * f)
    dg[1, 2] = 2.0 * r
    dg[1, 3] = 2.0 * r * s * s
    dg[2, 3] = 2.0 * r * r * s * c
    return diag, dg


def metric_at(chart: ChartId, r_s: float, x: SpacetimePoint) -> MetricTensor:
    diag, _ = _metric_diag_and_derivs(chart, r_s, x)
    return MetricTensor(g=np.diag(diag), g_inv=np.diag(1.0 / diag))


# --------------------------------------------------------------------------
# Christoffel symbols

def _christoffel_diagonal(diag: np.ndarray, dg: np.ndarray) -> np.ndarray:
    # Gamma^l_{mn} = 1/2 g^{ll} (delta_{ln} d_m g_ll + delta_{lm} d_n g_ll - delta_{mn} d_l g_mm)
    ginv = 1.0 / diag
    eye = np.eye(4)
    gam = (np.einsum("ln,ml->lmn", eye, dg)
           + np.einsum("lm,nl->lmn", eye, dg)
           - np.einsum("mn,lm->lmn", eye, dg))
    return 0.5 * ginv[:, None, None] * gam


def christoffel_at(chart: ChartId, r_s: float, x: SpacetimePoint) -> np.ndarray:
    """Closed-form Gamma^lam_{mu nu} from analytic metric derivatives."""
    diag, dg = _metric_diag_and_derivs(chart, r_s, x)
    return _christoffel_diagonal(diag, dg)


def fd_step(coord: float, r_s: float) -> float:
    return 1e-6 * max(abs(coord), r_s, 1.0 if r_s == 0.0 else 0.0)


def _shifted(x: SpacetimePoint, index: int, delta: float) -> SpacetimePoint:
    c = list(x.coords)
    c[index] += delta
    return SpacetimePoint(x.chart, tuple(c))


def _fd_partials(func, r_s: float, x: SpacetimePoint) -> np.ndarray:
    """Five-point central differences d_alpha func(x) stacked along a new leading axis.

    The fourth-order stencil keeps the truncation error negligible a percent
    away from the horizon, where the metric varies on the scale r - r_s.
    """
    out = []
    for alpha in range(4):
        h = fd_step(x.coords[alpha], r_s)
        f1 = np.asarray(func(_shifted(x, alpha, h))) - np.asarray(func(_shifted(x, alpha, -h)))
        f2 = np.asarray(func(_shifted(x, alpha, 2 * h))) - np.asarray(func(_shifted(x, alpha, -2 * h)))
        out.append((8.0 * f1 - f2) / (12.0 * h))
    return np.stack(out)


def christoffel_fd(chart: ChartId, r_s: float, x: SpacetimePoint) -> np.ndarray:
    """Gamma^lam_{mu nu} from central differences of ``metric_at``."""
    g_inv = metric_at(chart, r_s, x).g_inv
    dg = _fd_partials(lambda y: metric_at(chart, r_s, y).g, r_s, x)  # dg[a, s, n] = d_a g_sn
    bracket = (np.einsum("msn->smn", dg) + np.einsum("nsm->smn", dg) - dg)
    return 0.5 * np.einsum("ls,smn->lmn", g_inv, bracket)


# --------------------------------------------------------------------------
# vierbeins

def static_vierbein(r_s: float, x: SpacetimePoint) -> Vierbein:
    """The static frame: axes 0..3 along t, r, theta, phi."""
    if x.chart is ChartId.KRUSKAL:
        raise DomainError("static vierbein needs a Minkowski or static-chart point")
    if x.chart is ChartId.MINKOWSKI:
        r_s = 0.0
    r = x.coords[1]
    _check_static(r_s, r)
    sf = math.sqrt(f_static(r_s, r))
    s = math.sin(x.theta)
    e = np.diag([1.0 / sf, sf, 1.0 / r, 1.0 / (r * s)])
    e_inv = np.diag([sf, 1.0 / sf, r, r * s])
    return Vierbein(e=e, e_inv=e_inv, point=x)


def kruskal_vierbein(r_s: float, x: SpacetimePoint) -> Vierbein:
    """The Kruskal frame, regular across r = r_s."""
    _check_chart(ChartId.KRUSKAL, x)
    r = r_from_kruskal(r_s, x.coords[0], x.coords[1])
    sF = math.sqrt(F_kruskal(r_s, r))
    s = math.sin(x.theta)
    e = np.diag([1.0 / sF, 1.0 / sF, 1.0 / r, 1.0 / (r * s)])
    e_inv = np.diag([sF, sF, r, r * s])
    return Vierbein(e=e, e_inv=e_inv, point=x)


def vierbein_at(chart: ChartId, r_s: float, x: SpacetimePoint) -> Vierbein:
    _check_chart(chart, x)
    if chart is ChartId.KRUSKAL:
        return kruskal_vierbein(r_s, x)
    return static_vierbein(r_s, x)


def _vierbein_derivs(chart: ChartId, r_s: float, x: SpacetimePoint) -> np.ndarray:
    """de[alpha, a, mu] = d_alpha e_a^mu for the package's two frame choices."""
    de = np.zeros((4, 4, 4))
    theta = x.theta
    s, c = math.sin(theta), math.cos(theta)
    if chart is ChartId.KRUSKAL:
        T, R = x.coords[0], x.coords[1]
        r = r_from_kruskal(r_s, T, R)
        F = F_kruskal(r_s, r)
        dF = -F * (1.0 / r + 1.0 / r_s)
        for alpha, r_a in zip((0, 1), kruskal_radius_derivatives(r_s, T, R, r)):
            d_inv_sqrt_F = -0.5 * F ** -1.5 * dF * r_a
            de[alpha, 0, 0] = d_inv_sqrt_F
            de[alpha, 1, 1] = d_inv_sqrt_F
            de[alpha, 2, 2] = -r_a / (r * r)
            de[alpha, 3, 3] = -r_a / (r * r * s)
        de[2, 3, 3] = -c / (r * s * s)
        return de

    if chart is ChartId.MINKOWSKI:
        r_s = 0.0
    r = x.coords[1]
    f = f_static(r_s, r)
    df = r_s / (r * r)
    de[1, 0, 0] = -0.5 * f ** -1.5 * df
    de[1, 1, 1] = 0.5 * f ** -0.5 * df
    de[1, 2, 2] = -1.0 / (r * r)
    de[1, 3, 3] = -1.0 / (r * r * s)
    de[2, 3, 3] = -c / (r * s * s)
    return de


def spin_connection(chart: ChartId, r_s: float, x: SpacetimePoint,
                    method: str = "analytic") -> ConnectionOneForm:
    """omega_mu^a_b = e^a_nu (d_mu e_b^nu + Gamma^nu_{mu rho} e_b^rho).

    ``method="analytic"`` uses closed-form derivatives of the frame and metric;
    ``method="finite_difference"`` differentiates ``vierbein_at`` and
    ``metric_at`` numerically and serves as an independent check.
    """
    vb = vierbein_at(chart, r_s, x)
    if method == "analytic":
        de = _vierbein_derivs(chart, r_s, x)
        gamma = christoffel_at(chart, r_s, x)
    elif method == "finite_difference":
        de = _fd_partials(lambda y: vierbein_at(chart, r_s, y).e, r_s, x)
        gamma = christoffel_fd(chart, r_s, x)
    else:
        raise ValueError(f"unknown method {method!r}")
    nabla_e = de + np.einsum("nmr,br->mbn", gamma, vb.e)  # [mu, b, nu]
    omega = np.einsum("an,mbn->mab", vb.e_inv, nabla_e)
    return ConnectionOneForm(omega=omega, point=x)


# --------------------------------------------------------------------------
# static <-> Kruskal frames

def kruskal_to_static_jacobian(r_s: float, T: float, R: float) -> np.ndarray:
    """J[mu, nu] = d x_static^mu / d X_kruskal^nu in the exterior region."""
    r = r_from_kruskal(r_s, T, R)
    r_T, r_R = kruskal_radius_derivatives(r_s, T, R, r)
    D = R * R - T * T
    if D <= 0.0:
        raise HorizonSingularity("static time is undefined on or inside the horizon")
    J = np.eye(4)
    J[0, 0] = 2.0 * r_s * R / D
    J[0, 1] = -2.0 * r_s * T / D
    J[1, 0] = r_T
    J[1, 1] = r_R
    return J


def static_point_from_kruskal(r_s: float, x: SpacetimePoint) -> SpacetimePoint:
    _check_chart(ChartId.KRUSKAL, x)
    T, R = x.coords[0], x.coords[1]
    r = r_from_kruskal(r_s, T, R)
    if R * R - T * T <= 0.0 or R <= 0.0:
        raise HorizonSingularity("no static counterpart on or inside the horizon")
    t = 2.0 * r_s * math.atanh(T / R)
    return SpacetimePoint(ChartId.SCHWARZSCHILD_STATIC, (t, r, x.theta, x.phi))


def boost_between_frames(r_s: float, x: SpacetimePoint) -> np.ndarray:
    """Lambda[a, b] = Lambda~_a^b with e~_a^mu = Lambda~_a^b e_b^mu (both in static coordinates).

    ``x`` may be given in either the static or the Kruskal chart.
    """
    if x.chart is ChartId.KRUSKAL:
        T, R = x.coords[0], x.coords[1]
        r = r_from_kruskal(r_s, T, R)
    else:
        _check_chart(ChartId.SCHWARZSCHILD_STATIC, x)
        r = x.coords[1]
        _check_static(r_s, r)
        T, R = kruskal_from_static(r_s, x.coords[0], r)
    if r <= r_s * (1.0 + HORIZON_GUARD):
        raise HorizonSingularity("sqrt(F/f) diverges at the horizon")
    k = math.sqrt(F_kruskal(r_s, r) / f_static(r_s, r)) / (2.0 * r_s)
    lam = np.eye(4)
    lam[0, 0] = lam[1, 1] = k * R
    lam[0, 1] = lam[1, 0] = -k * T
    return lam
