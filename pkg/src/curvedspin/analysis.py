"""Scenario-level quantities for the EPR setup around a Schwarzschild black hole.

An EPR source at azimuth 0 and two static observers at +-Phi share the
equatorial circle of radius r; the particles orbit with rapidity xi. Most of
the physics reduces to the ratio Theta/Phi = cosh(xi) g(x) with x = r_s/r and

    g(x) = [1 - x / (2 (1 - x))] sqrt(1 - x) = (2 - 3x) / (2 sqrt(1 - x)),

which vanishes at r = 3 r_s / 2 and diverges to -inf at the horizon. All
angles are unwrapped reals.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict

import numpy as np

from . import geometry as geo
from ._roots import bisect_newton
from .errors import DomainError, HorizonSingularity, NoRoot, NotConstraining
from .geometry import ChartId, SpacetimePoint

EPR_BOUND_CONSTANT = math.pi
BELL_BOUND_NOMINAL = math.sqrt(2.0)
# 2 sqrt(2) cos^2(dTheta) = 2  <=>  dTheta = arccos(2^-1/4)
BELL_BOUND_EXACT = math.acos(2.0 ** -0.25)

# r_c / r_b searches stop this close to the horizon
SEARCH_FLOOR = 1e-9


@dataclass(frozen=True)
class ScenarioConfig:
    """Geometry of the gedankenexperiment; lengths in any unit shared by r_s and r."""

    r_s: float
    r: float
    xi: float
    phi: float
    dphi: float = 0.0
    chart: str = "static"

    def __post_init__(self):
        if not self.phi > 0.0:
            raise DomainError(f"Phi = {self.phi!r} must be positive")
        if not self.dphi >= 0.0:
            raise DomainError(f"dPhi = {self.dphi!r} must be non-negative")
        if self.chart != "static":
            raise DomainError("scenario quantities are defined for the static chart")
        geo._check_static(self.r_s, self.r)

    @classmethod
    def from_ratio(cls, rs_over_r: float, phi: float, v_over_c: float | None = None,
                   xi: float | None = None, dphi: float = 0.0) -> "ScenarioConfig":
        """Build a config with r = 1 (or r_s = 1) from the dimensionless r_s/r."""
        if (v_over_c is None) == (xi is None):
            raise DomainError("give exactly one of v/c and xi")
        if xi is None:
            if not -1.0 < v_over_c < 1.0:
                raise DomainError(f"|v/c| = {abs(v_over_c)!r} must be below 1")
            xi = math.atanh(v_over_c)
        if not 0.0 <= rs_over_r:
            raise DomainError(f"r_s/r = {rs_over_r!r} must be non-negative")
        if rs_over_r == 0.0:
            return cls(r_s=0.0, r=1.0, xi=xi, phi=phi, dphi=dphi)
        return cls(r_s=1.0, r=1.0 / rs_over_r, xi=xi, phi=phi, dphi=dphi)

    @property
    def rs_over_r(self) -> float:
        return self.r_s / self.r

    @property
    def v_over_c(self) -> float:
        return math.tanh(self.xi)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rs_over_r"] = self.rs_over_r
        d["v_over_c"] = self.v_over_c
        return d


# --------------------------------------------------------------------------
# the g(x) factor and its numerically careful variants

def _check_x(x: float) -> None:
    if x < 0.0:
        raise DomainError(f"r_s/r = {x!r} must be non-negative")
    if x >= 1.0 / (1.0 + geo.HORIZON_GUARD):
        raise HorizonSingularity(f"r_s/r = {x!r} is on or inside the horizon")


def g_factor(x: float) -> float:
    _check_x(x)
    return (2.0 - 3.0 * x) / (2.0 * math.sqrt(1.0 - x))


def g_minus_one(x: float) -> float:
    """g(x) - 1 without cancellation for small x."""
    _check_x(x)
    sf = math.sqrt(1.0 - x)
    return -x / (1.0 + sf) - x / (2.0 * sf)


def _g_of_eps(eps: float) -> float:
    """g as a function of eps = r/r_s - 1, accurate right next to the horizon."""
    return (2.0 * eps - 1.0) / (2.0 * math.sqrt(eps * (1.0 + eps)))


def _dg_deps(eps: float) -> float:
    s = eps * (1.0 + eps)
    return (4.0 * eps + 1.0) / (4.0 * s ** 1.5)


def theta_over_phi(x: float, xi: float) -> float:
    return math.cosh(xi) * g_factor(x)


def delta_over_phi(x: float, xi: float) -> float:
    """Delta/Phi = cosh(xi) g - 1 = (cosh(xi) - 1) g + (g - 1)."""
    ch_m1 = 2.0 * math.sinh(0.5 * xi) ** 2
    return ch_m1 * g_factor(x) + g_minus_one(x)


# --------------------------------------------------------------------------
# angles

def theta_angle(cfg: ScenarioConfig) -> float:
    return cfg.phi * theta_over_phi(cfg.rs_over_r, cfg.xi)


def delta_angle(cfg: ScenarioConfig) -> float:
    return cfg.phi * delta_over_phi(cfg.rs_over_r, cfg.xi)


def nonrelativistic_delta(cfg: ScenarioConfig) -> float:
    """Phi (v^2/2 - r_s/r): acceleration term minus gravity term."""
    return cfg.phi * nonrelativistic_terms(cfg.v_over_c, cfg.rs_over_r).sum()


def nonrelativistic_terms(v_over_c: float, rs_over_r: float) -> np.ndarray:
    """(acceleration term, gravity term) of the small-v, weak-field expansion of Delta/Phi."""
    return np.array([0.5 * v_over_c ** 2, -rs_over_r])


def static_precession_rate(r_s: float, r: float, xi: float, direction: int = 1) -> float:
    """vartheta^1_3 per unit proper time for the circular orbit in the static frame."""
    geo._check_static(r_s, r)
    return direction * math.cosh(xi) * math.sinh(xi) / r * g_factor(r_s / r)


def static_precession_rate_eps(r_s: float, eps: float, xi: float, direction: int = 1) -> float:
    """Same as ``static_precession_rate`` at r = r_s (1 + eps), without forming r - r_s."""
    if eps <= geo.HORIZON_GUARD:
        raise HorizonSingularity("static chart breaks down at the horizon")
    r = r_s * (1.0 + eps)
    return direction * math.cosh(xi) * math.sinh(xi) / r * _g_of_eps(eps)


def kruskal_precession_rate(r_s: float, x: SpacetimePoint, xi: float, direction: int = 1) -> float:
    """vartheta~^1_3 = +-(cosh sinh / r) [3 + r/r_s] sqrt(F) R / (4 r_s) for the infalling frame."""
    if x.chart is not ChartId.KRUSKAL:
        raise DomainError("kruskal_precession_rate needs a Kruskal-chart point")
    T, R = x.coords[0], x.coords[1]
    r = geo.r_from_kruskal(r_s, T, R)
    F = geo.F_kruskal(r_s, r)
    return (direction * math.cosh(xi) * math.sinh(xi) / r
            * (3.0 + r / r_s) * math.sqrt(F) * R / (4.0 * r_s))


def kruskal_point_at_radius(r_s: float, r: float, R: float) -> SpacetimePoint:
    """The event with areal radius r on the slice of fixed Kruskal R (T >= 0)."""
    T2 = R * R - geo.kruskal_invariant(r_s, r)
    if T2 < 0.0:
        raise DomainError(f"the slice R = {R!r} never reaches r = {r!r}")
    return SpacetimePoint(ChartId.KRUSKAL, (math.sqrt(T2), R, math.pi / 2, 0.0))


def kruskal_point_near_horizon(r_s: float, eps: float, R: float) -> SpacetimePoint:
    """Like ``kruskal_point_at_radius`` for r = r_s (1 + eps), keeping precision at tiny eps."""
    # R^2 - T^2 = 4 r_s^2 eps e^{1 + eps}
    d = 4.0 * r_s * r_s * eps * math.exp(1.0 + eps)
    T2 = R * R - d
    if T2 < 0.0:
        raise DomainError(f"the slice R = {R!r} never reaches eps = {eps!r}")
    return SpacetimePoint(ChartId.KRUSKAL, (math.sqrt(T2), R, math.pi / 2, 0.0))


# --------------------------------------------------------------------------
# critical radii

def solve_r0(r_s: float, v_over_c: float) -> float:
    """Radius where Delta vanishes for particle speed v; inf for v = 0.

    Solves g(r_s/r0) = sqrt(1 - v^2) on r0 > 3 r_s / 2.
    """
    if r_s <= 0.0:
        raise DomainError("r0 exists only for r_s > 0")
    if not 0.0 <= v_over_c < 1.0:
        raise DomainError(f"v/c = {v_over_c!r} must lie in [0, 1)")
    if v_over_c == 0.0:
        return math.inf
    xi = math.atanh(v_over_c)
    target_m1 = -2.0 * math.sinh(0.5 * xi) ** 2 / math.cosh(xi)  # 1/cosh(xi) - 1

    def h(x):
        return g_minus_one(x) - target_m1

    def dh(x):
        return (3.0 * x - 4.0) / (4.0 * (1.0 - x) ** 1.5)

    x0 = bisect_newton(h, dh, 0.0, 2.0 / 3.0)
    return r_s / x0


@dataclass(frozen=True)
class CriticalRadius:
    r: float
    eps: float          # r / r_s - 1
    bound: float        # the bound evaluated at r
    residual: float     # |bound - dphi| / dphi


def _solve_bound_radius(r_s: float, xi: float, dphi: float, constant: float) -> CriticalRadius:
    if r_s <= 0.0:
        raise DomainError("critical radii need r_s > 0")
    if not dphi > 0.0:
        raise DomainError(f"dPhi = {dphi!r} must be positive")
    ch = math.cosh(xi)

    def bound(eps):
        return constant / (ch * abs(_g_of_eps(eps)))

    # inner branch r_s < r < 3 r_s/2: the bound rises from 0 to inf with r; solve in u = ln(eps)
    def h(u):
        return -ch * _g_of_eps(math.exp(u)) * dphi - constant

    def dh(u):
        eps = math.exp(u)
        return -ch * dphi * _dg_deps(eps) * eps

    lo, hi = math.log(SEARCH_FLOOR), math.log(0.5)
    if h(lo) <= 0.0:
        raise NotConstraining(
            f"dPhi = {dphi!r} stays below the bound down to r = r_s (1 + {SEARCH_FLOOR:g})")
    u = bisect_newton(h, dh, lo, hi)
    eps = math.exp(u)
    b = bound(eps)
    return CriticalRadius(r=r_s * (1.0 + eps), eps=eps, bound=b, residual=abs(b - dphi) / dphi)


def solve_rc(r_s: float, xi: float, dphi: float) -> CriticalRadius:
    """Radius below which static observers cannot extract the EPR correlation."""
    return _solve_bound_radius(r_s, xi, dphi, EPR_BOUND_CONSTANT)


def solve_rb(r_s: float, xi: float, dphi: float, mode: str = "nominal") -> CriticalRadius:
    """Radius below which static observers cannot verify Bell violation."""
    return _solve_bound_radius(r_s, xi, dphi, _bell_constant(mode))


# --------------------------------------------------------------------------
# position-uncertainty bounds

def _bell_constant(mode: str) -> float:
    if mode == "nominal":
        return BELL_BOUND_NOMINAL
    if mode == "exact":
        return BELL_BOUND_EXACT
    raise ValueError(f"unknown Bell-bound mode {mode!r}")


def theta_error(dphi: float, cfg: ScenarioConfig) -> float:
    """dTheta = dPhi |1 + Delta/Phi| = dPhi |Theta/Phi|."""
    if dphi < 0.0:
        raise DomainError("dPhi must be non-negative")
    return dphi * abs(theta_over_phi(cfg.rs_over_r, cfg.xi))


def _bound(cfg: ScenarioConfig, constant: float) -> float:
    rho = abs(theta_over_phi(cfg.rs_over_r, cfg.xi))
    return math.inf if rho == 0.0 else constant / rho


def epr_position_bound(cfg: ScenarioConfig) -> float:
    """Largest dPhi that keeps dTheta below pi."""
    return _bound(cfg, EPR_BOUND_CONSTANT)


def bell_position_bound(cfg: ScenarioConfig, mode: str = "nominal") -> float:
    """Largest dPhi compatible with Bell verification.

    ``mode="nominal"`` uses the constant sqrt(2); ``mode="exact"`` solves
    2 sqrt(2) cos^2(dTheta) = 2, giving arccos(2^-1/4) ~ 0.5719.
    """
    return _bound(cfg, _bell_constant(mode))


# --------------------------------------------------------------------------
# Delta surface

@dataclass(frozen=True)
class DeltaSurface:
    rs_over_r: np.ndarray
    v_over_c: np.ndarray
    delta_over_phi: np.ndarray   # shape (len(rs_over_r), len(v_over_c))
    rs_over_r0: np.ndarray       # r_s/r0 for each v (0 where v = 0)

    def rows(self):
        """Row-major (rs_over_r outer, v_over_c inner) records."""
        for i, x in enumerate(self.rs_over_r):
            for j, v in enumerate(self.v_over_c):
                yield float(x), float(v), float(self.delta_over_phi[i, j])


def _surface_row(x: float, xis: list[float]) -> list[float]:
    return [delta_over_phi(x, xi) for xi in xis]


def delta_surface(rs_over_r, v_over_c, threads: int = 1) -> DeltaSurface:
    """Tabulate Delta/Phi on a grid; per-cell values do not depend on ``threads``."""
    xs = [float(x) for x in rs_over_r]
    vs = [float(v) for v in v_over_c]
    for v in vs:
        if not 0.0 <= v < 1.0:
            raise DomainError(f"v/c = {v!r} outside [0, 1)")
    for x in xs:
        _check_x(x)
    xis = [math.atanh(v) for v in vs]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda x: _surface_row(x, xis), xs))
    else:
        rows = [_surface_row(x, xis) for x in xs]
    x0 = [0.0 if v == 0.0 else 1.0 / solve_r0(1.0, v) for v in vs]
    return DeltaSurface(rs_over_r=np.array(xs), v_over_c=np.array(vs),
                        delta_over_phi=np.array(rows, dtype=float).reshape(len(xs), len(vs)),
                        rs_over_r0=np.array(x0))
