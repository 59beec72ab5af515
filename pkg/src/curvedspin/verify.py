"""Invariant suites run by ``curvedspin verify``.

Each suite samples its invariants (seeded where random), records the largest
residual, and passes iff that residual stays within the suite tolerance.
A single ``tol`` override replaces every suite tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import analysis as an
from . import correlation as corr
from . import geometry as geo
from . import kinematics as kin
from . import transport as tr
from .geometry import ETA, ChartId, SpacetimePoint

GRID = (1.01, 1.5, 2.0, 5.0, 50.0)


@dataclass
class SuiteResult:
    name: str
    tol: float
    residuals: dict = field(default_factory=dict)
    failed_checks: list = field(default_factory=list)

    def record(self, key: str, value: float) -> None:
        self.residuals[key] = max(self.residuals.get(key, 0.0), float(value))

    def check(self, key: str, ok: bool) -> None:
        if not ok and key not in self.failed_checks:
            self.failed_checks.append(key)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def worst(self) -> str:
        return max(self.residuals, key=self.residuals.get) if self.residuals else ""

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol and not self.failed_checks


def _grid_points(r_s: float, seed_rng):
    """(chart, point) pairs for the sample grid in all three charts."""
    for ratio in GRID:
        r = ratio * r_s
        yield ChartId.MINKOWSKI, SpacetimePoint(ChartId.MINKOWSKI, (0.0, r, math.pi / 2, 0.0))
        yield ChartId.SCHWARZSCHILD_STATIC, SpacetimePoint(
            ChartId.SCHWARZSCHILD_STATIC, (0.0, r, math.pi / 2, 0.0))
        if ratio < 20.0:  # e^{r/r_s} overflows the T, R scale far out; covered by static chart
            t = float(seed_rng.uniform(-1.0, 1.0)) * r_s
            T, R = geo.kruskal_from_static(r_s, t, r)
            yield ChartId.KRUSKAL, SpacetimePoint(ChartId.KRUSKAL, (T, R, math.pi / 2, 0.0))


def suite_geometry(seed: int, tol: float | None = None) -> SuiteResult:
    res = SuiteResult("geometry", tol if tol is not None else 1e-12)
    rng = np.random.default_rng(seed)
    r_s = 1.0
    for chart, x in _grid_points(r_s, rng):
        m = geo.metric_at(chart, r_s, x)
        vb = geo.vierbein_at(chart, r_s, x)
        res.record("metric_inverse", np.max(np.abs(m.g @ m.g_inv - np.eye(4))))
        res.record("vierbein_metric", np.max(np.abs(vb.e @ m.g @ vb.e.T - ETA)))
        res.record("vierbein_inverse_coord", np.max(np.abs(vb.e_inv.T @ vb.e - np.eye(4))))
        res.record("vierbein_inverse_frame", np.max(np.abs(vb.e_inv @ vb.e.T - np.eye(4))))
        low = geo.spin_connection(chart, r_s, x).lowered()
        res.record("connection_antisymmetry", np.max(np.abs(low + np.swapaxes(low, 1, 2))))
        signs = np.sign(np.linalg.eigvalsh(m.g))
        res.check("signature", list(signs) == [-1.0, 1.0, 1.0, 1.0])
    for ratio in rng.uniform(1.001, 20.0, size=20):
        T, R = geo.kruskal_from_static(r_s, float(rng.uniform(-2, 2)), ratio * r_s)
        back = geo.r_from_kruskal(r_s, T, R)
        res.record("kruskal_roundtrip", abs(back - ratio * r_s) / (ratio * r_s))
    return res


def suite_spin_connection(seed: int, tol: float | None = None) -> SuiteResult:
    res = SuiteResult("spin_connection", tol if tol is not None else 1e-7)
    rng = np.random.default_rng(seed)
    for chart, x in _grid_points(1.0, rng):
        a = geo.spin_connection(chart, 1.0, x).omega
        b = geo.spin_connection(chart, 1.0, x, method="finite_difference").omega
        scale = max(np.max(np.abs(a)), 1e-300)
        res.record("analytic_vs_fd", np.max(np.abs(a - b)) / scale)
    return res


def suite_kinematics(seed: int, tol: float | None = None) -> SuiteResult:
    res = SuiteResult("kinematics", tol if tol is not None else 1e-10)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        r_s = float(rng.choice([0.0, 1.0]))
        r = float(rng.uniform(1.05, 10.0))
        xi = float(rng.uniform(0.0, 2.0))
        orbit = tr.CircularOrbit(r_s, r, xi) if r_s > 0 else tr.FlatCircular(r, xi)
        x = orbit.point(float(rng.uniform(0, 5)))
        chart = orbit.chart
        u = kin.circular_velocity(r_s, r, xi, point=x)
        a = kin.circular_acceleration(r_s, r, xi, point=x)
        res.record("u_norm", abs(kin.norm2(chart, r_s, u) + 1.0))
        res.record("a_dot_u", abs(kin.dot(chart, r_s, a, u)))
        g = orbit.generators(0.0)
        res.record("p_mass_shell", abs(g.momentum @ ETA @ g.momentum + orbit.mass ** 2))
        for gen in (g.chi, g.lam):
            res.record("generator_antisymmetry", kin.antisymmetry_residual(gen))
        res.record("lambda_p", np.max(np.abs(g.lam @ g.momentum)))
    for _ in range(10):
        T, R = float(rng.uniform(0.0, 2.0)), float(rng.uniform(0.3, 2.0))
        xi = float(rng.uniform(0.0, 2.0))
        x = SpacetimePoint(ChartId.KRUSKAL, (T, R, math.pi / 2, 0.0))
        u = kin.kruskal_velocity(1.0, x, xi)
        a = kin.kruskal_acceleration(1.0, x, xi)
        res.record("u_norm", abs(kin.norm2(ChartId.KRUSKAL, 1.0, u) + 1.0))
        res.record("a_dot_u", abs(kin.dot(ChartId.KRUSKAL, 1.0, a, u)))
    return res


def suite_transport(seed: int, tol: float | None = None, steps: int = 2000) -> SuiteResult:
    res = SuiteResult("transport", tol if tol is not None else 1e-8)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        r_s = 1.0
        r = r_s / float(rng.uniform(0.0, 0.9))
        xi = math.atanh(float(rng.uniform(0.05, 0.9)))
        phi = float(rng.uniform(0.1, 3.0))
        orbit = tr.CircularOrbit(r_s, r, xi)
        tau = orbit.proper_time_for_angle(phi)
        out = tr.transport_wigner(orbit, 0.0, tau, steps)
        W_oracle = tr.wigner_via_lorentz(orbit, 0.0, tau, steps)
        res.record("oracle_equivalence", np.max(np.abs(out.W - W_oracle)))
        closed = tr.closed_form_circular(r_s, r, xi, phi)
        res.record("closed_form", abs(out.angle - closed) / max(abs(closed), 1.0))
        rest = np.array([orbit.mass, 0.0, 0.0, 0.0])
        res.record("little_group", np.max(np.abs(out.W @ rest - rest)))
        lam = tr.lorentz_transport(orbit, 0.0, tau, steps)
        p = orbit.generators().momentum
        res.record("momentum_constant", np.max(np.abs(lam @ p - p)))
        res.record("su2_so3", np.max(np.abs(tr.su2_to_so3(out.U) - out.W[1:, 1:])))
    g = tr.CircularOrbit(1.0, 2.0, math.atanh(0.6)).generators()
    rates = [g.wigner[1, 3], g.lam[1, 3], g.chi[1, 3], kin.trivial_rotation(2.0, math.atanh(0.6))[1, 3]]
    diffs = [abs(a - b) for i, a in enumerate(rates) for b in rates[i + 1:]]
    res.check("four_way_non_equality", min(diffs) > 1e-12)
    return res


def suite_correlation(seed: int, tol: float | None = None) -> SuiteResult:
    res = SuiteResult("correlation", tol if tol is not None else 1e-10)
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        axes = rng.normal(size=(4, 3))
        axes /= np.linalg.norm(axes, axis=1, keepdims=True)
        res.record("tsirelson", max(0.0, abs(corr.chsh(psi, *axes)) - corr.TSIRELSON))
    s0 = corr.entanglement_entropy(corr.singlet())
    axis1 = np.array([1.0, 0.0, 0.0])
    for theta in rng.uniform(-4.0, 4.0, size=50):
        state = corr.evolve_pair(corr.singlet(), *corr.pair_rotations(theta))
        res.record("entanglement_invariance", abs(corr.entanglement_entropy(state) - s0))
        res.record("mixing_form", np.max(np.abs(state - corr.mixed_singlet(theta))))
        res.record("equal_axis_correlation",
                   abs(corr.correlation(state, axis1, axis1) + math.cos(2 * theta)))
        a = corr.rotate_axis_about_2(axis1, theta)
        b = corr.rotate_axis_about_2(axis1, -theta)
        res.record("recovery", abs(corr.correlation(state, a, b) + 1.0))
        res.record("optimal_axes",
                   abs(corr.chsh(state, *corr.standard_chsh_axes("optimal", theta)) - corr.TSIRELSON))
    return res


def suite_analysis(seed: int, tol: float | None = None, steps: int = 2000) -> SuiteResult:
    res = SuiteResult("analysis", tol if tol is not None else 1e-8)
    rng = np.random.default_rng(seed)
    for _ in range(10):
        cfg = an.ScenarioConfig.from_ratio(float(rng.uniform(0.0, 0.9)), float(rng.uniform(0.1, 3.0)),
                                           v_over_c=float(rng.uniform(0.05, 0.9)))
        orbit = tr.CircularOrbit(cfg.r_s, cfg.r, cfg.xi)
        out = tr.transport_over_angle(orbit, cfg.phi, steps)
        res.record("delta_vs_transport", abs((out.angle - cfg.phi) - an.delta_angle(cfg)))
        cfg_ratio = an.epr_position_bound(cfg) / an.bell_position_bound(cfg)
        res.record("bound_ratio", abs(cfg_ratio - math.pi / math.sqrt(2.0)))
    for v in rng.uniform(0.05, 0.95, size=10):
        r0 = an.solve_r0(1.0, float(v))
        xi = math.atanh(float(v))
        res.check("sign_outside_r0", an.delta_over_phi(1.0 / (1.5 * r0), xi) > 0.0)
        res.check("sign_inside_r0", an.delta_over_phi(1.0 / (0.9 * r0), xi) < 0.0)
        res.record("r0_residual", abs(an.delta_over_phi(1.0 / r0, xi)))
    eps = 1e-10
    xi = math.atanh(0.6)
    T, R = 0.0, 2.0 * math.sqrt(eps) * math.exp(0.5 * (1.0 + eps))
    static = an.static_precession_rate_eps(1.0, eps, xi)
    infall = an.kruskal_precession_rate(1.0, SpacetimePoint(ChartId.KRUSKAL, (T, R, math.pi / 2, 0.0)), xi)
    res.check("static_over_kruskal_gt_1e6", abs(static / infall) > 1e6)
    return res


SUITES = (suite_geometry, suite_spin_connection, suite_kinematics, suite_transport,
          suite_correlation, suite_analysis)


def run_all(seed: int = 0, tol: float | None = None) -> list[SuiteResult]:
    return [suite(seed, tol) for suite in SUITES]
