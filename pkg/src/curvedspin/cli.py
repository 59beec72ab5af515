"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain or
horizon-singular configuration.
"""

from __future__ import annotations

import argparse
import datetime
import io
import json
import math
import sys

import numpy as np

from . import __version__
from . import analysis as an
from . import correlation as corr
from . import geometry as geo
from . import transport as tr
from . import verify as vf
from .errors import DomainError, HorizonSingularity, NotConstraining, PhysicalSingularity

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
INFINITE = "infinite"


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# serialization

def _clean(obj):
    """Convert numpy scalars/arrays and infinities into plain JSON values."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isinf(v):
            return INFINITE if v > 0 else "-" + INFINITE
        if math.isnan(v):
            return None
        return v
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def envelope(result: dict) -> dict:
    return {
        "result": _clean(result),
        "metadata": {
            "tool": "curvedspin",
            "version": __version__,
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        },
    }


def dumps(report: dict) -> str:
    # repr-based float output is the shortest string that round-trips the double exactly
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# shared flag handling

def _add_speed(p: argparse.ArgumentParser, default_v: float | None = 0.0) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--v", type=float, default=None, help=f"particle speed v/c (default {default_v})")
    g.add_argument("--xi", type=float, default=None, help="particle rapidity, v/c = tanh(xi)")
    p.set_defaults(_default_v=default_v)


def _xi_from(args) -> float:
    if args.xi is not None:
        if not math.isfinite(args.xi):
            raise UsageError("--xi must be finite")
        return args.xi
    v = args.v if args.v is not None else args._default_v
    if not -1.0 < v < 1.0:
        raise UsageError(f"--v {v!r}: |v/c| must be below 1")
    return math.atanh(v)


def _add_radius(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rs-over-r", type=float, default=None, help="r_s/r (dimensionless)")
    p.add_argument("--rs", type=float, default=None, help="Schwarzschild radius")
    p.add_argument("--r", type=float, default=None, help="orbit radius (same unit as --rs)")


def _radius_from(args) -> tuple[float, float]:
    if args.rs_over_r is not None:
        if args.rs is not None or args.r is not None:
            raise UsageError("--rs-over-r excludes --rs/--r")
        x = args.rs_over_r
        if not x >= 0.0:
            raise UsageError("--rs-over-r must be >= 0")
        if x >= 1.0:
            raise HorizonSingularity(f"--rs-over-r {x!r}: static observers need r > r_s")
        return (0.0, 1.0) if x == 0.0 else (1.0, 1.0 / x)
    if args.rs is None and args.r is None:
        return 0.0, 1.0
    if args.rs is None or args.r is None:
        raise UsageError("--rs and --r must be given together")
    if args.rs < 0.0 or args.r <= 0.0:
        raise UsageError("--rs must be >= 0 and --r > 0")
    if args.r <= args.rs:
        raise HorizonSingularity(f"--r {args.r!r} <= --rs {args.rs!r}: static chart breaks down")
    return args.rs, args.r


# --------------------------------------------------------------------------
# commands

def scenario_report(cfg: an.ScenarioConfig, steps: int | None = None) -> dict:
    theta = an.theta_angle(cfg)
    delta = an.delta_angle(cfg)
    evolved = corr.evolve_pair(corr.singlet(), *corr.pair_rotations(theta))
    primed = corr.to_primed_basis(evolved, cfg.phi)
    axis1 = np.array([1.0, 0.0, 0.0])

    if cfg.xi == 0.0 or steps == 0:
        transported = {"value": None, "reason": "particles at rest" if cfg.xi == 0.0 else "disabled"}
    else:
        n = steps or tr.default_steps(cfg.phi)
        out = tr.transport_over_angle(tr.CircularOrbit(cfg.r_s, cfg.r, cfg.xi), cfg.phi, n)
        transported = {"value": out.angle, "steps": n}

    def amps(psi):
        return [[float(a.real), float(a.imag)] for a in psi]

    return {
        "config": cfg.to_dict(),
        "theta": theta,
        "delta": delta,
        "theta_over_phi": an.theta_over_phi(cfg.rs_over_r, cfg.xi),
        "delta_over_phi": an.delta_over_phi(cfg.rs_over_r, cfg.xi),
        "nonrelativistic_delta": an.nonrelativistic_delta(cfg),
        "theta_transported": transported,
        "state": {
            "basis": ["uu", "ud", "du", "dd"],
            "evolved": amps(evolved),
            "primed": amps(primed),
        },
        "correlations": {
            "axis1_unprimed": corr.correlation(evolved, axis1, axis1),
            "axis1_primed": corr.correlation(primed, axis1, axis1),
            "axis1_compensated": corr.correlation(
                evolved, corr.rotate_axis_about_2(axis1, theta), corr.rotate_axis_about_2(axis1, -theta)),
        },
        "chsh": {
            "unprimed": corr.chsh(evolved, *corr.standard_chsh_axes("unprimed")),
            "primed": corr.chsh(evolved, *corr.standard_chsh_axes("primed", cfg.phi)),
            "optimal": corr.chsh(evolved, *corr.standard_chsh_axes("optimal", theta)),
            "closed_form_unprimed": corr.TSIRELSON * math.cos(theta) ** 2,
            "closed_form_primed": corr.TSIRELSON * math.cos(delta) ** 2,
        },
        "bounds": {
            "theta_error": an.theta_error(cfg.dphi, cfg),
            "epr": an.epr_position_bound(cfg),
            "bell_nominal": an.bell_position_bound(cfg, "nominal"),
            "bell_exact": an.bell_position_bound(cfg, "exact"),
        },
    }


def cmd_scenario(args) -> int:
    r_s, r = _radius_from(args)
    xi = _xi_from(args)
    if not args.phi > 0.0:
        raise UsageError("--phi must be positive")
    if not args.dphi >= 0.0:
        raise UsageError("--dphi must be non-negative")
    if args.steps is not None and args.steps < 0:
        raise UsageError("--steps must be >= 0")
    cfg = an.ScenarioConfig(r_s=r_s, r=r, xi=xi, phi=args.phi, dphi=args.dphi)
    _emit(dumps(envelope(scenario_report(cfg, args.steps))), args.out)
    return EXIT_OK


def _grid(lo: float, hi: float, n: int, name: str) -> np.ndarray:
    if n < 1:
        raise UsageError(f"--{name}-points must be >= 1")
    if not (0.0 <= lo < 1.0 and 0.0 <= hi < 1.0):
        raise UsageError(f"--{name} bounds must lie in [0, 1)")
    if lo > hi:
        raise UsageError(f"--{name}-min exceeds --{name}-max")
    return np.linspace(lo, hi, n) if n > 1 else np.array([lo])


def surface_csv(surface: an.DeltaSurface, r0_column: bool) -> str:
    buf = io.StringIO()
    header = ["rs_over_r", "v_over_c", "delta_over_phi"] + (["rs_over_r0"] if r0_column else [])
    buf.write(",".join(header) + "\n")
    for i, x in enumerate(surface.rs_over_r):
        for j, v in enumerate(surface.v_over_c):
            cells = [x, v, surface.delta_over_phi[i, j]]
            if r0_column:
                cells.append(surface.rs_over_r0[j])
            buf.write(",".join("%.17g" % float(c) for c in cells) + "\n")
    return buf.getvalue()


def cmd_delta_surface(args) -> int:
    xs = _grid(args.rs_min, args.rs_max, args.rs_points, "rs")
    vs = _grid(args.v_min, args.v_max, args.v_points, "v")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    surface = an.delta_surface(xs, vs, threads=args.threads)
    if args.format == "csv":
        text = surface_csv(surface, args.r0_column)
    else:
        text = dumps(envelope({
            "columns": ["rs_over_r", "v_over_c", "delta_over_phi"],
            "rs_over_r": surface.rs_over_r,
            "v_over_c": surface.v_over_c,
            "delta_over_phi": surface.delta_over_phi,
            "rs_over_r0": surface.rs_over_r0,
        }))
    _emit(text, args.out)
    return EXIT_OK


def _critical(solver, *a) -> dict:
    try:
        c = solver(*a)
    except NotConstraining as exc:
        return {"value": None, "reason": str(exc)}
    return {"value": c.r, "r_minus_rs": c.eps * a[0], "bound": c.bound, "bound_residual": c.residual}


def critical_radius_report(r_s: float, xi: float, dphi: float | None) -> dict:
    v = math.tanh(xi)
    out = {"input": {"rs": r_s, "xi": xi, "v_over_c": v, "dphi": dphi}}
    if v == 0.0:
        out["r0"] = {"value": math.inf, "reason": "Delta never vanishes for particles at rest"}
    else:
        r0 = an.solve_r0(r_s, abs(v))
        out["r0"] = {"value": r0, "r0_over_rs": r0 / r_s,
                     "delta_over_phi_residual": abs(an.delta_over_phi(r_s / r0, xi))}
    if dphi is None:
        reason = {"value": None, "reason": "--dphi not given"}
        out["rc"] = dict(reason)
        out["rb"] = {"nominal": dict(reason), "exact": dict(reason)}
    else:
        out["rc"] = _critical(an.solve_rc, r_s, xi, dphi)
        out["rb"] = {"nominal": _critical(an.solve_rb, r_s, xi, dphi, "nominal"),
                     "exact": _critical(an.solve_rb, r_s, xi, dphi, "exact")}
    return out


def cmd_critical_radius(args) -> int:
    xi = _xi_from(args)
    if not args.rs > 0.0:
        raise UsageError("--rs must be positive")
    if args.dphi is not None and not args.dphi > 0.0:
        raise UsageError("--dphi must be positive")
    _emit(dumps(envelope(critical_radius_report(args.rs, xi, args.dphi))), args.out)
    return EXIT_OK


def kruskal_report(r_s: float, xi: float, r_min: float, r_max: float, points: int,
                   slice_R: float | None = None) -> dict:
    radii = np.linspace(r_min, r_max, points) * r_s if points > 1 else np.array([r_min * r_s])
    if slice_R is None:
        slice_R = math.sqrt(max(geo.kruskal_invariant(r_s, float(radii.max())), r_s * r_s))
    rows = []
    for r in radii:
        r = float(r)
        x = an.kruskal_point_at_radius(r_s, r, slice_R)
        row = {"r_over_rs": r / r_s, "T": x.coords[0], "R": x.coords[1],
               "kruskal_rate": an.kruskal_precession_rate(r_s, x, xi),
               "static_rate": None, "matched_event": None}
        if r > r_s * (1.0 + geo.HORIZON_GUARD):
            row["static_rate"] = an.static_precession_rate(r_s, r, xi)
            T0, R0 = geo.kruskal_from_static(r_s, 0.0, r)
            k0 = an.kruskal_precession_rate(r_s, geo.SpacetimePoint(geo.ChartId.KRUSKAL,
                                                                    (T0, R0, math.pi / 2, 0.0)), xi)
            row["matched_event"] = {"T": T0, "R": R0, "kruskal_rate": k0,
                                    "static_over_kruskal": row["static_rate"] / k0 if k0 else None}
        rows.append(row)

    near = []
    for k in range(3, 11):
        eps = 10.0 ** -k
        static = an.static_precession_rate_eps(r_s, eps, xi)
        R0 = 2.0 * r_s * math.sqrt(eps) * math.exp(0.5 * (1.0 + eps))
        matched = an.kruskal_precession_rate(
            r_s, geo.SpacetimePoint(geo.ChartId.KRUSKAL, (0.0, R0, math.pi / 2, 0.0)), xi)
        on_slice = an.kruskal_precession_rate(r_s, an.kruskal_point_near_horizon(r_s, eps, slice_R), xi)
        near.append({"k": k, "r_over_rs": 1.0 + eps, "static_rate": static,
                     "kruskal_rate_slice": on_slice, "kruskal_rate_matched": matched,
                     "static_over_kruskal_matched": static / matched})
    return {"input": {"rs": r_s, "xi": xi, "v_over_c": math.tanh(xi), "slice_R": slice_R},
            "rows": rows, "near_horizon": near}


def cmd_kruskal(args) -> int:
    xi = _xi_from(args)
    if args.r_min <= 0.0 or args.r_max <= 0.0:
        raise UsageError("the r/r_s range must stay above the singularity r = 0")
    if args.r_min > args.r_max:
        raise UsageError("--r-min exceeds --r-max")
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    if not args.rs > 0.0:
        raise UsageError("--rs must be positive")
    if args.slice_R is not None and not args.slice_R > 0.0:
        raise UsageError("--slice-R must be positive")
    report = kruskal_report(args.rs, xi, args.r_min, args.r_max, args.points, args.slice_R)
    _emit(dumps(envelope(report)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = vf.run_all(seed=args.seed, tol=args.tol)
    failed = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name:16s} max_residual={res.max_residual:.3e} "
              f"({res.worst or '-'}) tol={res.tol:.1e}")
        if not res.passed:
            over = [k for k, v in res.residuals.items() if v > res.tol]
            failed.append((res.name, over + res.failed_checks))
    if failed:
        for name, keys in failed:
            print(f"failing invariant(s) in {name}: {', '.join(keys)}")
        return EXIT_VERIFY
    print(f"all {len(results)} suites passed (seed {args.seed})")
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvedspin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scenario", help="angles, states, correlations and bounds for one setup")
    _add_radius(p)
    _add_speed(p)
    p.add_argument("--phi", type=float, default=1.0, help="observer azimuth Phi (rad)")
    p.add_argument("--dphi", type=float, default=0.0, help="position uncertainty dPhi (rad)")
    p.add_argument("--steps", type=int, default=None,
                   help="transport steps (default 1e5 per 2 pi; 0 disables transport)")
    p.add_argument("--out")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("delta-surface", help="tabulate Delta/Phi over (r_s/r, v/c)")
    p.add_argument("--rs-min", type=float, default=0.0)
    p.add_argument("--rs-max", type=float, default=0.99)
    p.add_argument("--rs-points", type=int, default=101)
    p.add_argument("--v-min", type=float, default=0.0)
    p.add_argument("--v-max", type=float, default=0.99)
    p.add_argument("--v-points", type=int, default=101)
    p.add_argument("--r0-column", action="store_true", help="append r_s/r0 for each v")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_delta_surface)

    p = sub.add_parser("critical-radius", help="r0, r_c and r_b")
    p.add_argument("--rs", type=float, default=1.0)
    _add_speed(p, default_v=0.6)
    p.add_argument("--dphi", type=float, default=None)
    p.add_argument("--out")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_critical_radius)

    p = sub.add_parser("kruskal", help="static vs infalling precession rates")
    p.add_argument("--rs", type=float, default=1.0)
    _add_speed(p, default_v=0.6)
    p.add_argument("--r-min", type=float, default=0.5, help="smallest r/r_s")
    p.add_argument("--r-max", type=float, default=3.0, help="largest r/r_s")
    p.add_argument("--points", type=int, default=26)
    p.add_argument("--slice-R", type=float, default=None,
                   help="Kruskal R of the sampling slice (default: reaches r-max at T = 0)")
    p.add_argument("--out")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_kruskal)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None, help="override every suite tolerance")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HorizonSingularity, PhysicalSingularity, DomainError) as exc:
        print(f"{parser.prog} {args.command}: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
