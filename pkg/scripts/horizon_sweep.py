"""Static vs infalling precession rates as r approaches the horizon.

For r = r_s (1 + 10^-k) the static-frame rate grows like (r - r_s)^-1/2 while
the rate seen in the infalling frame stays finite on a fixed-R slice and
passes smoothly through r = r_s.
"""

import argparse
import math

import numpy as np

from curvedspin import analysis as an
from curvedspin.geometry import ChartId, SpacetimePoint


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--v", type=float, default=0.6)
    ap.add_argument("--R", type=float, default=2.0, help="Kruskal R of the sampling slice (units of r_s)")
    ap.add_argument("--kmax", type=int, default=11, help="largest k; the static chart is refused at eps <= 1e-12")
    args = ap.parse_args()
    xi = math.atanh(args.v)

    print(f"{'k':>3} {'static':>14} {'kruskal(slice)':>15} {'kruskal(t=0)':>14} {'static/t=0':>12} "
          f"{'slope':>7}")
    prev = None
    for k in range(1, args.kmax + 1):
        eps = 10.0 ** -k
        static = an.static_precession_rate_eps(1.0, eps, xi)
        on_slice = an.kruskal_precession_rate(1.0, an.kruskal_point_near_horizon(1.0, eps, args.R), xi)
        R0 = 2.0 * math.sqrt(eps) * math.exp(0.5 * (1.0 + eps))
        matched = an.kruskal_precession_rate(1.0, SpacetimePoint(ChartId.KRUSKAL, (0.0, R0, math.pi / 2, 0.0)), xi)
        # d log|rate| / d log(1/eps): 0.5 for an inverse square-root divergence
        slope = "" if prev is None else f"{math.log10(abs(static) / prev):7.3f}"
        prev = abs(static)
        print(f"{k:3d} {static:14.6g} {on_slice:15.8g} {matched:14.6g} {static / matched:12.4g} {slope:>7}")

    inside = [an.kruskal_precession_rate(1.0, an.kruskal_point_near_horizon(1.0, -e, args.R), xi)
              for e in np.logspace(-10, -1, 10)]
    print(f"inside the horizon on the same slice: {min(inside):.6g} .. {max(inside):.6g}")


if __name__ == "__main__":
    main()
