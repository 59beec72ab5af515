"""CHSH values seen by static observers as the orbit radius shrinks.

For each r_s/r the unprimed, primed and compensated axis sets are evaluated
on the evolved pair state, alongside the position-uncertainty bounds.
"""

import argparse

import numpy as np

from curvedspin import analysis as an
from curvedspin import correlation as corr


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--v", type=float, default=0.6)
    ap.add_argument("--phi", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=12)
    args = ap.parse_args()

    print(f"{'rs/r':>7} {'Delta':>9} {'unprimed':>9} {'primed':>8} {'optimal':>8} {'dPhi EPR':>9} "
          f"{'dPhi Bell':>9}")
    for x in np.linspace(0.0, 0.98, args.points):
        cfg = an.ScenarioConfig.from_ratio(float(x), args.phi, v_over_c=args.v)
        theta = an.theta_angle(cfg)
        psi = corr.evolve_pair(corr.singlet(), *corr.pair_rotations(theta))
        vals = [corr.chsh(psi, *corr.standard_chsh_axes(kind, a))
                for kind, a in (("unprimed", 0.0), ("primed", cfg.phi), ("optimal", theta))]
        epr, bell = an.epr_position_bound(cfg), an.bell_position_bound(cfg, "exact")
        print(f"{x:7.3f} {an.delta_angle(cfg):9.4f} {vals[0]:9.4f} {vals[1]:8.4f} {vals[2]:8.4f} "
              f"{epr:9.4g} {bell:9.4g}")
    print(f"Tsirelson bound {corr.TSIRELSON:.6f}; local-realist bound 2")


if __name__ == "__main__":
    main()
