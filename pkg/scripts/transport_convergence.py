"""Convergence of the ordered product of per-step Wigner rotations.

Compares the first-order factors I + vartheta h and the exact exponentials
against the closed-form angle, and checks the momentum-space oracle.
"""

import argparse
import math

import numpy as np

from curvedspin import transport as tr


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rs-over-r", type=float, default=1 / 3)
    ap.add_argument("--v", type=float, default=0.7)
    ap.add_argument("--phi", type=float, default=1.0)
    args = ap.parse_args()

    x = args.rs_over_r
    orbit = tr.CircularOrbit(1.0 if x else 0.0, 1.0 / x if x else 1.0, math.atanh(args.v))
    tau = orbit.proper_time_for_angle(args.phi)
    closed = tr.closed_form_circular(orbit.r_s, orbit.r, orbit.xi, args.phi)
    print(f"closed form Theta = {closed:.12f}")

    ns = 2 ** np.arange(6, 15)
    errs = []
    print(f"{'steps':>7} {'first-order err':>16} {'exact err':>11} {'oracle |dW|':>12}")
    for n in ns:
        first = tr.transport_wigner(orbit, 0.0, tau, int(n), exact=False)
        exact = tr.transport_wigner(orbit, 0.0, tau, int(n))
        W = tr.wigner_via_lorentz(orbit, 0.0, tau, int(n))
        errs.append(abs(first.angle - closed))
        print(f"{n:7d} {errs[-1]:16.3e} {abs(exact.angle - closed):11.3e} {np.max(np.abs(W - exact.W)):12.3e}")
    order = -np.polyfit(np.log(ns), np.log(errs), 1)[0]
    print(f"observed order of the first-order product: {order:.3f}")


if __name__ == "__main__":
    main()
