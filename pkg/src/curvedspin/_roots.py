"""Bracketed bisection followed by a Newton polish.

All target functions used in this package are monotone on their bracket, so
bisection always converges; Newton only sharpens the last digits and falls
back to the bracket whenever a step would leave it.
"""

import math

from .errors import NoRoot


def bisect_newton(f, fprime, lo, hi, bisect_rtol=1e-10, newton_rtol=1e-12,
                  max_bisect=400, max_newton=50):
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise NoRoot(f"no sign change on [{lo!r}, {hi!r}]: f = ({flo!r}, {fhi!r})")

    for _ in range(max_bisect):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if math.copysign(1.0, fmid) == math.copysign(1.0, flo):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
        if hi - lo <= bisect_rtol * max(abs(lo), abs(hi)):
            break

    x = 0.5 * (lo + hi)
    for _ in range(max_newton):
        fx = f(x)
        if fx == 0.0:
            return x
        d = fprime(x)
        if d == 0.0 or not math.isfinite(d):
            break
        step = fx / d
        x_new = x - step
        if not (lo <= x_new <= hi):
            # keep the bracket authoritative
            x_new = 0.5 * (lo + hi)
        if math.copysign(1.0, f(x_new)) == math.copysign(1.0, flo):
            lo = max(lo, x_new)
        else:
            hi = min(hi, x_new)
        converged = abs(x_new - x) <= newton_rtol * abs(x_new)
        x = x_new
        if converged:
            break
    return x
