"""Small numeric helpers shared by detectors, sweeps and the CLI."""

from __future__ import annotations

from .linalg import ValidationError


def bisect_crossing(fn, lo: float, hi: float, tol: float = 1e-8) -> float:
    """Root of a monotone sign change of ``fn`` on [lo, hi] by bisection.

    The endpoints must bracket a sign change; raises otherwise.
    """
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise ValidationError(f"no sign change on [{lo}, {hi}] (f: {f_lo:.3e}, {f_hi:.3e})")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
