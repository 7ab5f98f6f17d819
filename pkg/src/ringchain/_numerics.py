"""Low-level numeric helpers shared across the package.

Everything here is vectorized over numpy arrays and safe for scalars.
"""

from __future__ import annotations

import numpy as np

__all__ = ["sinpi", "cospi", "coth", "xcothx", "brentq_strict"]


def sinpi(x):
    """sin(pi*x) with exact zeros at integer x.

    Computed as (-1)^n * sin(pi*(x-n)) with n = round(x), so the argument
    reduction never loses the integer zeros to rounding of pi*x.
    """
    x = np.asarray(x, dtype=float)
    n = np.round(x)
    r = x - n
    s = np.sin(np.pi * r)
    out = np.where(np.mod(n, 2.0) == 0.0, s, -s)
    return out if out.ndim else float(out)


def cospi(x):
    """cos(pi*x) with exact +-1 at integer x (same reduction as sinpi)."""
    x = np.asarray(x, dtype=float)
    n = np.round(x)
    r = x - n
    c = np.cos(np.pi * r)
    out = np.where(np.mod(n, 2.0) == 0.0, c, -c)
    return out if out.ndim else float(out)


def coth(x):
    """Hyperbolic cotangent."""
    return 1.0 / np.tanh(x)


def xcothx(x):
    """x*coth(x), continuous through x = 0 where the limit is 1."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    # series: x*coth(x) = 1 + x^2/3 - x^4/45 + ...
    xs = np.where(small, x, 1.0)
    series = 1.0 + xs * xs / 3.0 - xs**4 / 45.0
    safe = np.where(small, 1.0, x)
    direct = safe / np.tanh(safe)
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def brentq_strict(f, a, b):
    """Brent root refinement at machine precision; thin scipy wrapper."""
    from scipy.optimize import brentq

    return brentq(f, a, b, xtol=1e-13, rtol=8.9e-16, maxiter=200)
