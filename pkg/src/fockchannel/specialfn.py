"""Stable evaluation of the special functions the closed forms need.

Laguerre and Legendre polynomials are evaluated by their three-term
recurrences rather than explicit sums; the sums cancel catastrophically for
large arguments while the recurrences are numerically benign.  The modified
Bessel function is only ever needed in the exponentially scaled form
e^{-z} I_0(z), which is what the purity integrands require to avoid overflow.
"""

import numpy as np

from . import _backend
from .errors import ValidationError

#: Largest admissible polynomial / Fock order.  Beyond this the purities of
#: interest are far below any tolerance in use and the recurrences are
#: untested, so the bound is enforced at the API boundary.
MAX_ORDER = 64


def check_order(n):
    """Validate a Fock/polynomial order, returning it as an int."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValidationError(f"order must be an integer, got {n!r}")
    if n < 0:
        raise ValidationError(f"order must be >= 0, got {n}")
    if n > MAX_ORDER:
        raise ValidationError(f"order {n} exceeds the supported cap {MAX_ORDER}")
    return int(n)


def _apply(kernel, x, *args):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("argument must be finite")
    flat = np.ascontiguousarray(arr).ravel()
    out = kernel(*args, flat) if args else kernel(flat)
    out = np.asarray(out).reshape(arr.shape)
    if arr.ndim == 0:
        return float(out)
    return out


def laguerre(n, x):
    """Laguerre polynomial L_n(x).

    Accepts a scalar or an array; the order is capped at MAX_ORDER.
    """
    n = check_order(n)
    return _apply(_backend.laguerre_values, x, n)


def legendre(n, x):
    """Legendre polynomial P_n(x), valid for any real x (not just [-1, 1])."""
    n = check_order(n)
    return _apply(_backend.legendre_values, x, n)


def bessel_i0_scaled(z):
    """Exponentially scaled modified Bessel function e^{-z} I_0(z) for z >= 0.

    Bounded in (0, 1] and monotone decreasing, which keeps the phase-sensitive
    purity integrand finite where the unscaled I_0 would overflow.
    """
    arr = np.asarray(z, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("argument must be finite")
    if np.any(arr < 0):
        raise ValidationError("bessel_i0_scaled requires z >= 0")
    flat = np.ascontiguousarray(arr).ravel()
    out = np.asarray(_backend.i0_scaled_values(flat)).reshape(arr.shape)
    if arr.ndim == 0:
        return float(out)
    return out


def legendre_coefficients(n):
    """Exact monomial coefficients of P_n as floats, constant term first.

    Computed once per order with integer arithmetic (Bonnet recurrence over
    2^n-scaled coefficient lists), then cached.
    """
    n = check_order(n)
    return _legendre_coeffs_cached(n)


_LEGENDRE_CACHE = {}


def _legendre_coeffs_cached(n):
    if n in _LEGENDRE_CACHE:
        return _LEGENDRE_CACHE[n]
    # Work with integer coefficients of 2^k k! P_k to stay exact.
    from fractions import Fraction

    prev = [Fraction(1)]
    cur = [Fraction(0), Fraction(1)]
    if n == 0:
        coeffs = prev
    elif n == 1:
        coeffs = cur
    else:
        for k in range(1, n):
            nxt = [Fraction(0)] * (k + 2)
            for j, c in enumerate(cur):
                nxt[j + 1] += Fraction(2 * k + 1, k + 1) * c
            for j, c in enumerate(prev):
                nxt[j] -= Fraction(k, k + 1) * c
            prev, cur = cur, nxt
        coeffs = cur
    out = np.array([float(c) for c in coeffs])
    _LEGENDRE_CACHE[n] = out
    return out
