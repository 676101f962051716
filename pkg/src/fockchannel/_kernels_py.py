"""Pure NumPy implementations of the numerical kernels.

Mirrors the API of the compiled extension ``fockchannel._kernels``; one of the
two is selected at import time by :mod:`fockchannel._backend`.  All functions
take and return C-contiguous float64 arrays and perform no argument checking
(the public wrappers in :mod:`fockchannel.specialfn` do that).
"""

import numpy as np

BACKEND_NAME = "numpy"

# Power series below, asymptotic expansion above.  Both branches stay within
# 1e-12 relative error of each other at the switch point.
_I0_CROSSOVER = 20.0
_I0_SERIES_TERMS = 64
_I0_ASYMPTOTIC_TERMS = 40


def laguerre_values(n, x):
    """Laguerre polynomial L_n evaluated by the three-term recurrence."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur


def legendre_values(n, x):
    """Legendre polynomial P_n evaluated by the Bonnet recurrence."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = x.copy()
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
    return cur


def i0_scaled_values(z):
    """Exponentially scaled modified Bessel function e^{-z} I_0(z), z >= 0."""
    z = np.ascontiguousarray(z, dtype=np.float64)
    out = np.empty_like(z)
    small = z < _I0_CROSSOVER

    zs = z[small]
    term = np.ones_like(zs)
    acc = np.ones_like(zs)
    q = 0.25 * zs * zs
    for k in range(1, _I0_SERIES_TERMS):
        term = term * q / (k * k)
        acc += term
    out[small] = acc * np.exp(-zs)

    zb = z[~small]
    if zb.size:
        term = np.ones_like(zb)
        acc = np.ones_like(zb)
        for k in range(1, _I0_ASYMPTOTIC_TERMS):
            term = term * (2 * k - 1) ** 2 / (8.0 * k * zb)
            acc += term
        out[~small] = acc / np.sqrt(2.0 * np.pi * zb)
    return out


def squeezed_integrand(u, n, lag_scale, bessel_ratio):
    """exp(-u) * L_n(lag_scale*u)^2 * e^{-c u} I_0(c u) with c = bessel_ratio.

    The u-substituted integrand of the phase-sensitive purity integral; all
    factors are bounded, so no overflow for any admissible channel.
    """
    u = np.ascontiguousarray(u, dtype=np.float64)
    lag = laguerre_values(n, lag_scale * u)
    return np.exp(-u) * lag * lag * i0_scaled_values(bessel_ratio * u)
