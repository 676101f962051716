"""Adaptive Gauss-Legendre quadrature primitives.

Two shapes are needed: a composite 1-D rule with panel doubling (for the
radially reduced purity integrals) and a tensor-product rule on a centred box
with node doubling (for the generic phase-space integral).  Both report the
last-refinement change as the error estimate.
"""

import numpy as np

from .errors import NumericalAccuracyError

_NODE_CACHE = {}


def gauss_legendre(m):
    """Cached Gauss-Legendre nodes and weights on [-1, 1]."""
    if m not in _NODE_CACHE:
        _NODE_CACHE[m] = np.polynomial.legendre.leggauss(m)
    return _NODE_CACHE[m]


def integrate_1d(f, a, b, abs_tol=1e-13, panel_points=24, start_panels=8,
                 max_panels=4096):
    """Integrate ``f`` (vectorized) over [a, b] by panel doubling.

    Returns ``(value, err_estimate)``; raises NumericalAccuracyError if the
    estimate has not settled below ``abs_tol`` within ``max_panels`` panels.
    """
    xs, ws = gauss_legendre(panel_points)
    panels = start_panels
    prev = None
    err = np.inf
    while True:
        edges = np.linspace(a, b, panels + 1)
        half = 0.5 * (edges[1] - edges[0])
        centers = 0.5 * (edges[:-1] + edges[1:])
        pts = (centers[:, None] + half * xs[None, :]).ravel()
        vals = np.asarray(f(pts), dtype=np.float64).reshape(panels, len(xs))
        total = half * float(np.sum(vals @ ws))
        if prev is not None:
            err = abs(total - prev)
            if err <= max(abs_tol, 1e-15 * abs(total)):
                return total, err
        prev = total
        panels *= 2
        if panels > max_panels:
            raise NumericalAccuracyError(
                f"1d quadrature did not settle below {abs_tol:g} "
                f"within {max_panels} panels (last change {err:g})",
                best_estimate=total, err_estimate=err)


def integrate_box2d(f, half_width, abs_tol=1e-8, min_points=32, max_points=1024):
    """Integrate ``f(x, p)`` over the square [-L, L]^2 by node doubling.

    ``f`` must accept meshgrid arrays.  Returns ``(value, err_estimate)``
    where the estimate is the change produced by the final doubling; never
    raises, so the caller decides how to treat a poor estimate.
    """
    m = min_points
    prev = None
    err = np.inf
    while True:
        xs, ws = gauss_legendre(m)
        nodes = half_width * xs
        weights = half_width * ws
        X, P = np.meshgrid(nodes, nodes, indexing="ij")
        vals = np.asarray(f(X, P), dtype=np.float64)
        total = float(weights @ vals @ weights)
        if prev is not None:
            err = abs(total - prev)
            if err <= 0.25 * abs_tol:
                return total, err
        prev = total
        if 2 * m > max_points:
            return total, err
        m *= 2
