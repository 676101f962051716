"""Purity mu(t) = Tr rho^2 along every computational path.

Four routes to the same number, used to cross-check each other:

* closed_form     -- Legendre form for number states in thermal channels, and
                     the Gaussian-moment closed form for the 0-1 cat.
* quadrature_1d   -- the radially reduced integral for number states in a
                     general phase-sensitive channel (reduces to the thermal
                     Laplace integral at |M| = 0).
* quadrature_2d   -- (1/2 pi) * integral of |chi|^2 over phase space, for any
                     characteristic function.
* oracle          -- density-matrix integration, in :mod:`fockchannel.oracle`.

All times are dimensionless gamma*t.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .channel import BathSpec, ChannelParams
from .errors import AccuracyWarning, NumericalAccuracyError, ValidationError
from .quadrature import integrate_1d, integrate_box2d
from .specialfn import check_order, legendre, legendre_coefficients

PATH_CLOSED_FORM = "closed_form"
PATH_QUAD_1D = "quadrature_1d"
PATH_QUAD_2D = "quadrature_2d"
PATH_ORACLE = "oracle"
ALL_PATHS = (PATH_CLOSED_FORM, PATH_QUAD_1D, PATH_QUAD_2D, PATH_ORACLE)

# Below this distance from the removable singularity xi = 2, the thermal
# closed form switches to the expanded polynomial evaluation.
_XI_SINGULARITY_WINDOW = 1e-4


@dataclass(frozen=True)
class QuadratureControl:
    """Accuracy knobs for the phase-space quadrature."""

    abs_tol: float = 1e-8
    box_sigmas: float = 8.0
    min_points: int = 32
    max_points: int = 1024
    #: error estimates beyond abs_tol * fail_factor raise instead of warning
    fail_factor: float = 1e3


def _check_time(gamma_t):
    if not math.isfinite(gamma_t) or gamma_t < 0:
        raise ValidationError(f"gamma_t must be finite and >= 0, got {gamma_t}")


def purity_2d(chi, ctrl=None):
    """Purity from the phase-space integral (1/2 pi) * int |chi|^2 dx dp.

    The integration box is sized from the characteristic function's Gaussian
    envelope (box_sigmas standard deviations of the widest direction, inflated
    by sqrt(2 n + 1) for the polynomial factor).  If the error estimate ends
    above ``abs_tol`` an AccuracyWarning is attached; if the refinement limit
    is reached with a grossly unconverged estimate, NumericalAccuracyError
    carries the best value.
    """
    value, _ = purity_2d_with_error(chi, ctrl)
    return value


def purity_2d_with_error(chi, ctrl=None):
    ctrl = ctrl or QuadratureControl()
    lam_min, _ = chi.envelope.eigenvalues()
    if lam_min <= 0:
        raise ValidationError("characteristic function envelope is not positive definite")
    half_width = (ctrl.box_sigmas * math.sqrt(2 * chi.poly_order + 1)
                  / math.sqrt(2.0 * lam_min))

    def integrand(x, p):
        vals = chi(x, p)
        return (vals.real ** 2 + vals.imag ** 2) / (2.0 * math.pi)

    value, err = integrate_box2d(integrand, half_width, abs_tol=ctrl.abs_tol,
                                 min_points=ctrl.min_points,
                                 max_points=ctrl.max_points)
    if err > ctrl.abs_tol:
        if err > ctrl.fail_factor * ctrl.abs_tol:
            raise NumericalAccuracyError(
                f"2d purity quadrature did not converge (estimate {err:g})",
                best_estimate=value, err_estimate=err)
        warnings.warn(f"2d purity error estimate {err:g} exceeds {ctrl.abs_tol:g}",
                      AccuracyWarning, stacklevel=2)
    return value, err


def purity_thermal(n, N, gamma_t):
    """Exact purity of |n> in a thermal channel (bath excitation N, M = 0).

    With xi = e^{gamma t}(2N+1) - 2N:

        mu_n = e^{gamma t} (xi - 2)^n / xi^{n+1} * P_n(1 + 2/(xi^2 - 2 xi)).

    Every factor is computed from w = e^{-gamma t}, so arbitrarily large times
    cannot overflow.  Near xi = 2 the P_n argument diverges while (xi - 2)^n
    vanishes; there the product is evaluated as an explicit polynomial in
    (xi - 2), which is finite and smooth through the crossing.
    """
    n = check_order(n)
    if not math.isfinite(N) or N < 0:
        raise ValidationError(f"N must be finite and >= 0, got {N}")
    _check_time(gamma_t)
    if gamma_t == 0.0:
        return 1.0
    w = math.exp(-gamma_t)
    d1 = (2.0 * N + 1.0) - 2.0 * N * w          # = xi * w
    d2 = (2.0 * N + 1.0) - 2.0 * (N + 1.0) * w  # = (xi - 2) * w
    base = 1.0 / d1                             # = e^{gamma t} / xi
    if abs(d2) < _XI_SINGULARITY_WINDOW * w:
        eps = d2 / w
        coeffs = legendre_coefficients(n)
        q_over_d = (eps * eps + 2.0 * eps + 2.0) / (2.0 + eps)
        total = 0.0
        for j in range(n, -1, -1):
            if coeffs[j] != 0.0:
                total += coeffs[j] * eps ** (n - j) * q_over_d ** j
        return base * total / (2.0 + eps) ** n
    ratio = d2 / d1                              # = 1 - 2/xi
    y = 1.0 + 2.0 * w * w / (d1 * d2)            # = 1 + 2/(xi^2 - 2 xi)
    return base * ratio ** n * legendre(n, y)


def purity_squeezed(n, N, absM, gamma_t):
    """Purity of |n> in a general phase-sensitive channel, by 1-D quadrature.

    mu_n = e^{gamma t} * int_0^inf L_n(s)^2 e^{-xi s} I_0(2|M|(e^{gamma t}-1) s) ds,
    which reduces to the thermal form at |M| = 0 and tends to the channel's
    asymptotic purity.  Computed in the substituted variable u = (xi - c) s
    with the scaled Bessel function, so the integrand is O(1) on a fixed
    interval for every admissible channel and time.
    """
    value, _ = purity_squeezed_with_error(n, N, absM, gamma_t)
    return value


def purity_squeezed_with_error(n, N, absM, gamma_t):
    n = check_order(n)
    if not math.isfinite(absM) or absM < 0:
        raise ValidationError(f"|M| must be finite and >= 0, got {absM}")
    from .channel import _check_channel
    _check_channel(N, absM)
    _check_time(gamma_t)
    if gamma_t == 0.0:
        return 1.0, 0.0
    w = math.exp(-gamma_t)
    # (xi - c) * w, with c = 2|M|(e^{gamma t} - 1); always >= w > 0.
    d = (2.0 * N + 1.0 - 2.0 * absM) - (2.0 * N - 2.0 * absM) * w
    prefactor = 1.0 / d                 # e^{gamma t} / (xi - c)
    lag_scale = w / d                   # 1 / (xi - c)
    bessel_ratio = 2.0 * absM * (1.0 - w) / d

    def integrand(u):
        return _backend.squeezed_integrand(u, n, lag_scale, bessel_ratio)

    upper = 60.0 + 4.0 * n
    start = max(8, n // 2 + 4, int(bessel_ratio / 8) + 8)
    total, err = integrate_1d(integrand, 0.0, upper, abs_tol=1e-13,
                              start_panels=start)
    return prefactor * total, prefactor * err


def purity_asymptotic(N, absM):
    """Late-time purity of the channel: 1/sqrt((2N+1)^2 - 4|M|^2)."""
    from .channel import _check_channel
    if not math.isfinite(absM) or absM < 0:
        raise ValidationError(f"|M| must be finite and >= 0, got {absM}")
    _check_channel(N, absM)
    return 1.0 / math.sqrt((2.0 * N + 1.0) ** 2 - 4.0 * absM ** 2)


def purity_vacuum(bath, gamma_t):
    """Purity of an initial vacuum in the channel (the nu of the cat form).

    Equals 1/(2 sqrt(det sigma(t))); written out in the bath parameters:
    nu = [e^{-2gt} + 2 cosh(2r) e^{-gt}(1-e^{-gt})/mu + (1-e^{-gt})^2/mu^2]^{-1/2}.
    """
    _check_time(gamma_t)
    k = math.exp(-gamma_t)
    c2 = math.cosh(2.0 * bath.r)
    mu = bath.mu_inf
    inv_sq = k * k + 2.0 * c2 * k * (1.0 - k) / mu + (1.0 - k) ** 2 / (mu * mu)
    return 1.0 / math.sqrt(inv_sq)


def purity_cat01(bath, theta, gamma_t):
    """Closed-form purity of the evolved cat (|0> + e^{i theta}|1>)/sqrt(2).

    Obtained by Gaussian-moment integration of |chi(t)|^2; with nu the vacuum
    purity, k = e^{-gamma t} and E = e^{gamma t} - 1:

        mu_01 = nu
              - k^2 nu^3/(2 mu) * [mu + E (cosh 2r - cos(2 theta - 2 phi) sinh 2r)]
              + k^4 nu^5/(2 mu^2) * [mu^2 + 2 E mu cosh 2r + E^2 (3 cosh 4r + 1)/4].

    Depends on the phases only through theta - phi, and is maximized over
    theta at theta = phi (the bath's squeezed-axis angle), a relation pinned
    against the density-matrix oracle in the test suite.
    """
    if not isinstance(bath, BathSpec):
        raise ValidationError("bath must be a BathSpec")
    from .charfun import CatPhase
    if isinstance(theta, CatPhase):
        theta = theta.theta
    if not math.isfinite(theta):
        raise ValidationError(f"theta must be finite, got {theta}")
    _check_time(gamma_t)
    if gamma_t == 0.0:
        return 1.0
    k = math.exp(-gamma_t)
    mu = bath.mu_inf
    c2 = math.cosh(2.0 * bath.r)
    s2 = math.sinh(2.0 * bath.r)
    c4 = math.cosh(4.0 * bath.r)
    nu = purity_vacuum(bath, gamma_t)
    cos_d = math.cos(2.0 * theta - 2.0 * bath.phi)
    # k^2 E = k(1-k), k^3 E = k^2(1-k), k^4 E^2 = k^2(1-k)^2 with E = e^{gt}-1.
    term2 = -(nu ** 3 / (2.0 * mu)) * (
        k * k * mu + k * (1.0 - k) * (c2 - cos_d * s2))
    term3 = (nu ** 5 / (2.0 * mu * mu)) * (
        k ** 4 * mu * mu
        + 2.0 * k ** 3 * (1.0 - k) * mu * c2
        + k * k * (1.0 - k) ** 2 * (3.0 * c4 + 1.0) / 4.0)
    return nu + term2 + term3


@dataclass
class PuritySeries:
    """Purity values per computational path on a common gamma*t grid."""

    times: np.ndarray
    values: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)
    channel: ChannelParams = None
    initial_state: str = ""

    def paths(self):
        return tuple(self.values.keys())

    def check_physical(self, tol=1e-9):
        """Every purity must lie in (0, 1], and a grid starting at t = 0 must
        start at purity 1 (all supported initial states are pure); raises on
        violation."""
        for path, vals in self.values.items():
            vals = np.asarray(vals)
            if np.any(~np.isfinite(vals)) or np.any(vals <= 0) or np.any(vals > 1 + tol):
                bad = vals[~(np.isfinite(vals) & (vals > 0) & (vals <= 1 + tol))]
                raise NumericalAccuracyError(
                    f"unphysical purity on path '{path}': {bad[:3]} ...")
            if len(self.times) and self.times[0] == 0.0 and abs(vals[0] - 1.0) > tol:
                raise NumericalAccuracyError(
                    f"path '{path}' starts at purity {vals[0]!r}, expected 1")

    def rows(self):
        """(gamma_t, path, purity, err_estimate) in deterministic order."""
        for i, t in enumerate(self.times):
            for path in self.values:
                err = self.errors.get(path)
                yield (float(t), path, float(self.values[path][i]),
                       float(err[i]) if err is not None else 0.0)
