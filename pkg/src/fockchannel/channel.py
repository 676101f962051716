"""Gaussian channel parameters, the equivalent bath parametrization, and the
covariance-style matrices that drive the characteristic-function evolution.

Two equivalent descriptions are kept: the generator parameters (gamma, N, M)
that enter the master equation directly, and the bath view (mu_inf, r, phi) =
(asymptotic purity, squeezing strength, squeezing angle), which is the natural
language for the figures.  Conversion is exact and round-trips to 1e-12.

Conventions fixed here and relied on everywhere else:

* ``sigma_infinity`` is the quadratic-form matrix appearing in the exponent of
  the asymptotic characteristic function, *not* the second-moment matrix of
  the bath state (the two are related by a 90-degree phase-space rotation).
  Its xx entry is 1/2 + N + Re M.
* ``phi`` is the angle of the bath's squeezed quadrature, phi = Arg(M)/2
  (mod pi).  With this choice a joint rotation of state and bath leaves every
  purity invariant, so results depend on cat phase and bath angle only
  through their difference.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

#: Slack allowed on the positivity constraint |M|^2 <= N(N+1); inputs are
#: rejected exactly when |M|^2 - N(N+1) exceeds this.
POSITIVITY_SLACK = 1e-12


def _check_channel(N, M):
    if not math.isfinite(N) or N < 0:
        raise ValidationError(f"N must be finite and >= 0, got {N}")
    m2 = abs(M) ** 2
    if m2 - N * (N + 1) > POSITIVITY_SLACK:
        raise ValidationError(
            f"positivity violated: |M|^2 = {m2:.12g} exceeds N(N+1) = "
            f"{N * (N + 1):.12g}")


@dataclass(frozen=True)
class ChannelParams:
    """Gaussian channel: coupling rate gamma, bath moments N and M.

    N >= 0 is the (dimensionless) bath excitation number, M the complex
    phase-sensitive correlation, constrained by |M|^2 <= N(N+1).
    """

    gamma: float
    N: float
    M: complex = 0j

    def __post_init__(self):
        if not math.isfinite(self.gamma) or self.gamma <= 0:
            raise ValidationError(f"gamma must be finite and > 0, got {self.gamma}")
        _check_channel(self.N, self.M)
        object.__setattr__(self, "M", complex(self.M))

    def to_bath(self):
        return channel_to_bath(self.N, self.M)

    def to_json_dict(self):
        return {"gamma": self.gamma, "N": self.N,
                "M_re": self.M.real, "M_im": self.M.imag}

    @classmethod
    def from_json_dict(cls, d):
        return cls(gamma=float(d["gamma"]), N=float(d["N"]),
                   M=complex(float(d["M_re"]), float(d["M_im"])))


@dataclass(frozen=True)
class BathSpec:
    """Bath state view: asymptotic purity mu_inf in (0, 1], squeezing r >= 0,
    squeezing angle phi reduced to [0, pi)."""

    mu_inf: float
    r: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.mu_inf) and 0 < self.mu_inf <= 1):
            raise ValidationError(f"mu_inf must lie in (0, 1], got {self.mu_inf}")
        if not math.isfinite(self.r) or self.r < 0:
            raise ValidationError(f"r must be finite and >= 0, got {self.r}")
        if not math.isfinite(self.phi):
            raise ValidationError(f"phi must be finite, got {self.phi}")
        object.__setattr__(self, "phi", self.phi % math.pi)

    def to_channel(self, gamma=1.0):
        N, M = bath_to_channel(self)
        return ChannelParams(gamma=gamma, N=N, M=M)

    def to_json_dict(self):
        return {"mu_inf": self.mu_inf, "r": self.r, "phi": self.phi}

    @classmethod
    def from_json_dict(cls, d):
        return cls(mu_inf=float(d["mu_inf"]), r=float(d["r"]),
                   phi=float(d["phi"]))


@dataclass(frozen=True)
class CovMatrix2:
    """Real symmetric 2x2 matrix (xx, pp, xp entries)."""

    xx: float
    pp: float
    xp: float = 0.0

    def det(self):
        return self.xx * self.pp - self.xp ** 2

    def eigenvalues(self):
        """(smaller, larger) eigenvalue pair."""
        mean = 0.5 * (self.xx + self.pp)
        dev = math.hypot(0.5 * (self.xx - self.pp), self.xp)
        return mean - dev, mean + dev

    def as_array(self):
        return np.array([[self.xx, self.xp], [self.xp, self.pp]])

    def quadratic_form(self, x, p):
        """(x p) . Sigma . (x p)^T, broadcasting over arrays."""
        return self.xx * x * x + 2.0 * self.xp * x * p + self.pp * p * p


def bath_to_channel(bath):
    """Invert the bath parametrization: (mu_inf, r, phi) -> (N, M).

    N = (cosh(2r)/mu_inf - 1)/2, |M| = sinh(2r)/(2 mu_inf), Arg M = 2 phi.
    Any valid BathSpec satisfies the positivity constraint automatically.
    """
    c2r = math.cosh(2.0 * bath.r)
    s2r = math.sinh(2.0 * bath.r)
    N = 0.5 * (c2r / bath.mu_inf - 1.0)
    absM = 0.5 * s2r / bath.mu_inf
    M = absM * cmath.exp(2j * bath.phi)
    assert absM ** 2 <= N * (N + 1) + POSITIVITY_SLACK
    return N, M


def channel_to_bath(N, M):
    """Convert generator moments (N, M) to the bath view (mu_inf, r, phi)."""
    M = complex(M)
    _check_channel(N, M)
    absM = abs(M)
    # factorized discriminant avoids the squared cancellation at large r
    disc = (2.0 * N + 1.0 - 2.0 * absM) * (2.0 * N + 1.0 + 2.0 * absM)
    mu_inf = 1.0 / math.sqrt(disc)
    # sinh(2r) = 2 mu |M|; asinh is stable for small arguments.
    r = 0.5 * math.asinh(2.0 * mu_inf * absM)
    phi = (cmath.phase(M) / 2.0) % math.pi if absM > 0 else 0.0
    return BathSpec(mu_inf=mu_inf, r=r, phi=phi)


def sigma_infinity(N, M):
    """Quadratic-form matrix of the asymptotic Gaussian characteristic function."""
    M = complex(M)
    _check_channel(N, M)
    return CovMatrix2(xx=0.5 + N + M.real, pp=0.5 + N - M.real, xp=M.imag)


def sigma_t(params, t):
    """Gaussian envelope matrix at time t >= 0.

    Convex combination (1/2) e^{-gamma t} * identity + sigma_inf (1 - e^{-gamma t}).
    This is the envelope of the evolved characteristic function, not the
    covariance matrix of the evolving state.
    """
    if not math.isfinite(t) or t < 0:
        raise ValidationError(f"t must be finite and >= 0, got {t}")
    k = math.exp(-params.gamma * t)
    s_inf = sigma_infinity(params.N, params.M)
    return CovMatrix2(xx=0.5 * k + s_inf.xx * (1.0 - k),
                      pp=0.5 * k + s_inf.pp * (1.0 - k),
                      xp=s_inf.xp * (1.0 - k))
