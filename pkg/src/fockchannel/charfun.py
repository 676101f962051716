"""Symmetric-order characteristic functions and their channel evolution.

A state enters this module as a closed-form evaluator chi(x, p) on phase
space, together with just enough structure for the quadrature code to choose
an integration box: a Gaussian envelope matrix bounding |chi| and the degree
of the polynomial prefactor.  Evolution through the channel composes a
coordinate contraction with a Gaussian damping factor and therefore stays in
closed form.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import CovMatrix2, sigma_infinity, sigma_t
from .errors import ValidationError
from .specialfn import check_order, laguerre

VACUUM_ENVELOPE = CovMatrix2(xx=0.5, pp=0.5, xp=0.0)


@dataclass(frozen=True)
class CatPhase:
    """Superposition phase of the two-component cat, reduced mod 2*pi."""

    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValidationError(f"theta must be finite, got {self.theta}")
        object.__setattr__(self, "theta", self.theta % (2.0 * math.pi))


class CharFunction:
    """Pointwise-evaluable characteristic function chi(x, p).

    ``envelope`` is a positive-definite matrix E with |chi(v)| bounded by a
    constant times exp(-(1/2) v.E.v); ``poly_order`` the degree (in |alpha|^2)
    of the polynomial riding on that Gaussian.  Instances are immutable and
    safe to evaluate concurrently.
    """

    def __init__(self, fn, envelope, poly_order, description):
        self._fn = fn
        self.envelope = envelope
        self.poly_order = poly_order
        self.description = description

    def __call__(self, x, p):
        return self._fn(np.asarray(x, dtype=np.float64),
                        np.asarray(p, dtype=np.float64))

    def __repr__(self):
        return f"CharFunction({self.description!r})"


def chi_number(n):
    """Characteristic function of the number state |n><n|:
    exp(-(x^2+p^2)/4) * L_n((x^2+p^2)/2)."""
    n = check_order(n)

    def fn(x, p):
        s = 0.5 * (x * x + p * p)
        return np.exp(-0.5 * s) * laguerre(n, s)

    return CharFunction(fn, VACUUM_ENVELOPE, n, f"number n={n}")


def chi_cat01(theta):
    """Characteristic function of (|0> + e^{i theta} |1>)/sqrt(2) at t = 0.

    In terms of alpha = (x + i p)/sqrt(2):
    (1/2) e^{-|alpha|^2/2} [2 - |alpha|^2 + (alpha e^{-i theta} - alpha* e^{i theta})],
    which follows from the displacement-operator matrix elements
    <1|D|0> = alpha e^{-|alpha|^2/2} and <0|D|1> = -alpha* e^{-|alpha|^2/2}.
    """
    if not isinstance(theta, CatPhase):
        theta = CatPhase(theta)
    th = theta.theta

    def fn(x, p):
        alpha = (x + 1j * p) / math.sqrt(2.0)
        a2 = alpha.real ** 2 + alpha.imag ** 2
        inter = alpha * np.exp(-1j * th) - np.conj(alpha) * np.exp(1j * th)
        return 0.5 * np.exp(-0.5 * a2) * (2.0 - a2 + inter)

    return CharFunction(fn, VACUUM_ENVELOPE, 1, f"cat01 theta={th:.6g}")


def propagate(chi0, params, t):
    """Evolve ``chi0`` through the channel for time t >= 0.

    chi_t(x, p) = chi0(x e^{-gamma t/2}, p e^{-gamma t/2})
                  * exp(-(1/2)(x p) sigma_inf (x p)^T (1 - e^{-gamma t})).
    At t = 0 this is the identity; the composition satisfies the Markov
    semigroup property exactly.
    """
    if not math.isfinite(t) or t < 0:
        raise ValidationError(f"t must be finite and >= 0, got {t}")
    k = math.exp(-params.gamma * t)
    root_k = math.sqrt(k)
    s_inf = sigma_infinity(params.N, params.M)
    damp = 1.0 - k
    env0 = chi0.envelope
    envelope = CovMatrix2(xx=k * env0.xx + damp * s_inf.xx,
                          pp=k * env0.pp + damp * s_inf.pp,
                          xp=k * env0.xp + damp * s_inf.xp)

    def fn(x, p):
        gauss = np.exp(-0.5 * damp * s_inf.quadratic_form(x, p))
        return chi0(root_k * x, root_k * p) * gauss

    description = f"{chi0.description} | evolved gamma*t={params.gamma * t:.6g}"
    return CharFunction(fn, envelope, chi0.poly_order, description)


def chi_number_evolved(n, params, t):
    """Closed form of the evolved number-state characteristic function:
    L_n((x^2+p^2) e^{-gamma t}/2) * exp(-(1/2)(x p) sigma(t) (x p)^T).

    Agrees pointwise with ``propagate(chi_number(n), params, t)``.
    """
    n = check_order(n)
    if not math.isfinite(t) or t < 0:
        raise ValidationError(f"t must be finite and >= 0, got {t}")
    k = math.exp(-params.gamma * t)
    sig = sigma_t(params, t)

    def fn(x, p):
        s = 0.5 * k * (x * x + p * p)
        return laguerre(n, s) * np.exp(-0.5 * sig.quadratic_form(x, p))

    return CharFunction(fn, sig, n, f"number n={n} evolved gamma*t={params.gamma * t:.6g}")


def gaussian_charfun(sigma, description="gaussian"):
    """chi(x, p) = exp(-(1/2)(x p) sigma (x p)^T) for a given envelope matrix."""

    def fn(x, p):
        return np.exp(-0.5 * sigma.quadratic_form(x, p))

    return CharFunction(fn, sigma, 0, description)
