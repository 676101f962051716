"""fockchannel: purity decay of Fock states and their coherent superpositions
in single-mode Gaussian noisy channels.

Closed forms, reduced 1-D integrals, generic phase-space quadrature and a
density-matrix oracle compute the same purities along independent routes; the
CLI (``fockchannel``) sweeps them and emits CSV/JSON.
"""

from ._backend import backend_name
from .channel import (BathSpec, ChannelParams, CovMatrix2, bath_to_channel,
                      channel_to_bath, sigma_infinity, sigma_t)
from .charfun import (CatPhase, CharFunction, chi_cat01, chi_number,
                      chi_number_evolved, gaussian_charfun, propagate)
from .errors import (AccuracyWarning, FockChannelError,
                     IntegrationFailureError, NumericalAccuracyError,
                     TruncationError, ValidationError)
from .oracle import (FockDensity, IntegratorCtrl, cat01_state, default_dim,
                     evolve, fock_state, ladder_ops, lindblad_rhs, purity_of,
                     squeezed_thermal_state)
from .purity import (ALL_PATHS, PuritySeries, QuadratureControl, purity_2d,
                     purity_asymptotic, purity_cat01, purity_squeezed,
                     purity_thermal, purity_vacuum)
from .specialfn import MAX_ORDER, bessel_i0_scaled, laguerre, legendre

__version__ = "0.1.0"

__all__ = [
    "ALL_PATHS", "AccuracyWarning", "BathSpec", "CatPhase", "ChannelParams",
    "CharFunction", "CovMatrix2", "FockChannelError", "FockDensity",
    "IntegratorCtrl", "IntegrationFailureError", "MAX_ORDER",
    "NumericalAccuracyError", "PuritySeries", "QuadratureControl",
    "TruncationError", "ValidationError", "backend_name", "bath_to_channel",
    "bessel_i0_scaled", "cat01_state", "channel_to_bath", "chi_cat01",
    "chi_number", "chi_number_evolved", "default_dim", "evolve", "fock_state",
    "gaussian_charfun", "ladder_ops", "laguerre", "legendre", "lindblad_rhs",
    "propagate", "purity_2d", "purity_asymptotic", "purity_cat01",
    "purity_of", "purity_squeezed", "purity_thermal", "purity_vacuum",
    "sigma_infinity", "sigma_t", "squeezed_thermal_state",
]
