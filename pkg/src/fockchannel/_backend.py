"""Select the numerical kernel backend at import time.

The compiled extension (``fockchannel._kernels``) is preferred when present;
otherwise the NumPy implementation is used.  Setting ``FOCKCHANNEL_PURE=1``
forces the NumPy backend, which is how the benchmark and the backend parity
tests compare the two.
"""

import os

from . import _kernels_py


def _load():
    if os.environ.get("FOCKCHANNEL_PURE", "") not in ("", "0"):
        return _kernels_py
    try:
        from . import _kernels
        return _kernels
    except ImportError:
        return _kernels_py


_impl = _load()

BACKEND_NAME = _impl.BACKEND_NAME
laguerre_values = _impl.laguerre_values
legendre_values = _impl.legendre_values
i0_scaled_values = _impl.i0_scaled_values
squeezed_integrand = _impl.squeezed_integrand


def backend_name():
    """Name of the kernel backend in use ("cython" or "numpy")."""
    return BACKEND_NAME


def available_backends():
    """All importable kernel backends, keyed by name."""
    found = {_kernels_py.BACKEND_NAME: _kernels_py}
    try:
        from . import _kernels
        found[_kernels.BACKEND_NAME] = _kernels
    except ImportError:
        pass
    return found
