"""Backend selection for the series kernels.

The compiled extension is used when it imports and was built from the
current sources (matching ``API_VERSION``); otherwise the pure-Python module
is used.  Setting ``MODVALS_PURE_PYTHON=1`` forces the fallback.
"""

import os
import warnings

from . import _pykernels

_compiled = None
if os.environ.get("MODVALS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None
    if _compiled is not None and getattr(_compiled, "API_VERSION", None) != _pykernels.API_VERSION:
        warnings.warn("compiled kernels are out of date; rebuild the package. Using pure Python.", stacklevel=2)
        _compiled = None

_impl = _compiled if _compiled is not None else _pykernels
BACKEND = "cython" if _compiled is not None else "python"

conv = _impl.conv
conv_int = _impl.conv_int
recip = _impl.recip
euler_product = _impl.euler_product
log_derivative = _impl.log_derivative


def backends():
    """Available kernel modules keyed by name (for tests and benchmarks)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        if getattr(_ckernels, "API_VERSION", None) == _pykernels.API_VERSION:
            out["cython"] = _ckernels
    except ImportError:
        pass
    return out
