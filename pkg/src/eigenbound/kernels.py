"""Kernel backend selection.

The compiled extension is used when it imports; setting
``EIGENBOUND_PURE_PYTHON=1`` forces the pure-Python reference kernels.
"""

import os

from . import _kernels_py

if os.environ.get("EIGENBOUND_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
lgamma = _impl.lgamma
gamma = _impl.gamma
bessel_j = _impl.bessel_j
bessel_i_scaled = _impl.bessel_i_scaled
cap_shoot = _impl.cap_shoot


def available_backends():
    """Names and modules of every importable backend (python first)."""
    out = {"python": _kernels_py}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
