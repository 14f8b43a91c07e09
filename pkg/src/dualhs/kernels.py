"""Selects the Jacobi kernel at import time.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``DUALHS_PURE_PYTHON`` is set to a non-empty value, the
numpy implementation is used. Both expose ``jacobi_sweeps(wt, vt, tol, max_sweeps)``.
"""
import os

from . import _jacobi_py

try:
    from . import _jacobi as _jacobi_c
except ImportError:  # extension not built
    _jacobi_c = None

KERNELS = {"python": _jacobi_py.jacobi_sweeps}
if _jacobi_c is not None:
    KERNELS["cython"] = _jacobi_c.jacobi_sweeps

if os.environ.get("DUALHS_PURE_PYTHON") or _jacobi_c is None:
    BACKEND = "python"
else:
    BACKEND = "cython"


def get_kernel(name=None):
    """Return the sweep function for ``name`` (default: the selected backend)."""
    name = BACKEND if name is None else name
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available; have {sorted(KERNELS)}") from None
