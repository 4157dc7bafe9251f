"""Backend selection for the hot kernels.

The compiled Cython module is used when it was built; otherwise, or when the
environment variable ``SPHEREVOL_PURE_PYTHON`` is set to a non-empty value,
the numpy implementation is used. Both expose the same functions.
"""
import os

from . import _pykernels

if os.environ.get("SPHEREVOL_PURE_PYTHON"):
    _backend = _pykernels
else:
    try:
        from . import _ckernels as _backend
    except ImportError:  # extension not built
        _backend = _pykernels

BACKEND = _backend.NAME
det = _backend.det
enumerate_facets = _backend.enumerate_facets
simplex_dets = _backend.simplex_dets
vertex_forces = _backend.vertex_forces
sweep = _backend.sweep


def available_backends():
    """Map backend name -> module for every backend importable here."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
