"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``UALG_PURE_PYTHON=1`` before import to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("UALG_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

hom_violation = _impl.hom_violation
congruence_violation = _impl.congruence_violation
closure_violation = _impl.closure_violation
closure = _impl.closure
search_homs = _impl.search_homs

__all__ = [
    "BACKEND",
    "hom_violation",
    "congruence_violation",
    "closure_violation",
    "closure",
    "search_homs",
]
