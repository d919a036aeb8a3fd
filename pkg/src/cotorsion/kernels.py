"""Backend selection for the hot loops.

The compiled extension is used when it imports; ``COTORSION_PURE=1`` forces
the numpy fallback (handy for benchmarking and for cross-checking the two).
"""
import os

from . import _fallback

BACKEND = "python"
if not os.environ.get("COTORSION_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    else:
        BACKEND = "compiled"
else:
    _compiled = None

_impl = _compiled if _compiled is not None else _fallback

rref = _impl.rref
enumerate_extensions = _impl.enumerate_extensions

__all__ = ["BACKEND", "rref", "enumerate_extensions"]
