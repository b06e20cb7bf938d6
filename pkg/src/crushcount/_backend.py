"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``CRUSH_COUNT_PURE=1`` to force the fallback.
"""
import os

if os.environ.get("CRUSH_COUNT_PURE"):
    from . import _fallback as kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        from . import _fallback as kernels
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
