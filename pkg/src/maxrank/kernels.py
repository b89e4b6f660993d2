"""Backend selection for the modular elimination kernels.

The compiled extension is used when it was built; otherwise the numpy
fallback is loaded. Setting ``MAXRANK_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _kernels_py

if os.environ.get("MAXRANK_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

rank_modp = _impl.rank_modp
rref_modp = _impl.rref_modp

__all__ = ["BACKEND", "rank_modp", "rref_modp", "_kernels_py"]
