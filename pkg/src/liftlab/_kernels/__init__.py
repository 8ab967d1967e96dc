"""Hot kernels, backed by the compiled core when available.

Set ``LIFTLAB_PURE_PYTHON=1`` to force the numpy fallback.
"""

import os

from . import _pykernels as py

if os.environ.get("LIFTLAB_PURE_PYTHON") == "1":
    _impl = py
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = py
        BACKEND = "python"

pattern_member_mask = _impl.pattern_member_mask
projection_max = _impl.projection_max
ind_image_mask = _impl.ind_image_mask
product_image_mask = _impl.product_image_mask


def backends() -> dict:
    """Every importable backend module keyed by name (used by tests and the benchmark)."""
    out = {"python": py}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out


__all__ = ["BACKEND", "backends", "pattern_member_mask", "projection_max",
           "ind_image_mask", "product_image_mask"]
