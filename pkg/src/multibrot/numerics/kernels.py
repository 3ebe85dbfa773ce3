"""Select the compiled kernels when available, else the pure-Python twins.

Set ``MULTIBROT_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels as pure

compiled = None
if not os.environ.get("MULTIBROT_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

active = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"

newton_ray_point = active.newton_ray_point
escape_counts = active.escape_counts
green = active.green
