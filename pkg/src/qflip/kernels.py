"""Backend selection for the hot kernels.

At import time the compiled extension (:mod:`qflip._speedups`, Cython) is
preferred; the numpy implementation (:mod:`qflip._kernels_py`) is the
fallback.  Set the environment variable ``QFLIP_DISABLE_SPEEDUPS=1`` to force
the fallback, e.g. for benchmark baselines.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("QFLIP_DISABLE_SPEEDUPS", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

eigvalsh_small = _impl.eigvalsh_small
cubic_roots_batch = _impl.cubic_roots_batch
grid_eval = _impl.grid_eval
