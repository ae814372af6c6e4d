"""Kernel selection: compiled extension when available, pure Python otherwise.

Set TORALPICK_PURE=1 to force the pure-Python kernels (used by the
benchmark and by tests that compare the two implementations).
"""

from __future__ import annotations

import os
from typing import Sequence

from . import _kernels_py

_IMPL = _kernels_py
COMPILED = False

if not os.environ.get("TORALPICK_PURE"):
    try:
        from . import _speedups  # type: ignore[attr-defined]

        _IMPL = _speedups
        COMPILED = True
    except ImportError:
        pass


def aberth_iterate(coeffs: Sequence[complex], zs: Sequence[complex], max_iter: int, tol: float):
    if COMPILED and len(coeffs) > 64:
        return _kernels_py.aberth_iterate(coeffs, zs, max_iter, tol)
    return _IMPL.aberth_iterate(list(map(complex, coeffs)), list(map(complex, zs)), max_iter, tol)


def box_min_abs(cre, cim, e1, e2, box, coef_err: float) -> float:
    if COMPILED:
        import numpy as np

        return _IMPL.box_min_abs(
            np.asarray(cre, dtype=np.float64),
            np.asarray(cim, dtype=np.float64),
            np.asarray(e1, dtype=np.int64),
            np.asarray(e2, dtype=np.int64),
            np.asarray(box, dtype=np.float64),
            float(coef_err),
        )
    return _kernels_py.box_min_abs(list(cre), list(cim), list(e1), list(e2), list(box), float(coef_err))
