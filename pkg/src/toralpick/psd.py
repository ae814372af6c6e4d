"""Positive-semidefinite projection used by the Pick feasibility solver."""

from __future__ import annotations

import numpy as np

PSD_FLOOR = -1e-12


def nearest_psd(m: np.ndarray) -> np.ndarray:
    """Frobenius-nearest PSD matrix: symmetrize, clip negative eigenvalues.

    Accepts real symmetric or complex hermitian input (symmetrized first);
    the result has min eigenvalue >= -1e-12 up to roundoff.
    """
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("nearest_psd requires a square matrix")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(np.asarray(a, dtype=complex).imag)):
        raise ValueError("nearest_psd requires finite entries")
    h = (a + a.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(h)
    clipped = np.clip(vals, 0.0, None)
    out = (vecs * clipped) @ vecs.conj().T
    out = (out + out.conj().T) / 2.0
    if np.isrealobj(a):
        out = out.real
    return out


def min_eigenvalue(m: np.ndarray) -> float:
    h = np.asarray(m)
    h = (h + h.conj().T) / 2.0
    return float(np.linalg.eigvalsh(h)[0])
