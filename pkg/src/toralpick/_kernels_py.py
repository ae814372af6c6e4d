"""Pure-Python twins of the compiled kernels in _speedups.pyx.

Kept in lockstep with the Cython source; test_kernels checks agreement
when the extension is available.
"""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

_EPS = 2.220446049250313e-16


def aberth_iterate(coeffs: Sequence[complex], zs: Sequence[complex], max_iter: int, tol: float):
    """Aberth-Ehrlich simultaneous iteration; see _speedups.aberth_iterate."""
    c = list(coeffs)
    z = list(zs)
    n = len(z)
    m = len(c)
    it = 0
    for it in range(max_iter):
        maxcorr = 0.0
        for i in range(n):
            zi = z[i]
            f = c[m - 1]
            fp = 0.0
            for k in range(m - 2, -1, -1):
                fp = fp * zi + f
                f = f * zi + c[k]
            if f == 0:
                continue
            if fp == 0:
                z[i] = zi + 1e-8 * (1.0 + abs(zi.real) + abs(zi.imag))
                maxcorr = 1e30
                continue
            w = f / fp
            s = 0.0
            for j in range(n):
                if j != i:
                    s += 1.0 / (zi - z[j])
            corr = w / (1.0 - w * s)
            z[i] = zi - corr
            ac = abs(corr)
            if ac > maxcorr:
                maxcorr = ac
        if maxcorr < tol:
            break
    return z, it + 1


def _imul(alo: float, ahi: float, blo: float, bhi: float) -> Tuple[float, float]:
    p = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
    return min(p), max(p)


def box_min_abs(cre, cim, e1, e2, box, coef_err: float) -> float:
    """Certified lower bound of |p| over a box; see _speedups.box_min_abs."""
    nterms = len(cre)
    mag1 = math.hypot(max(abs(box[0]), abs(box[1])), max(abs(box[2]), abs(box[3])))
    mag2 = math.hypot(max(abs(box[4]), abs(box[5])), max(abs(box[6]), abs(box[7])))
    sre_lo = sre_hi = sim_lo = sim_hi = 0.0
    magbound = 0.0
    ops = 0
    for t in range(nterms):
        tre_lo = tre_hi = cre[t]
        tim_lo = tim_hi = cim[t]
        term_mag = math.hypot(cre[t], cim[t]) * mag1 ** e1[t] * mag2 ** e2[t]
        magbound += term_mag
        for which in range(2):
            if which == 0:
                bre_lo, bre_hi, bim_lo, bim_hi = box[0], box[1], box[2], box[3]
                k = e1[t]
            else:
                bre_lo, bre_hi, bim_lo, bim_hi = box[4], box[5], box[6], box[7]
                k = e2[t]
            while k > 0:
                m1, m2 = _imul(tre_lo, tre_hi, bre_lo, bre_hi)
                m3, m4 = _imul(tim_lo, tim_hi, bim_lo, bim_hi)
                nre_lo, nre_hi = m1 - m4, m2 - m3
                m1, m2 = _imul(tre_lo, tre_hi, bim_lo, bim_hi)
                m3, m4 = _imul(tim_lo, tim_hi, bre_lo, bre_hi)
                nim_lo, nim_hi = m1 + m3, m2 + m4
                tre_lo, tre_hi, tim_lo, tim_hi = nre_lo, nre_hi, nim_lo, nim_hi
                ops += 20
                k -= 1
        sre_lo += tre_lo
        sre_hi += tre_hi
        sim_lo += tim_lo
        sim_hi += tim_hi
        ops += 4
    margin = (16.0 * ops + 64.0) * _EPS * magbound + coef_err
    mig_re = sre_lo if sre_lo > 0 else (-sre_hi if sre_hi < 0 else 0.0)
    mig_im = sim_lo if sim_lo > 0 else (-sim_hi if sim_hi < 0 else 0.0)
    mig = math.hypot(mig_re, mig_im) - margin
    return mig if mig > 0.0 else 0.0
