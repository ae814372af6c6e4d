# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Aberth root iteration and certified box screening.

Semantics match toralpick._kernels_py exactly; _kernels selects whichever
is importable. The box kernel returns a conservatively deflated lower
bound, so its certifications stay sound in plain rounding.
"""

from libc.math cimport fabs, sqrt, cos, sin, hypot


def aberth_iterate(coeffs, zs, int max_iter, double tol):
    """Aberth-Ehrlich simultaneous iteration on double-precision complexes.

    coeffs: coefficient list low -> high (complex), leading nonzero.
    zs: initial approximations (list of complex), one per root.
    Returns (roots, iterations_used).
    """
    cdef int n = len(zs)
    cdef int m = len(coeffs)
    cdef int i, j, k, it
    cdef double complex[64] cbuf
    cdef double complex[64] zbuf
    cdef double complex f, fp, w, s, corr, zi
    cdef double maxcorr
    if m > 64 or n > 63:
        raise ValueError("kernel supports degree <= 63")
    for i in range(m):
        cbuf[i] = coeffs[i]
    for i in range(n):
        zbuf[i] = zs[i]
    it = 0
    for it in range(max_iter):
        maxcorr = 0.0
        for i in range(n):
            zi = zbuf[i]
            f = cbuf[m - 1]
            fp = 0
            for k in range(m - 2, -1, -1):
                fp = fp * zi + f
                f = f * zi + cbuf[k]
            if f == 0:
                continue
            if fp == 0:
                zbuf[i] = zi + 1e-8 * (1.0 + fabs(zi.real) + fabs(zi.imag))
                maxcorr = 1e30
                continue
            w = f / fp
            s = 0
            for j in range(n):
                if j != i:
                    s = s + 1.0 / (zi - zbuf[j])
            corr = w / (1.0 - w * s)
            zbuf[i] = zi - corr
            if abs(corr) > maxcorr:
                maxcorr = abs(corr)
        if maxcorr < tol:
            break
    return [zbuf[i] for i in range(n)], it + 1


cdef inline void _imul(double alo, double ahi, double blo, double bhi,
                       double* lo, double* hi):
    cdef double p1 = alo * blo
    cdef double p2 = alo * bhi
    cdef double p3 = ahi * blo
    cdef double p4 = ahi * bhi
    cdef double mn = p1
    cdef double mx = p1
    if p2 < mn: mn = p2
    if p3 < mn: mn = p3
    if p4 < mn: mn = p4
    if p2 > mx: mx = p2
    if p3 > mx: mx = p3
    if p4 > mx: mx = p4
    lo[0] = mn
    hi[0] = mx


def box_min_abs(double[::1] cre, double[::1] cim, long[::1] e1, long[::1] e2,
                double[::1] box, double coef_err):
    """Certified lower bound of |p| over a 4-real-dimensional complex box.

    box = (re1_lo, re1_hi, im1_lo, im1_hi, re2_lo, re2_hi, im2_lo, im2_hi).
    Returns 0.0 when positivity cannot be certified. The bound is deflated
    by an explicit rounding margin, so a positive return is rigorous.
    """
    cdef int nterms = cre.shape[0]
    cdef int t, k, e
    cdef double rre_lo, rre_hi, rim_lo, rim_hi
    cdef double tre_lo, tre_hi, tim_lo, tim_hi
    cdef double bre_lo, bre_hi, bim_lo, bim_hi
    cdef double m1, m2, m3, m4, nre_lo, nre_hi, nim_lo, nim_hi
    cdef double sre_lo = 0.0, sre_hi = 0.0, sim_lo = 0.0, sim_hi = 0.0
    cdef double mag1, mag2, magbound = 0.0, cmag, term_mag
    cdef long ops = 0
    mag1 = fabs(box[0])
    if fabs(box[1]) > mag1: mag1 = fabs(box[1])
    m2 = fabs(box[2])
    if fabs(box[3]) > m2: m2 = fabs(box[3])
    mag1 = hypot(mag1, m2)
    mag2 = fabs(box[4])
    if fabs(box[5]) > mag2: mag2 = fabs(box[5])
    m2 = fabs(box[6])
    if fabs(box[7]) > m2: m2 = fabs(box[7])
    mag2 = hypot(mag2, m2)
    for t in range(nterms):
        # term interval: c * z1^e1 * z2^e2
        tre_lo = cre[t]; tre_hi = cre[t]
        tim_lo = cim[t]; tim_hi = cim[t]
        cmag = hypot(cre[t], cim[t])
        term_mag = cmag
        for k in range(e1[t]):
            term_mag *= mag1
        for k in range(e2[t]):
            term_mag *= mag2
        magbound += term_mag
        for e in range(2):
            if e == 0:
                bre_lo = box[0]; bre_hi = box[1]; bim_lo = box[2]; bim_hi = box[3]
                k = e1[t]
            else:
                bre_lo = box[4]; bre_hi = box[5]; bim_lo = box[6]; bim_hi = box[7]
                k = e2[t]
            while k > 0:
                # (tre + i tim) * (bre + i bim)
                _imul(tre_lo, tre_hi, bre_lo, bre_hi, &m1, &m2)
                _imul(tim_lo, tim_hi, bim_lo, bim_hi, &m3, &m4)
                nre_lo = m1 - m4
                nre_hi = m2 - m3
                _imul(tre_lo, tre_hi, bim_lo, bim_hi, &m1, &m2)
                _imul(tim_lo, tim_hi, bre_lo, bre_hi, &m3, &m4)
                nim_lo = m1 + m3
                nim_hi = m2 + m4
                tre_lo = nre_lo; tre_hi = nre_hi
                tim_lo = nim_lo; tim_hi = nim_hi
                ops += 20
                k -= 1
        sre_lo += tre_lo; sre_hi += tre_hi
        sim_lo += tim_lo; sim_hi += tim_hi
        ops += 4
    cdef double margin = (16.0 * ops + 64.0) * 2.220446049250313e-16 * magbound + coef_err
    cdef double mig_re = 0.0, mig_im = 0.0
    if sre_lo > 0: mig_re = sre_lo
    elif sre_hi < 0: mig_re = -sre_hi
    if sim_lo > 0: mig_im = sim_lo
    elif sim_hi < 0: mig_im = -sim_hi
    cdef double mig = sqrt(mig_re * mig_re + mig_im * mig_im) - margin
    if mig <= 0.0:
        return 0.0
    return mig
