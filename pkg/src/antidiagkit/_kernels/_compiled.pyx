# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Schur-form kernel.

Mirrors ``fallback.schur_form`` exactly: Householder Hessenberg reduction
plus explicitly shifted QR with Wilkinson / exceptional shifts.  The hot
loops run as plain C loops over contiguous complex128 buffers.
"""

import numpy as np

from libc.math cimport sqrt

NAME = "compiled"

cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex csqrt(double complex)
    double complex conj(double complex)

cdef double EPS = 2.220446049250313e-16


cdef void _hessenberg(double complex[:, ::1] h, double complex[:, ::1] u,
                      double complex* v) nogil:
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t c, r, i, j
    cdef double xnorm, vnorm
    cdef double complex alpha, phase, dot
    for c in range(n - 2):
        xnorm = 0.0
        for r in range(c + 1, n):
            xnorm += cabs(h[r, c]) * cabs(h[r, c])
        xnorm = sqrt(xnorm)
        if xnorm == 0.0:
            continue
        for r in range(c + 1, n):
            v[r] = h[r, c]
        alpha = h[c + 1, c]
        if cabs(alpha) != 0.0:
            phase = alpha / cabs(alpha)
        else:
            phase = 1.0
        v[c + 1] = v[c + 1] + phase * xnorm
        vnorm = 0.0
        for r in range(c + 1, n):
            vnorm += cabs(v[r]) * cabs(v[r])
        vnorm = sqrt(vnorm)
        if vnorm == 0.0:
            continue
        for r in range(c + 1, n):
            v[r] = v[r] / vnorm
        # rows c+1.. of columns c..: H <- (I - 2vv*) H
        for j in range(c, n):
            dot = 0.0
            for r in range(c + 1, n):
                dot = dot + conj(v[r]) * h[r, j]
            dot = 2.0 * dot
            for r in range(c + 1, n):
                h[r, j] = h[r, j] - dot * v[r]
        # columns c+1.. of all rows: H <- H (I - 2vv*), same for U
        for i in range(n):
            dot = 0.0
            for r in range(c + 1, n):
                dot = dot + h[i, r] * v[r]
            dot = 2.0 * dot
            for r in range(c + 1, n):
                h[i, r] = h[i, r] - dot * conj(v[r])
        for i in range(n):
            dot = 0.0
            for r in range(c + 1, n):
                dot = dot + u[i, r] * v[r]
            dot = 2.0 * dot
            for r in range(c + 1, n):
                u[i, r] = u[i, r] - dot * conj(v[r])
        for r in range(c + 2, n):
            h[r, c] = 0.0


cdef int _qr_iterate(double complex[:, ::1] h, double complex[:, ::1] u,
                     int max_sweeps, double* cs, double complex* sn) nogil:
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t hi = n - 1
    cdef Py_ssize_t lo, l, i, j, d, top
    cdef int total = 0, stall = 0
    cdef double anorm = 0.0, tst, c, af, ag, dd
    cdef double complex mu, a11, a12, a21, a22, disc, tr, m1, m2
    cdef double complex f, g, s, ri, rj

    for i in range(n):
        for j in range(n):
            anorm += cabs(h[i, j]) * cabs(h[i, j])
    anorm = sqrt(anorm)

    while hi > 0:
        l = hi
        while l > 0:
            tst = cabs(h[l - 1, l - 1]) + cabs(h[l, l])
            if tst == 0.0:
                tst = anorm if anorm > 0.0 else 1.0
            if cabs(h[l, l - 1]) <= EPS * tst:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            hi -= 1
            stall = 0
            continue
        lo = l
        if total >= max_sweeps:
            return -1
        if stall > 0 and stall % 12 == 0:
            mu = h[hi, hi] + 0.75 * cabs(h[hi, hi - 1])
        else:
            a11 = h[hi - 1, hi - 1]
            a12 = h[hi - 1, hi]
            a21 = h[hi, hi - 1]
            a22 = h[hi, hi]
            disc = csqrt((0.5 * (a11 - a22)) ** 2 + a12 * a21)
            tr = 0.5 * (a11 + a22)
            m1 = tr + disc
            m2 = tr - disc
            mu = m1 if cabs(m1 - a22) <= cabs(m2 - a22) else m2
        for d in range(lo, hi + 1):
            h[d, d] = h[d, d] - mu
        for i in range(lo, hi):
            f = h[i, i]
            g = h[i + 1, i]
            ag = cabs(g)
            if ag == 0.0:
                c = 1.0
                s = 0.0
            else:
                af = cabs(f)
                if af == 0.0:
                    c = 0.0
                    s = conj(g) / ag
                else:
                    dd = sqrt(af * af + ag * ag)
                    c = af / dd
                    s = (f / af) * conj(g) / dd
            cs[i] = c
            sn[i] = s
            for j in range(i, n):
                ri = h[i, j]
                rj = h[i + 1, j]
                h[i, j] = c * ri + s * rj
                h[i + 1, j] = -conj(s) * ri + c * rj
            h[i + 1, i] = 0.0
        for i in range(lo, hi):
            c = cs[i]
            s = sn[i]
            top = i + 2
            if top > hi:
                top = hi
            for j in range(top + 1):
                ri = h[j, i]
                rj = h[j, i + 1]
                h[j, i] = c * ri + conj(s) * rj
                h[j, i + 1] = -s * ri + c * rj
            for j in range(n):
                ri = u[j, i]
                rj = u[j, i + 1]
                u[j, i] = c * ri + conj(s) * rj
                u[j, i + 1] = -s * ri + c * rj
        for d in range(lo, hi + 1):
            h[d, d] = h[d, d] + mu
        total += 1
        stall += 1
    for i in range(1, n):
        for j in range(i):
            h[i, j] = 0.0
    return total


def schur_form(a, max_sweeps):
    h = np.array(a, dtype=np.complex128, order="C")
    n = h.shape[0]
    u = np.eye(n, dtype=np.complex128)
    if n <= 1:
        return h, u, 0
    work_v = np.empty(n, dtype=np.complex128)
    work_c = np.empty(n, dtype=np.float64)
    work_s = np.empty(n, dtype=np.complex128)
    cdef double complex[:, ::1] hv = h
    cdef double complex[:, ::1] uv = u
    cdef double complex[::1] vv = work_v
    cdef double[::1] cv = work_c
    cdef double complex[::1] sv = work_s
    cdef int status
    _hessenberg(hv, uv, &vv[0])
    status = _qr_iterate(hv, uv, int(max_sweeps), &cv[0], &sv[0])
    return h, u, status
