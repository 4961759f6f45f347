"""Pure-python (numpy) Schur-form kernel.

Same contract as the compiled kernel in ``_compiled.pyx``: Householder
reduction to upper Hessenberg form followed by an explicitly shifted QR
iteration with Wilkinson shifts and occasional exceptional shifts.

``schur_form(a, max_sweeps)`` returns ``(t, u, sweeps)`` with
``a = u @ t @ u.conj().T``, ``t`` upper triangular and ``u`` unitary.
``sweeps`` is negative when the sweep budget ran out before deflation
finished; callers turn that into a NoConvergence error.
"""

from __future__ import annotations

import numpy as np

NAME = "python"

_EPS = float(np.finfo(np.float64).eps)


def _hessenberg(h, u):
    n = h.shape[0]
    for c in range(n - 2):
        x = h[c + 1:, c]
        xnorm = np.linalg.norm(x)
        if xnorm == 0.0:
            continue
        v = x.copy()
        alpha = v[0]
        phase = alpha / abs(alpha) if alpha != 0 else 1.0
        v[0] += phase * xnorm
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        # similarity by the reflector I - 2 v v*
        h[c + 1:, c:] -= 2.0 * np.outer(v, v.conj() @ h[c + 1:, c:])
        h[:, c + 1:] -= 2.0 * np.outer(h[:, c + 1:] @ v, v.conj())
        u[:, c + 1:] -= 2.0 * np.outer(u[:, c + 1:] @ v, v.conj())
        h[c + 2:, c] = 0.0


def _givens(f, g):
    # G = [[c, s], [-conj(s), c]] with real c >= 0 and G @ (f, g) = (r, 0)
    if g == 0:
        return 1.0, 0.0 + 0.0j
    if f == 0:
        return 0.0, np.conj(g) / abs(g)
    d = np.hypot(abs(f), abs(g))
    c = abs(f) / d
    s = (f / abs(f)) * np.conj(g) / d
    return c, s


def _wilkinson_shift(h, hi):
    a11 = h[hi - 1, hi - 1]
    a12 = h[hi - 1, hi]
    a21 = h[hi, hi - 1]
    a22 = h[hi, hi]
    disc = np.sqrt((0.5 * (a11 - a22)) ** 2 + a12 * a21)
    tr = 0.5 * (a11 + a22)
    m1 = tr + disc
    m2 = tr - disc
    return m1 if abs(m1 - a22) <= abs(m2 - a22) else m2


def schur_form(a, max_sweeps):
    h = np.array(a, dtype=np.complex128, order="C")
    n = h.shape[0]
    u = np.eye(n, dtype=np.complex128)
    if n <= 1:
        return h, u, 0
    _hessenberg(h, u)
    anorm = float(np.linalg.norm(h))
    hi = n - 1
    total = 0
    stall = 0
    cs = np.empty(n, dtype=np.float64)
    sn = np.empty(n, dtype=np.complex128)
    while hi > 0:
        # deflation scan: walk up while the subdiagonal stays significant
        l = hi
        while l > 0:
            tst = abs(h[l - 1, l - 1]) + abs(h[l, l])
            if tst == 0.0:
                tst = anorm if anorm > 0 else 1.0
            if abs(h[l, l - 1]) <= _EPS * tst:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            hi -= 1
            stall = 0
            continue
        lo = l
        if total >= max_sweeps:
            return h, u, -1
        if stall > 0 and stall % 12 == 0:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson_shift(h, hi)
        for d in range(lo, hi + 1):
            h[d, d] -= mu
        # left rotations: reduce the shifted block to triangular form
        for i in range(lo, hi):
            c, s = _givens(h[i, i], h[i + 1, i])
            cs[i] = c
            sn[i] = s
            row_i = h[i, i:].copy()
            row_j = h[i + 1, i:]
            h[i, i:] = c * row_i + s * row_j
            h[i + 1, i:] = -np.conj(s) * row_i + c * row_j
            h[i + 1, i] = 0.0
        # right rotations: multiply back, restoring Hessenberg form
        for i in range(lo, hi):
            c = cs[i]
            s = sn[i]
            top = min(i + 2, hi) + 1
            col_i = h[:top, i].copy()
            h[:top, i] = c * col_i + np.conj(s) * h[:top, i + 1]
            h[:top, i + 1] = -s * col_i + c * h[:top, i + 1]
            ucol = u[:, i].copy()
            u[:, i] = c * ucol + np.conj(s) * u[:, i + 1]
            u[:, i + 1] = -s * ucol + c * u[:, i + 1]
        for d in range(lo, hi + 1):
            h[d, d] += mu
        total += 1
        stall += 1
    for i in range(1, n):
        h[i, :i] = 0.0
    return h, u, total
