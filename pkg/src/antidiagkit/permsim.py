"""Permutation similarity: quasidiagonalization and real antisymmetric forms.

The constant permutation P quasidiagonalizing an antidiagonal matrix pairs
row i with row n+1-i.  In 1-based terms it maps

    even n:  sigma(i) = n+1-2i  (i <= n/2),    sigma(i) = 2i-n  (i > n/2)
    odd  n:  sigma(i) = n+1-2i  (i < (n+1)/2), sigma(center) = 1,
             sigma(i) = 2i-n    (i > (n+1)/2)

with P[i, sigma(i)] = 1, so A = P Q P^T moves entries without arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .antidiag import AntidiagonalSpec, from_dense, to_dense, transpose_pairs
from .errors import DimensionMismatch, NotRealAntisymmetric
from .matcore import frobenius
from .tolerances import DEFAULT_TOL, Tolerance


@dataclass(frozen=True)
class PermQuasiDecomposition:
    p: np.ndarray
    q: np.ndarray
    blocks: tuple
    parity: int


def _sigma(n: int):
    """The pairing permutation, 0-based: row i carries its 1 in column sigma[i]."""
    sig = np.empty(n, dtype=np.intp)
    if n % 2 == 0:
        half = n // 2
        for i in range(1, half + 1):
            sig[i - 1] = n + 1 - 2 * i - 1
        for i in range(half + 1, n + 1):
            sig[i - 1] = 2 * i - n - 1
    else:
        c = (n + 1) // 2
        for i in range(1, c):
            sig[i - 1] = n + 1 - 2 * i - 1
        sig[c - 1] = 0
        for i in range(c + 1, n + 1):
            sig[i - 1] = 2 * i - n - 1
    return sig


def permutation_sign(sig) -> int:
    sig = np.asarray(sig)
    n = len(sig)
    seen = np.zeros(n, dtype=bool)
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = int(sig[j])
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _permutation_matrix(sig) -> np.ndarray:
    n = len(sig)
    p = np.zeros((n, n), dtype=np.complex128)
    p[np.arange(n), sig] = 1.0
    return p


def _q_blocks(spec: AntidiagonalSpec):
    """Blocks of Q in layout order: center first for odd n, then pairs.

    The block's top-right entry is always the odd-indexed coefficient of
    the pair: a_k for even n (k odd), a_{k+1} for odd n (k even).
    """
    blocks = []
    if spec.n % 2 == 1:
        blocks.append(np.array([[spec.coeffs[0]]], dtype=np.complex128))
        for k in range(2, spec.n, 2):
            blocks.append(np.array([[0.0, spec.coeffs[k]],
                                    [spec.coeffs[k - 1], 0.0]], dtype=np.complex128))
    else:
        for k in range(1, spec.n, 2):
            blocks.append(np.array([[0.0, spec.coeffs[k - 1]],
                                    [spec.coeffs[k], 0.0]], dtype=np.complex128))
    return blocks


def perm_quasidiag(spec: AntidiagonalSpec) -> PermQuasiDecomposition:
    """Quasidiagonalize: A = P Q P^T with Q hollow (pseudo-hollow for odd n).

    Reconstruction is an entry permutation, hence exact.  ``parity`` is the
    actual det(P): +1 for even n, (-1)^floor(n/2) for odd n.
    """
    n = spec.n
    sig = _sigma(n)
    p = _permutation_matrix(sig)
    blocks = _q_blocks(spec)
    q = np.zeros((n, n), dtype=np.complex128)
    at = 0
    for b in blocks:
        s = b.shape[0]
        q[at:at + s, at:at + s] = b
        at += s
    return PermQuasiDecomposition(p, q, tuple(blocks), permutation_sign(sig))


def is_q_pseudo_hollow_quasidiagonal(m, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Quasidiagonal, pseudo-hollow, and any nonzero diagonal entry forms a
    1x1 block (alone in its row, column, and on the diagonal)."""
    m = matcore.ensure_square(m)
    parts = matcore.quasidiagonal_partition(m, tol)
    if parts is None:
        return False
    n = m.shape[0]
    cut = max(tol.abs, tol.rel * frobenius(m) / max(n, 1))
    nz_diag = [i for i in range(n) if abs(m[i, i]) > cut]
    if len(nz_diag) > 1:
        return False
    for i in nz_diag:
        row = np.abs(m[i]) > cut
        col = np.abs(m[:, i]) > cut
        if row.sum() > 1 or col.sum() > 1:
            return False
    return True


def _require_real_antisym(m, tol: Tolerance):
    m = matcore.ensure_square(m)
    scale = max(1.0, frobenius(m))
    if frobenius(m.imag) > tol.rel * scale:
        raise NotRealAntisymmetric("matrix has a nonreal part")
    if frobenius(m + m.T) > max(tol.abs, tol.rel * scale):
        raise NotRealAntisymmetric("matrix is not antisymmetric (M^T != -M)")
    return m


def real_schur_antisym_antidiag(spec: AntidiagonalSpec,
                                tol: Tolerance = DEFAULT_TOL) -> PermQuasiDecomposition:
    """P Q P^T as the real Schur decomposition of a real antisymmetric
    antidiagonal matrix; certifies conjugate-pair block eigenvalues."""
    dense = to_dense(spec)
    _require_real_antisym(dense, tol)
    dec = perm_quasidiag(spec)
    for b in dec.blocks:
        if b.shape[0] == 2:
            # eigenvalues of [[0, x], [-x, 0]] are +/- i x: conjugate pair
            prod = complex(b[0, 1]) * complex(b[1, 0])
            if prod.real > tol.cutoff(frobenius(dense)) ** 2:
                raise NotRealAntisymmetric("a 2x2 block fails the conjugate-pair test")
    return dec


def orth_antidiagonalize_real_antisym(m, tol: Tolerance = DEFAULT_TOL):
    """Orthogonally antidiagonalize a real antisymmetric matrix.

    Returns (R, A) with M = R * to_dense(A) * R^T, R real orthogonal with
    det +1 for even n and -1 for odd n, and A real antisymmetric whose
    antidiagonal entries are i times the eigenvalues of M.

    Route: H = -i M is Hermitian with real eigenvalues r and unit
    eigenvectors z = x + i y.  For r > 0 the plane (sqrt(2) x, sqrt(2) y)
    is M-invariant with action [[0, r], [-r, 0]]; kernel vectors are
    orthonormalized by modified Gram-Schmidt.  Composing with the pairing
    permutation P reaches antidiagonal form.
    """
    m = _require_real_antisym(m, tol)
    n = m.shape[0]
    mre = m.real.copy()
    scale = frobenius(mre)
    res = matcore.eig_dense(-1j * mre, want_vectors=True, tol=tol)
    order = np.argsort(-res.values.real)
    cutoff = max(tol.abs, tol.rel * max(scale, 1.0))

    # positive eigenvalues first; repeated ones need their eigenvectors
    # re-orthonormalized (back-substitution does not provide that)
    groups = []
    kernel_raw = []
    for idx in order:
        r = float(res.values[idx].real)
        z = res.vectors[:, idx]
        if r > cutoff:
            if groups and abs(groups[-1][0][0] - r) <= cutoff:
                groups[-1].append((r, z))
            else:
                groups.append([(r, z)])
        elif abs(r) <= cutoff:
            kernel_raw.extend([z.real, z.imag])

    plane_cols = []
    rs = []
    for group in groups:
        basis = []
        for r, z in group:
            w = z.copy()
            for u in basis:
                w -= (u.conj() @ w) * u
            nrm = np.linalg.norm(w)
            if nrm <= 1e-8:
                raise NotRealAntisymmetric("eigenvector extraction failed")
            basis.append(w / nrm)
        for (r, _), z in zip(group, basis):
            plane_cols.extend([np.sqrt(2.0) * z.real, np.sqrt(2.0) * z.imag])
            rs.append(r)

    # modified Gram-Schmidt for a real orthonormal kernel basis
    kernel_cols = []
    need = n - 2 * len(rs)
    for v in kernel_raw:
        w = v.copy()
        for u in plane_cols + kernel_cols:
            w -= (u @ w) * u
        nrm = np.linalg.norm(w)
        if nrm > 1e-8:
            kernel_cols.append(w / nrm)
        if len(kernel_cols) == need:
            break
    if len(kernel_cols) != need:
        raise NotRealAntisymmetric("kernel basis extraction failed")

    # B is the quasidiagonal form in Q's layout: center slot first for odd n
    cols = []
    pairs = [(rs[j], plane_cols[2 * j], plane_cols[2 * j + 1]) for j in range(len(rs))]
    kernel_iter = list(kernel_cols)
    signs = []
    if n % 2 == 1:
        cols.append(kernel_iter.pop(0))
    for r, x, y in pairs:
        cols.extend([x, y])
        signs.append(r)
    cols.extend(kernel_iter)
    r0 = np.column_stack(cols) if cols else np.zeros((n, 0))

    sig = _sigma(n)
    p = _permutation_matrix(sig).real
    r_full = r0 @ p.T
    want = 1.0 if n % 2 == 0 else -1.0
    det_sign = np.sign(np.linalg.det(r_full).real)
    if det_sign != want:
        if kernel_cols:
            # negating one kernel column flips det; the paired zero entry is 0
            j0 = 0 if n % 2 == 1 else 2 * len(rs)
            r0[:, j0] = -r0[:, j0]
        else:
            # swap the first block's basis vectors and negate its r
            r0[:, [0, 1]] = r0[:, [1, 0]]
            signs[0] = -signs[0]
        r_full = r0 @ p.T

    # B in quasidiagonal layout, mapped through P to antidiagonal form
    b = np.zeros((n, n))
    at = 1 if n % 2 == 1 else 0
    for r in signs:
        b[at, at + 1] = r
        b[at + 1, at] = -r
        at += 2
    a_dense = p @ b @ p.T
    a_spec = from_dense(a_dense, tol)
    return r_full, a_spec


def pair_permutation_conjugator(src: AntidiagonalSpec, dst: AntidiagonalSpec,
                                tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Permutation U with to_dense(dst) = U to_dense(src) U^T.

    Exists exactly when dst arises from src by permuting transpose pairs
    and/or transposing elements within pairs (center fixed for odd n).
    """
    if src.n != dst.n:
        raise DimensionMismatch("sizes differ")
    n = src.n
    sp, sc = transpose_pairs(src, tol)
    dp, dc = transpose_pairs(dst, tol)
    cut = tol.cutoff(max(max(abs(c) for c in src.coeffs), 1.0))
    if sc is not None and abs(sc - dc) > cut:
        raise ValueError("center elements differ; no pair permutation relates the specs")

    used = [False] * len(dp)
    mapping = []  # (src slot, dst slot, flipped)
    for i, p in enumerate(sp):
        found = False
        for j, q in enumerate(dp):
            if used[j]:
                continue
            if abs(p.low - q.low) <= cut and abs(p.high - q.high) <= cut:
                mapping.append((i, j, False))
                used[j] = found = True
                break
            if abs(p.low - q.high) <= cut and abs(p.high - q.low) <= cut:
                mapping.append((i, j, True))
                used[j] = found = True
                break
        if not found:
            raise ValueError("pair multisets differ; no pair permutation relates the specs")

    base = 1 if n % 2 == 1 else 0
    pi = np.zeros((n, n))
    if base:
        pi[0, 0] = 1.0
    for i, j, flipped in mapping:
        # Q-layout slot rows: low element row first, high second
        si, di = base + 2 * i, base + 2 * j
        if flipped:
            pi[di, si + 1] = 1.0
            pi[di + 1, si] = 1.0
        else:
            pi[di, si] = 1.0
            pi[di + 1, si + 1] = 1.0

    p_src = perm_quasidiag(src).p.real
    p_dst = perm_quasidiag(dst).p.real
    return p_dst @ pi @ p_src.T
