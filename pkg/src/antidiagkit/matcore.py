"""Dense complex matrix foundation.

Matrices are plain ``numpy.ndarray`` values with ``complex128`` dtype;
every public function validates shape and finiteness at the boundary and
treats its inputs as immutable.  The eigensolver is the in-repo
Hessenberg + shifted-QR kernel (compiled when available), deliberately
not delegated to LAPACK so the decomposition stack is self-contained.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NoConvergence, SingularMatrix
from .tolerances import DEFAULT_TOL, Tolerance

EIG_SIZE_CAP = 256


def as_matrix(a) -> np.ndarray:
    """Coerce to a complex 2-d array, rejecting NaN/inf entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite (no NaN/inf)")
    return m


def ensure_square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def principal_sqrt(z) -> complex:
    """Principal complex square root, branch cut on the negative real axis.

    The imaginary part of the argument is normalised so that a negative
    real input always lands on the +i side of the cut, independent of the
    sign of a zero imaginary part.
    """
    z = complex(z)
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    return complex(np.sqrt(z))


def exchange_matrix(n: int) -> np.ndarray:
    """The antidiagonal permutation matrix E_n (all antidiagonal entries 1)."""
    if n < 1:
        raise ValueError(f"exchange matrix size must be >= 1, got {n}")
    return np.eye(n, dtype=np.complex128)[::-1].copy()


def mat_mul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def approx_eq(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Frobenius-norm comparison with a relative threshold and abs floor."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    return frobenius(a - b) <= max(tol.abs, tol.rel * max(frobenius(a), frobenius(b)))


# ---------------------------------------------------------------------------
# LU with partial pivoting: inverse, determinant, solve
# ---------------------------------------------------------------------------

def lu_factor(a, tol: Tolerance = DEFAULT_TOL):
    """Return (lu, perm, sign); raises SingularMatrix on pivot underflow."""
    m = ensure_square(a).copy()
    n = m.shape[0]
    perm = np.arange(n)
    sign = 1
    piv_cut = tol.abs * max(1.0, frobenius(m))
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if abs(m[p, k]) <= piv_cut:
            raise SingularMatrix(f"pivot {abs(m[p, k]):.3e} at column {k} underflows tolerance")
        if p != k:
            m[[k, p]] = m[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        m[k + 1:, k] /= m[k, k]
        m[k + 1:, k + 1:] -= np.outer(m[k + 1:, k], m[k, k + 1:])
    return m, perm, sign


def lu_det(a, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Determinant from LU; returns 0 when a pivot underflows."""
    try:
        lu, _, sign = lu_factor(a, tol)
    except SingularMatrix:
        return 0.0 + 0.0j
    return complex(sign * np.prod(np.diag(lu)))


def lu_solve(lu, perm, b) -> np.ndarray:
    n = lu.shape[0]
    x = np.asarray(b, dtype=np.complex128)[perm].copy()
    for k in range(1, n):
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - lu[k, k + 1:] @ x[k + 1:]) / lu[k, k]
    return x


def mat_inverse(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    m = ensure_square(a)
    lu, perm, _ = lu_factor(m, tol)
    n = m.shape[0]
    inv = np.empty((n, n), dtype=np.complex128)
    eye = np.eye(n, dtype=np.complex128)
    for j in range(n):
        inv[:, j] = lu_solve(lu, perm, eye[:, j])
    return inv


# ---------------------------------------------------------------------------
# Eigensolver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigResult:
    values: np.ndarray
    vectors: np.ndarray | None


def schur_dense(m, tol: Tolerance = DEFAULT_TOL, max_sweeps: int | None = None):
    """Complex Schur form M = U T U* via the kernel backend."""
    m = ensure_square(m)
    n = m.shape[0]
    if n > EIG_SIZE_CAP:
        raise DimensionMismatch(f"eigensolver capped at n={EIG_SIZE_CAP}, got {n}")
    budget = 30 * max(n, 1) if max_sweeps is None else max_sweeps
    t, u, status = _kernels.schur_form(m, budget)
    if status < 0:
        raise NoConvergence(f"QR iteration failed to deflate within {budget} sweeps")
    return t, u


def _triangular_eigvecs(t, u):
    # back-substitution on (T - lambda I) y = 0 with y[k] = 1; near-zero
    # denominators are perturbed to eps * ||T|| so repeated eigenvalues
    # still yield structurally independent columns
    n = t.shape[0]
    # floor keeps the perturbed denominator out of the denormal range,
    # where complex division would overflow
    smin = np.finfo(np.float64).eps * max(frobenius(t), 1e-120)
    vecs = np.empty((n, n), dtype=np.complex128)
    for k in range(n):
        lam = t[k, k]
        y = np.zeros(n, dtype=np.complex128)
        y[k] = 1.0
        for i in range(k - 1, -1, -1):
            rhs = -(t[i, i + 1:k + 1] @ y[i + 1:k + 1])
            d = t[i, i] - lam
            if abs(d) < smin:
                d = complex(smin)
            y[i] = rhs / d
            big = abs(y[i])
            if big > 1e120:  # rescale to avoid overflow on long chains
                y[i:k + 1] /= big
        v = u @ y
        vecs[:, k] = v / np.linalg.norm(v)
    return vecs


def eig_dense(m, want_vectors: bool = False, tol: Tolerance = DEFAULT_TOL,
              max_sweeps: int | None = None) -> EigResult:
    """Eigenvalues (and optionally eigenvectors) of a dense complex matrix.

    Vectors come from back-substitution on the triangular Schur factor,
    so each satisfies ||(M - lambda I) v|| <= rel * ||M||_F.
    """
    t, u = schur_dense(m, tol, max_sweeps)
    values = np.diag(t).copy()
    if not want_vectors:
        return EigResult(values, None)
    return EigResult(values, _triangular_eigvecs(t, u))


def eigenvalues_close(w1, w2, threshold: float) -> bool:
    """Multiset equality by greedy nearest-neighbour pairing."""
    w1 = np.asarray(w1, dtype=np.complex128).ravel()
    w2 = np.asarray(w2, dtype=np.complex128).ravel()
    if w1.shape != w2.shape:
        return False
    order = np.lexsort((w1.imag, w1.real))
    remaining = list(w2)
    for lam in w1[order]:
        dists = [abs(lam - mu) for mu in remaining]
        j = int(np.argmin(dists))
        if dists[j] > threshold:
            return False
        remaining.pop(j)
    return True


# ---------------------------------------------------------------------------
# Rank / structure
# ---------------------------------------------------------------------------

def rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    """Numerical rank by Householder QR with column pivoting."""
    a = as_matrix(m).copy()
    rows, cols = a.shape
    scale = frobenius(a)
    threshold = max(tol.abs, tol.rel * scale * max(rows, cols))
    norms = np.sum(np.abs(a) ** 2, axis=0)
    r = 0
    for k in range(min(rows, cols)):
        p = k + int(np.argmax(norms[k:]))
        if norms[p] <= threshold ** 2:
            break
        if p != k:
            a[:, [k, p]] = a[:, [p, k]]
            norms[[k, p]] = norms[[p, k]]
        x = a[k:, k]
        xnorm = np.linalg.norm(x)
        if xnorm <= threshold:
            break
        v = x.copy()
        phase = v[0] / abs(v[0]) if v[0] != 0 else 1.0
        v[0] += phase * xnorm
        v /= np.linalg.norm(v)
        a[k:, k:] -= 2.0 * np.outer(v, v.conj() @ a[k:, k:])
        r += 1
        norms[k + 1:] = np.sum(np.abs(a[k + 1:, k + 1:]) ** 2, axis=0)
    return r


def nullity(m, tol: Tolerance = DEFAULT_TOL) -> int:
    m = ensure_square(m)
    return m.shape[0] - rank(m, tol)


@dataclass(frozen=True)
class StructureFlags:
    is_unitary: bool
    is_normal: bool
    is_symmetric: bool
    is_antisymmetric: bool
    is_hollow: bool
    is_pseudo_hollow: bool


def predicates(m, tol: Tolerance = DEFAULT_TOL) -> StructureFlags:
    """Structural flags, all computed with scale-aware cutoffs."""
    m = ensure_square(m)
    n = m.shape[0]
    fro = frobenius(m)
    entry_cut = max(tol.abs, tol.rel * fro / max(n, 1))
    diag_nonzero = int(np.count_nonzero(np.abs(np.diag(m)) > entry_cut))
    res_cut = max(tol.abs, tol.rel * max(1.0, fro * fro))
    return StructureFlags(
        is_unitary=frobenius(m.conj().T @ m - np.eye(n)) <= res_cut,
        is_normal=frobenius(m @ m.conj().T - m.conj().T @ m) <= res_cut,
        is_symmetric=frobenius(m - m.T) <= max(tol.abs, tol.rel * fro),
        is_antisymmetric=frobenius(m + m.T) <= max(tol.abs, tol.rel * fro),
        is_hollow=diag_nonzero == 0,
        is_pseudo_hollow=diag_nonzero <= 1,
    )


def is_diagonal_matrix(m, tol: Tolerance = DEFAULT_TOL) -> bool:
    m = ensure_square(m)
    off = m - np.diag(np.diag(m))
    return frobenius(off) <= max(tol.abs, tol.rel * max(1.0, frobenius(m)))


def is_antidiagonal_matrix(m, tol: Tolerance = DEFAULT_TOL) -> bool:
    m = ensure_square(m)
    off = m.copy()
    n = m.shape[0]
    off[np.arange(n), n - 1 - np.arange(n)] = 0.0
    return frobenius(off) <= max(tol.abs, tol.rel * max(1.0, frobenius(m)))


def is_upper_triangular(m, tol: Tolerance = DEFAULT_TOL) -> bool:
    m = ensure_square(m)
    return frobenius(np.tril(m, -1)) <= max(tol.abs, tol.rel * max(1.0, frobenius(m)))


def quasidiagonal_partition(m, tol: Tolerance = DEFAULT_TOL):
    """Partition into diagonal blocks of size <= 2, or None if impossible.

    Greedy scan: index i opens a 2-block exactly when position (i, i+1)
    or (i+1, i) is nonzero; any nonzero further from the diagonal fails.
    """
    m = ensure_square(m)
    n = m.shape[0]
    cut = max(tol.abs, tol.rel * frobenius(m) / max(n, 1))
    nz = np.abs(m) > cut
    blocks = []
    i = 0
    while i < n:
        pair = i + 1 < n and (nz[i, i + 1] or nz[i + 1, i])
        size = 2 if pair else 1
        for r in range(i, i + size):
            for c in range(n):
                if nz[r, c] and not (i <= c < i + size):
                    return None
            for c in range(i, i + size):
                if nz[r, c] and not (i <= r < i + size):
                    return None
        for c in range(i, i + size):
            rows_nz = np.nonzero(nz[:, c])[0]
            if any(r < i or r >= i + size for r in rows_nz):
                return None
        blocks.append((i, size))
        i += size
    return blocks
