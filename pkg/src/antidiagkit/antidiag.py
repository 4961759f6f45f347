"""Antidiagonal matrices in center-outward coefficient indexing.

An ``AntidiagonalSpec`` stores coefficients (a1, ..., an) counted from the
matrix center outward: a1 sits just above center (at the exact center for
odd n), even-indexed coefficients fill the lower-left half and odd-indexed
ones the upper-right half.  Position map (rows/columns 1-based):

    even n:  entry (i, n+1-i) = a_{n-2i+1}  for i <= n/2
                              = a_{2i-n}    for i >  n/2
    odd  n:  entry (i, n+1-i) = a_{n-2i+2}  for i <= (n+1)/2
                              = a_{2i-n-1}  for i >  (n+1)/2

Consecutive coefficients (a_k, a_{k+1}) with k odd (even n) or k even
(odd n) are transpose pairs: entries mirrored across the main diagonal.
This indexing is what every closed-form decomposition downstream is
written against; conversion to geometric order happens here only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .errors import DimensionMismatch, NotAntidiagonal, SingularAntidiagonal
from .matcore import frobenius, principal_sqrt
from .spectra import SpectrumReport, spectrum_symmetry
from .tolerances import DEFAULT_TOL, Tolerance


@dataclass(frozen=True)
class AntidiagonalSpec:
    """Coefficients (a1, ..., an) in center-outward order."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("an antidiagonal spec needs at least one coefficient")
        for c in coeffs:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class TransposePair:
    """One antidiagonal transpose pair (a_k, a_{k+1}).

    ``k`` is the 1-based index of ``low``; defective means exactly one of
    the two elements is zero under tolerance.
    """

    k: int
    low: complex
    high: complex
    defective: bool


def coefficient_index(n: int, i: int) -> int:
    """1-based coefficient index sitting at row i (1-based) of the antidiagonal."""
    if n % 2 == 0:
        return n - 2 * i + 1 if i <= n // 2 else 2 * i - n
    return n - 2 * i + 2 if i <= (n + 1) // 2 else 2 * i - n - 1


def _geometric(spec: AntidiagonalSpec) -> np.ndarray:
    """Entries g[i] = A[i, n+1-i] in row order (0-based array)."""
    n = spec.n
    return np.array([spec.coeffs[coefficient_index(n, i) - 1] for i in range(1, n + 1)],
                    dtype=np.complex128)


def to_dense(spec: AntidiagonalSpec) -> np.ndarray:
    n = spec.n
    a = np.zeros((n, n), dtype=np.complex128)
    a[np.arange(n), n - 1 - np.arange(n)] = _geometric(spec)
    return a


def from_dense(m, tol: Tolerance = DEFAULT_TOL) -> AntidiagonalSpec:
    """Read a dense antidiagonal matrix back into coefficient form."""
    m = matcore.ensure_square(m)
    n = m.shape[0]
    mask = np.ones((n, n), dtype=bool)
    mask[np.arange(n), n - 1 - np.arange(n)] = False
    off = np.abs(m)[mask]
    cut = max(tol.abs, tol.rel * frobenius(m))
    if off.size and off.max() > cut:
        flat = np.argmax(np.where(mask, np.abs(m), -1.0))
        i, j = divmod(int(flat), n)
        raise NotAntidiagonal(
            f"entry ({i + 1}, {j + 1}) = {m[i, j]:.6g} lies off the antidiagonal "
            f"(|.| = {abs(m[i, j]):.3e} > {cut:.3e})",
            position=(i, j), magnitude=float(abs(m[i, j])))
    coeffs = [0j] * n
    for i in range(1, n + 1):
        coeffs[coefficient_index(n, i) - 1] = complex(m[i - 1, n - i])
    return AntidiagonalSpec(tuple(coeffs))


def zero_cutoff(spec: AntidiagonalSpec, tol: Tolerance = DEFAULT_TOL) -> float:
    """An element counts as zero iff |x| <= max(abs, rel * max_j |a_j|)."""
    return tol.cutoff(max(abs(c) for c in spec.coeffs))


def transpose_pairs(spec: AntidiagonalSpec, tol: Tolerance = DEFAULT_TOL):
    """The floor(n/2) transpose pairs, plus the center element for odd n."""
    cut = zero_cutoff(spec, tol)
    pairs = []
    start = 1 if spec.n % 2 == 0 else 2
    for k in range(start, spec.n, 2):
        low = spec.coeffs[k - 1]
        high = spec.coeffs[k]
        defective = (abs(low) <= cut) != (abs(high) <= cut)
        pairs.append(TransposePair(k, low, high, defective))
    center = spec.coeffs[0] if spec.n % 2 == 1 else None
    return pairs, center


# ---------------------------------------------------------------------------
# Closed-form algebra
# ---------------------------------------------------------------------------

def antidiag_product(a: AntidiagonalSpec, b: AntidiagonalSpec) -> np.ndarray:
    """Product of two antidiagonal matrices: diagonal with the cross terms.

    Entry (i, i) is g_a[i] * g_b[n+1-i]; the same scalar products the dense
    multiplication performs, so the result is bit-identical to it.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"size mismatch {a.n} vs {b.n}")
    n = a.n
    ga = _geometric(a)
    gb = _geometric(b)
    out = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        # scalar product, matching the one nonzero term of the dense matmul
        out[i, i] = complex(ga[i]) * complex(gb[n - 1 - i])
    return out


def reciprocal(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Elementwise reciprocal of every nonzero entry; zeros stay zero."""
    m = matcore.as_matrix(m)
    cut = max(tol.abs, tol.rel * frobenius(m) / max(m.shape[0], 1))
    out = np.zeros_like(m)
    nz = np.abs(m) > cut
    out[nz] = 1.0 / m[nz]
    return out


def antidiag_inverse(a: AntidiagonalSpec, tol: Tolerance = DEFAULT_TOL) -> AntidiagonalSpec:
    """Inverse: transpose with every element reciprocated.

    Valid iff every coefficient is nonzero.
    """
    cut = zero_cutoff(a, tol)
    for k, c in enumerate(a.coeffs, start=1):
        if abs(c) <= cut:
            raise SingularAntidiagonal(
                f"coefficient a{k} = {c:.3g} is zero; the antidiagonal matrix is singular",
                index=k)
    n = a.n
    g = _geometric(a)
    g_inv = 1.0 / g[::-1]
    coeffs = [0j] * n
    for i in range(1, n + 1):
        coeffs[coefficient_index(n, i) - 1] = complex(g_inv[i - 1])
    return AntidiagonalSpec(tuple(coeffs))


def antidiag_power(a: AntidiagonalSpec, k: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Integer power: diagonal for even k, antidiagonal for odd k.

    Scalar powers accumulate left-to-right in the same factor order as
    repeated dense multiplication, so results agree bit for bit.
    """
    n = a.n
    if k < 0:
        g = _geometric(antidiag_inverse(a, tol))
        k = -k
    else:
        g = _geometric(a)
    if k == 0:
        return np.eye(n, dtype=np.complex128)
    vals = np.empty(n, dtype=np.complex128)
    for i in range(n):
        acc = complex(1.0)
        for step in range(k):
            acc = acc * complex(g[i] if step % 2 == 0 else g[n - 1 - i])
        vals[i] = acc
    out = np.zeros((n, n), dtype=np.complex128)
    if k % 2 == 0:
        out[np.arange(n), np.arange(n)] = vals
    else:
        out[np.arange(n), n - 1 - np.arange(n)] = vals
    return out


def exchange_factor(a: AntidiagonalSpec):
    """Unique factorization A = E D with E the exchange matrix, D diagonal."""
    n = a.n
    e = matcore.exchange_matrix(n)
    d = np.diag(_geometric(a)[::-1]).astype(np.complex128)
    return e, d


@dataclass(frozen=True)
class AntidiagSpectrum:
    report: SpectrumReport
    determinant: complex
    trace: complex


def antidiag_spectrum(a: AntidiagonalSpec, tol: Tolerance = DEFAULT_TOL) -> AntidiagSpectrum:
    """Spectrum, determinant and trace in closed form.

    Eigenvalues come in pairs -sqrt(a_k) sqrt(a_{k+1}), +sqrt(a_k) sqrt(a_{k+1})
    per transpose pair (the product of principal roots, not the root of the
    product), preceded by the center element for odd n.  The determinant is
    (-1)^floor(n/2) times the coefficient product; the trace is the center
    element (0 for even n).
    """
    pairs, center = transpose_pairs(a, tol)
    eigs = []
    if center is not None:
        eigs.append(complex(center))
    for p in pairs:
        lam = principal_sqrt(p.low) * principal_sqrt(p.high)
        eigs.extend([-lam, lam])
    det = complex((-1) ** (a.n // 2) * np.prod(np.array(a.coeffs, dtype=np.complex128)))
    trace = complex(a.coeffs[0]) if a.n % 2 == 1 else 0j
    report = spectrum_symmetry(eigs, trace=trace, tol=tol)
    return AntidiagSpectrum(report, det, trace)
