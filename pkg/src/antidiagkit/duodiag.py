"""Duodiagonalizable matrices: normal antidiagonal forms, symmetric and
antisymmetric antidiagonalizations, centrosymmetric transport.

A matrix that is diagonalizable with a symmetric (even size) or
c-symmetric (odd size) spectrum is similar to both a diagonal and an
antidiagonal matrix.  Once its diagonalization (V, D) is in the paired
layout (-lambda, +lambda per slot, center first for odd sizes), the
antidiagonal targets below are reached through constant modal matrices
that do not depend on the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .antidiag import AntidiagonalSpec, to_dense, transpose_pairs, zero_cutoff
from .eigenjordan import is_diagonalizable, pair_slots
from .errors import (InvalidDiagonalization, NotCentrosymmetric, NotNormal,
                     NotTraceless, SingularMatrix, SingularTransform)
from .matcore import exchange_matrix, frobenius, principal_sqrt
from .spectra import spectrum_symmetry
from .tolerances import DEFAULT_TOL, Tolerance, cluster_cutoff

_SQRT2 = float(np.sqrt(2.0))


# ---------------------------------------------------------------------------
# Classification and paired diagonalization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DuoClassification:
    duodiagonalizable: bool
    reason: str
    v: np.ndarray | None
    d: np.ndarray | None


def _paired_order(values, trace, threshold):
    """Index order putting the center first (odd count), then (-l, +l) slots."""
    idx = list(range(len(values)))
    order = []
    if len(values) % 2 == 1:
        c = min(idx, key=lambda i: abs(values[i] - trace))
        order.append(c)
        idx.remove(c)
    while idx:
        i = max(idx, key=lambda i: abs(values[i]))
        idx.remove(i)
        j = min(idx, key=lambda j: abs(values[j] + values[i]))
        if abs(values[j] + values[i]) > threshold:
            return None
        idx.remove(j)
        # the slot lists the "minus" member first
        a, b = values[i], values[j]
        if (a.real, a.imag) <= (b.real, b.imag):
            order.extend([i, j])
        else:
            order.extend([j, i])
    return order


def _orthonormalize_clusters(v, ordered_values, threshold):
    """Gram-Schmidt within each repeated-eigenvalue cluster, in place.

    Any basis of an eigenspace is a valid eigenvector set, and the
    back-substituted vectors of a multiple eigenvalue need not come out
    orthogonal even for normal input.
    """
    n = len(ordered_values)
    grouped = []
    for i in range(n):
        for g in grouped:
            if abs(ordered_values[i] - ordered_values[g[0]]) <= threshold:
                g.append(i)
                break
        else:
            grouped.append([i])
    for g in grouped:
        for a, i in enumerate(g):
            for j in g[:a]:
                v[:, i] -= (v[:, j].conj() @ v[:, i]) * v[:, j]
            nrm = np.linalg.norm(v[:, i])
            if nrm > 1e-8:
                v[:, i] /= nrm


def classify_duodiagonalizable(m, tol: Tolerance = DEFAULT_TOL) -> DuoClassification:
    """Diagonalizable with a symmetric / c-symmetric spectrum?

    On success the returned (V, D) is a paired diagonalization: D carries
    the center eigenvalue first (odd n) and matched (-lambda, +lambda)
    slots after it, with V's columns the corresponding eigenvectors.
    """
    m = matcore.ensure_square(m)
    n = m.shape[0]
    res = matcore.eig_dense(m, want_vectors=True, tol=tol)
    values = [complex(v) for v in res.values]
    report = spectrum_symmetry(values, trace=np.trace(m), tol=tol)
    if n % 2 == 0 and not report.symmetric:
        return DuoClassification(False, "spectrum not symmetric", None, None)
    if n % 2 == 1 and not report.c_symmetric:
        return DuoClassification(False, "spectrum not c-symmetric", None, None)
    if not is_diagonalizable(m, tol):
        return DuoClassification(False, "matrix is not diagonalizable", None, None)
    threshold = cluster_cutoff(frobenius(m), tol)
    order = _paired_order(values, complex(np.trace(m)), threshold)
    if order is None:
        return DuoClassification(False, "eigenvalues do not pair under negation", None, None)
    v = res.vectors[:, order].copy()
    ordered = np.asarray(values, dtype=np.complex128)[order]
    _orthonormalize_clusters(v, ordered, threshold)
    d = np.diag(ordered)
    return DuoClassification(True, "diagonalizable with paired spectrum", v, d)


def _validate_paired(m, v, d, tol: Tolerance):
    m = matcore.ensure_square(m)
    v = matcore.ensure_square(v)
    d = matcore.ensure_square(d)
    n = m.shape[0]
    if v.shape != (n, n) or d.shape != (n, n):
        raise InvalidDiagonalization("shape mismatch between M, V, D")
    if not matcore.is_diagonal_matrix(d, tol):
        raise InvalidDiagonalization("D is not diagonal")
    vals = np.diag(d)
    threshold = cluster_cutoff(frobenius(m), tol)
    start = 1 if n % 2 == 1 else 0
    for pos in range(start, n, 2):
        if abs(vals[pos] + vals[pos + 1]) > threshold:
            raise InvalidDiagonalization(
                f"diagonal slots ({pos}, {pos + 1}) are not a (-l, +l) pair")
    try:
        vinv = matcore.mat_inverse(v, tol)
    except SingularMatrix as exc:
        raise InvalidDiagonalization("V is singular") from exc
    resid = frobenius(v @ d @ vinv - m) / max(1.0, frobenius(m))
    if resid > 1e-6:
        raise InvalidDiagonalization(f"V D V^-1 does not reconstruct M (residual {resid:.2e})")
    return m, v, d, vinv


# ---------------------------------------------------------------------------
# Normal antidiagonal matrices and their unitary diagonalization
# ---------------------------------------------------------------------------

def normal_antidiag_check(spec: AntidiagonalSpec, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Normality in closed form: both elements of every pair share a modulus."""
    cut = zero_cutoff(spec, tol)
    pairs, _ = transpose_pairs(spec, tol)
    return all(abs(abs(p.low) - abs(p.high)) <= cut for p in pairs)


def unitary_modal_candidate(spec: AntidiagonalSpec, w_choices=None, omega=1.0,
                            tol: Tolerance = DEFAULT_TOL):
    """The candidate unitary modal matrix, normality not assumed.

    Columns: scaled (-r, 1)/sqrt2 and (r, 1)/sqrt2 per pair with
    r = sqrt(upper)/sqrt(lower); orthonormal replacement vectors planted
    unscaled on all-zero pairs; omega/|omega| times e_center for odd n.
    Returns None when some ratio is undefined (zero denominator under a
    nonzero numerator), in which case no such matrix exists.
    """
    w_choices = dict(w_choices or {})
    omega = complex(omega)
    if omega == 0:
        raise ValueError("omega must be nonzero")
    omega /= abs(omega)
    n = spec.n
    cut = zero_cutoff(spec, tol)
    u = np.zeros((n, n), dtype=np.complex128)
    col = 0
    if n % 2 == 1:
        u[(n + 1) // 2 - 1, 0] = omega
        col = 1
    for slot in pair_slots(spec):
        uz, lz = abs(slot.upper) <= cut, abs(slot.lower) <= cut
        if uz and lz:
            w1, w2 = w_choices.get(slot.j, _ORTHO_W)
            u[slot.urow, col], u[slot.lrow, col] = w1
            u[slot.urow, col + 1], u[slot.lrow, col + 1] = w2
        elif lz:
            return None
        else:
            r = principal_sqrt(slot.upper) / principal_sqrt(slot.lower)
            u[slot.urow, col] = -r / _SQRT2
            u[slot.lrow, col] = 1.0 / _SQRT2
            u[slot.urow, col + 1] = r / _SQRT2
            u[slot.lrow, col + 1] = 1.0 / _SQRT2
        col += 2
    return u


_ORTHO_W = (np.array([1.0, 0.0], dtype=np.complex128),
            np.array([0.0, 1.0], dtype=np.complex128))


def unitary_diagonalize_normal_antidiag(spec: AntidiagonalSpec, w_choices=None,
                                        omega=1.0, tol: Tolerance = DEFAULT_TOL):
    """Unitary diagonalization (U, D) of a normal antidiagonal matrix."""
    if not normal_antidiag_check(spec, tol):
        raise NotNormal("transpose pair moduli differ; equal moduli per pair are "
                        "required for a normal antidiagonal matrix")
    u = unitary_modal_candidate(spec, w_choices, omega, tol)
    if u is None:  # unreachable once the modulus check passed
        raise NotNormal("modal matrix undefined")
    dvals = np.zeros(spec.n, dtype=np.complex128)
    col = 0
    if spec.n % 2 == 1:
        dvals[0] = spec.coeffs[0]
        col = 1
    for slot in pair_slots(spec):
        ev = principal_sqrt(slot.upper) * principal_sqrt(slot.lower)
        dvals[col] = -ev
        dvals[col + 1] = ev
        col += 2
    return u, np.diag(dvals)


# ---------------------------------------------------------------------------
# Symmetric / antisymmetric antidiagonalizations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Antidiagonalization:
    v: np.ndarray
    a: AntidiagonalSpec
    kind: str  # symmetric | antisymmetric_plus | antisymmetric_minus | generic
    unitary: bool
    residual: float


def constant_symmetric_modal(n: int) -> np.ndarray:
    """The constant modal matrix with every ratio slot set to 1.

    Depends only on n; its scaled version unitarily diagonalizes every
    symmetric antidiagonal target produced here.
    """
    lam = np.zeros((n, n), dtype=np.complex128)
    col = 0
    if n % 2 == 1:
        lam[(n + 1) // 2 - 1, 0] = 1.0
        col = 1
    ref = AntidiagonalSpec(tuple([1.0] * n))
    for slot in pair_slots(ref):
        lam[slot.urow, col] = -1.0
        lam[slot.lrow, col] = 1.0
        lam[slot.urow, col + 1] = 1.0
        lam[slot.lrow, col + 1] = 1.0
        col += 2
    return lam


def _constant_unitary(n: int) -> np.ndarray:
    u = constant_symmetric_modal(n) / _SQRT2
    if n % 2 == 1:
        u[(n + 1) // 2 - 1, 0] *= _SQRT2
    return u


def _slot_coefficient_indices(n: int):
    """Per pair slot, the (low, high) 1-based coefficient indices."""
    if n % 2 == 0:
        return [(2 * j - 1, 2 * j) for j in range(1, n // 2 + 1)]
    return [(2 * j, 2 * j + 1) for j in range(1, (n - 1) // 2 + 1)]


def _unitary_flag(w, n, tol):
    return frobenius(w.conj().T @ w - np.eye(n)) <= max(tol.abs, tol.rel * n, 1e-8)


def symmetric_antidiagonalization(m, v, d, tol: Tolerance = DEFAULT_TOL) -> Antidiagonalization:
    """Antidiagonalize a duodiagonalizable matrix to a symmetric target.

    Both elements of each pair are set to the slot eigenvalue, so the
    modal matrix is the constant one; the emitted transform composes V
    with its unitary inverse and is unitary exactly when V is.
    """
    m, v, d, vinv = _validate_paired(m, v, d, tol)
    n = m.shape[0]
    vals = np.diag(d)
    coeffs = [0j] * n
    if n % 2 == 1:
        coeffs[0] = complex(vals[0])
    for slot, (klow, khigh) in enumerate(_slot_coefficient_indices(n)):
        lam = complex(vals[(1 if n % 2 else 0) + 2 * slot + 1])
        coeffs[klow - 1] = lam
        coeffs[khigh - 1] = lam
    a = AntidiagonalSpec(tuple(coeffs))
    u1 = _constant_unitary(n)
    w = v @ u1.conj().T
    residual = frobenius(w @ to_dense(a) @ matcore.mat_inverse(w) - m) / max(1.0, frobenius(m))
    return Antidiagonalization(w, a, "symmetric", _unitary_flag(w, n, tol), residual)


def antisymmetric_antidiagonalization(m, v, d, sign: int = +1,
                                      tol: Tolerance = DEFAULT_TOL) -> Antidiagonalization:
    """Antidiagonalize a traceless duodiagonalizable matrix to an
    antisymmetric target.

    Per slot with eigenvalue lambda the coefficients are (sign*i*lambda,
    -sign*i*lambda): mirrored entries negate each other while the pair
    spectrum stays (+lambda, -lambda).  The target is always normal, so
    the modal step is unitary and the emitted transform is unitary
    exactly when V is.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    m, v, d, vinv = _validate_paired(m, v, d, tol)
    n = m.shape[0]
    scale = max(1.0, frobenius(m))
    if abs(np.trace(m)) > max(tol.abs, cluster_cutoff(scale, tol)):
        raise NotTraceless(f"trace {np.trace(m):.4g} is nonzero; an antisymmetric "
                           "antidiagonal form requires a traceless matrix")
    vals = np.diag(d)
    coeffs = [0j] * n
    slot_lams = []
    for slot, (klow, khigh) in enumerate(_slot_coefficient_indices(n)):
        lam = complex(vals[(1 if n % 2 else 0) + 2 * slot + 1])
        coeffs[klow - 1] = sign * 1j * lam
        coeffs[khigh - 1] = -sign * 1j * lam
        slot_lams.append(lam)
    a = AntidiagonalSpec(tuple(coeffs))

    n_ = n
    cut = zero_cutoff(a, tol) if any(abs(c) for c in coeffs) else 0.0
    u2 = np.zeros((n_, n_), dtype=np.complex128)
    col = 0
    if n % 2 == 1:
        u2[(n + 1) // 2 - 1, 0] = 1.0
        col = 1
    for slot, s in enumerate(pair_slots(a)):
        lam = slot_lams[slot]
        if abs(lam) <= cut:
            u2[s.urow, col] = -1.0 / _SQRT2
            u2[s.lrow, col] = 1.0 / _SQRT2
            u2[s.urow, col + 1] = 1.0 / _SQRT2
            u2[s.lrow, col + 1] = 1.0 / _SQRT2
        else:
            r = principal_sqrt(s.upper) / principal_sqrt(s.lower)
            prod = principal_sqrt(s.upper) * principal_sqrt(s.lower)
            # column order must put the slot's -lambda eigenvector first
            flip = abs(prod - lam) > abs(prod + lam)
            cm, cp = (col, col + 1) if not flip else (col + 1, col)
            u2[s.urow, cm] = -r / _SQRT2
            u2[s.lrow, cm] = 1.0 / _SQRT2
            u2[s.urow, cp] = r / _SQRT2
            u2[s.lrow, cp] = 1.0 / _SQRT2
        col += 2
    w = v @ u2.conj().T
    residual = frobenius(w @ to_dense(a) @ matcore.mat_inverse(w) - m) / max(1.0, frobenius(m))
    kind = "antisymmetric_plus" if sign == +1 else "antisymmetric_minus"
    return Antidiagonalization(w, a, kind, _unitary_flag(w, n, tol), residual)


# ---------------------------------------------------------------------------
# Centrosymmetric transport
# ---------------------------------------------------------------------------

def is_centrosymmetric(m, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Centrosymmetric iff the matrix commutes with the exchange matrix."""
    m = matcore.ensure_square(m)
    e = exchange_matrix(m.shape[0])
    return frobenius(m @ e - e @ m) <= max(tol.abs, tol.rel * max(1.0, frobenius(m)))


@dataclass(frozen=True)
class TransportReport:
    direction: str
    diagonalizes_em: bool
    diagonalizes_me: bool
    antidiagonalizes_m: bool
    diagonalizes_m: bool
    antidiagonalizes_em: bool
    antidiagonalizes_me: bool
    equivalence_a: bool
    equivalence_b: bool
    c_unitary: bool
    residuals: dict = field(default_factory=dict)

    @property
    def primary_equivalence(self) -> bool:
        return self.equivalence_a if self.direction == "diag_to_antidiag" else self.equivalence_b


def _off_diag_residual(x):
    return frobenius(x - np.diag(np.diag(x))) / max(1.0, frobenius(x))


def _off_antidiag_residual(x):
    n = x.shape[0]
    y = x.copy()
    y[np.arange(n), n - 1 - np.arange(n)] = 0.0
    return frobenius(y) / max(1.0, frobenius(x))


def centrosymmetric_transport(c, m, direction: str = "diag_to_antidiag",
                              tol: Tolerance = DEFAULT_TOL) -> TransportReport:
    """Check the exchange between diagonalizing E M / M E and
    antidiagonalizing M (and the dual) for a centrosymmetric conjugator.

    Both implications of each part are evaluated on the instance and the
    joint verdicts reported; unitarity of C is flagged, never assumed.
    """
    if direction not in ("diag_to_antidiag", "antidiag_to_diag"):
        raise ValueError(f"unknown direction {direction!r}")
    c = matcore.ensure_square(c)
    m = matcore.ensure_square(m)
    if not is_centrosymmetric(c, tol):
        raise NotCentrosymmetric("conjugator does not commute with the exchange matrix")
    try:
        cinv = matcore.mat_inverse(c, tol)
    except SingularMatrix as exc:
        raise SingularTransform("conjugator is numerically singular") from exc
    n = m.shape[0]
    e = exchange_matrix(n)
    conj = lambda x: cinv @ x @ c
    gate = max(tol.abs, tol.rel * 100.0)

    r = {
        "em_diag": _off_diag_residual(conj(e @ m)),
        "me_diag": _off_diag_residual(conj(m @ e)),
        "m_antidiag": _off_antidiag_residual(conj(m)),
        "m_diag": _off_diag_residual(conj(m)),
        "em_antidiag": _off_antidiag_residual(conj(e @ m)),
        "me_antidiag": _off_antidiag_residual(conj(m @ e)),
    }
    d_em, d_me = r["em_diag"] <= gate, r["me_diag"] <= gate
    a_m = r["m_antidiag"] <= gate
    d_m = r["m_diag"] <= gate
    a_em, a_me = r["em_antidiag"] <= gate, r["me_antidiag"] <= gate
    return TransportReport(
        direction=direction,
        diagonalizes_em=d_em, diagonalizes_me=d_me, antidiagonalizes_m=a_m,
        diagonalizes_m=d_m, antidiagonalizes_em=a_em, antidiagonalizes_me=a_me,
        equivalence_a=(d_em and d_me) == a_m,
        equivalence_b=d_m == (a_em and a_me),
        c_unitary=frobenius(c.conj().T @ c - np.eye(n)) <= max(tol.abs, tol.rel * n, 1e-9 * n),
        residuals=r,
    )
