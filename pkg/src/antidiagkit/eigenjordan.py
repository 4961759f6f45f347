"""Eigendecomposition, Jordan form, and antidiagonalizability classifiers.

Modal-matrix conventions follow the center-outward pair layout: the pair
slot j couples the rows (upper, lower) mirrored about the matrix center,
and its two modal columns live in that 2-plane.  For a nondefective pair
the columns are (-r, 1) and (r, 1) with r = sqrt(upper)/sqrt(lower),
eigenvalues -sqrt(upper)sqrt(lower) and +sqrt(upper)sqrt(lower); the
odd-size center row carries the single column omega * e_center.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .antidiag import AntidiagonalSpec, transpose_pairs, zero_cutoff
from .errors import LinearlyDependentChoice, PrecondViolated
from .matcore import frobenius, principal_sqrt
from .spectra import SpectrumReport, spectrum_symmetry  # re-exported surface
from .tolerances import DEFAULT_TOL, Tolerance, cluster_cutoff

__all__ = [
    "SpectrumReport", "spectrum_symmetry",
    "EigenDecomposition", "Defective", "JordanDecomposition", "DirectSum",
    "Classification", "NilpotencyTriad",
    "antidiag_eigendecomposition", "lambda_inverse_shortcut", "antidiag_jordan",
    "similarity_direct_sum", "classify_antidiagonalizable", "nilpotency_triad",
    "is_diagonalizable", "pair_slots", "PairSlot",
]


@dataclass(frozen=True)
class PairSlot:
    """Geometry of one transpose-pair slot.

    upper/lower are the coefficient values at the block's top-right and
    bottom-left; urow/lrow the 0-based rows they couple.  k is the 1-based
    index of the pair's first coefficient a_k.
    """

    j: int
    k: int
    upper: complex
    lower: complex
    urow: int
    lrow: int
    upper_is_low_index: bool


def pair_slots(spec: AntidiagonalSpec):
    n = spec.n
    slots = []
    if n % 2 == 0:
        half = n // 2
        for j in range(1, half + 1):
            k = 2 * j - 1
            slots.append(PairSlot(j, k, complex(spec.coeffs[k - 1]), complex(spec.coeffs[k]),
                                  half - j, half + j - 1, True))
    else:
        c = (n + 1) // 2
        for j in range(1, (n - 1) // 2 + 1):
            k = 2 * j
            slots.append(PairSlot(j, k, complex(spec.coeffs[k]), complex(spec.coeffs[k - 1]),
                                  c - j - 1, c + j - 1, False))
    return slots


def _classify_slot(slot: PairSlot, cut: float) -> str:
    uz = abs(slot.upper) <= cut
    lz = abs(slot.lower) <= cut
    if uz and lz:
        return "zero"
    if uz != lz:
        return "defective"
    return "regular"


def _pair_eigenvalue(slot: PairSlot) -> complex:
    return principal_sqrt(slot.upper) * principal_sqrt(slot.lower)


def _default_w():
    return (np.array([1.0, 0.0], dtype=np.complex128),
            np.array([0.0, 1.0], dtype=np.complex128))


def _check_w(w1, w2, label):
    w1 = np.asarray(w1, dtype=np.complex128).reshape(2)
    w2 = np.asarray(w2, dtype=np.complex128).reshape(2)
    det = w1[0] * w2[1] - w1[1] * w2[0]
    scale = max(np.abs(w1).max(), np.abs(w2).max(), 1e-300)
    if abs(det) <= 1e-12 * scale * scale:
        raise LinearlyDependentChoice(
            f"replacement vectors for pair slot {label} are linearly dependent")
    return w1, w2


@dataclass(frozen=True)
class EigenDecomposition:
    lam: np.ndarray
    d: np.ndarray
    free_vector_slots: tuple


@dataclass(frozen=True)
class Defective:
    """Diagonalization refused: these transpose pairs are defective."""

    pairs: tuple


def antidiag_eigendecomposition(spec: AntidiagonalSpec, w_choices=None, omega=1.0,
                                tol: Tolerance = DEFAULT_TOL):
    """Explicit eigendecomposition A = Lam D Lam^{-1}, or Defective(pairs).

    ``w_choices`` maps a pair-slot number to the replacement column pair
    for an all-zero slot (components in (upper, lower) coordinates);
    ``omega`` scales the center column for odd sizes.
    """
    omega = complex(omega)
    if omega == 0:
        raise ValueError("omega must be nonzero")
    w_choices = dict(w_choices or {})
    n = spec.n
    cut = zero_cutoff(spec, tol)
    slots = pair_slots(spec)

    bad = [p for p in transpose_pairs(spec, tol)[0] if p.defective]
    if bad:
        return Defective(tuple(bad))

    lam = np.zeros((n, n), dtype=np.complex128)
    dvals = np.zeros(n, dtype=np.complex128)
    free = []
    col = 0
    if n % 2 == 1:
        lam[(n + 1) // 2 - 1, 0] = omega
        dvals[0] = spec.coeffs[0]
        col = 1
    for slot in slots:
        kind = _classify_slot(slot, cut)
        if kind == "zero":
            w1, w2 = w_choices.get(slot.j, _default_w())
            w1, w2 = _check_w(w1, w2, slot.j)
            lam[slot.urow, col], lam[slot.lrow, col] = w1
            lam[slot.urow, col + 1], lam[slot.lrow, col + 1] = w2
            free.append(slot.j)
        else:
            r = principal_sqrt(slot.upper) / principal_sqrt(slot.lower)
            lam[slot.urow, col] = -r
            lam[slot.lrow, col] = 1.0
            lam[slot.urow, col + 1] = r
            lam[slot.lrow, col + 1] = 1.0
        ev = _pair_eigenvalue(slot)
        dvals[col] = -ev
        dvals[col + 1] = ev
        col += 2
    return EigenDecomposition(lam, np.diag(dvals), tuple(free))


def lambda_inverse_shortcut(lam, a_nonsingular: bool, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Closed-form inverse of the modal matrix: half the transposed reciprocal.

    Guaranteed only when the source matrix is nonsingular (no zero and no
    defective pairs).  For odd sizes the center entry is not halved: the
    omega column meets one structural 1 instead of two, so the printed
    half-reciprocal rule applies everywhere except that single entry.
    """
    if not a_nonsingular:
        raise PrecondViolated(
            "closed-form modal inverse requires a nonsingular source matrix "
            "(no zero pairs, no defective pairs)")
    lam = matcore.ensure_square(lam)
    n = lam.shape[0]
    out = np.zeros_like(lam)
    nz = lam != 0
    out[nz.T] = 0.5 / lam.T[nz.T]
    if n % 2 == 1:
        c = (n + 1) // 2 - 1
        out[0, c] *= 2.0
    return out


@dataclass(frozen=True)
class JordanDecomposition:
    """Jordan data in the fixed layout: nilpotent 2-blocks first, then the
    palindromic diagonal tail (center element in the middle for odd n).

    ``lambda_g`` targets the relabeled matrix in which every defective
    pair has its nonzero element at the block's top-right; the recorded
    ``relabel_fix`` permutation restores the original orientation, so the
    original matrix equals  (relabel_fix @ lambda_g) J (...)^{-1}.
    """

    lambda_g: np.ndarray
    jordan: np.ndarray
    relabel_fix: np.ndarray
    relabeled_spec: AntidiagonalSpec
    nilpotent_blocks: int
    diag_part: tuple
    center: complex | None
    column_slots: tuple

    @property
    def nil_part_size(self) -> int:
        return 2 * self.nilpotent_blocks

    @property
    def modal_full(self) -> np.ndarray:
        return self.relabel_fix @ self.lambda_g


def antidiag_jordan(spec: AntidiagonalSpec, x=1.0, y=0.0,
                    tol: Tolerance = DEFAULT_TOL) -> JordanDecomposition:
    """Jordan decomposition, total on all antidiagonal matrices.

    Each defective pair contributes one [[0, 1], [0, 0]] block with
    generalized-eigenvector columns (x, 0) and (y, x/tau); nondefective
    pairs land on the diagonal tail.  Agrees with the eigendecomposition
    (same diagonal multiset, same reconstruction) when nothing is defective.
    """
    x = complex(x)
    y = complex(y)
    if x == 0:
        raise ValueError("x must be nonzero")
    n = spec.n
    cut = zero_cutoff(spec, tol)
    slots = pair_slots(spec)

    defective = [s for s in slots if _classify_slot(s, cut) == "defective"]
    regular = [s for s in slots if _classify_slot(s, cut) != "defective"]

    fix = np.eye(n, dtype=np.complex128)
    coeffs = list(spec.coeffs)
    for s in defective:
        if abs(s.upper) <= cut:  # nonzero must sit at the top-right
            coeffs[s.k - 1], coeffs[s.k] = coeffs[s.k], coeffs[s.k - 1]
            fix[s.urow, s.urow] = fix[s.lrow, s.lrow] = 0.0
            fix[s.urow, s.lrow] = fix[s.lrow, s.urow] = 1.0
    relabeled = AntidiagonalSpec(tuple(coeffs))
    slots = {s.j: s for s in pair_slots(relabeled)}

    lam = np.zeros((n, n), dtype=np.complex128)
    jordan = np.zeros((n, n), dtype=np.complex128)
    column_slots = []
    col = 0
    for s in defective:
        s = slots[s.j]
        tau = s.upper
        lam[s.urow, col] = x
        lam[s.urow, col + 1] = y
        lam[s.lrow, col + 1] = x / tau
        jordan[col, col + 1] = 1.0
        column_slots.extend([s.j, s.j])
        col += 2

    tail_minus = col
    m = len(regular)
    diag_vals = []
    for idx, s in enumerate(regular):
        s = slots[s.j]
        ev = _pair_eigenvalue(s)
        diag_vals.append(ev)
        pos_minus = tail_minus + idx
        pos_plus = n - 1 - idx
        if _classify_slot(s, cut) == "zero":
            w1, w2 = _default_w()
            lam[s.urow, pos_minus], lam[s.lrow, pos_minus] = w1
            lam[s.urow, pos_plus], lam[s.lrow, pos_plus] = w2
        else:
            r = principal_sqrt(s.upper) / principal_sqrt(s.lower)
            lam[s.urow, pos_minus] = -r
            lam[s.lrow, pos_minus] = 1.0
            lam[s.urow, pos_plus] = r
            lam[s.lrow, pos_plus] = 1.0
        jordan[pos_minus, pos_minus] = -ev
        jordan[pos_plus, pos_plus] = ev
    center = None
    if n % 2 == 1:
        mid = tail_minus + m
        c = (n + 1) // 2 - 1
        lam[c, mid] = 1.0
        center = complex(spec.coeffs[0])
        jordan[mid, mid] = center
        slot_ids = [0]
    else:
        slot_ids = []

    ids = [s.j for s in regular]
    column_slots += ids + slot_ids + ids[::-1]
    return JordanDecomposition(lam, jordan, fix, relabeled,
                               len(defective), tuple(diag_vals), center,
                               tuple(column_slots))


@dataclass(frozen=True)
class DirectSum:
    nil_blocks: tuple
    diag_blocks: tuple
    center: complex | None


def similarity_direct_sum(spec: AntidiagonalSpec, tol: Tolerance = DEFAULT_TOL) -> DirectSum:
    """Similarity-class direct sum: one [[0,1],[0,0]] per defective pair,
    one lambda * diag(1, -1) per nondefective pair, center * (1) for odd n."""
    cut = zero_cutoff(spec, tol)
    nil = []
    diag = []
    for s in pair_slots(spec):
        kind = _classify_slot(s, cut)
        if kind == "defective":
            nil.append(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128))
        else:
            diag.append(_pair_eigenvalue(s) * np.diag([1.0, -1.0]).astype(np.complex128))
    center = complex(spec.coeffs[0]) if spec.n % 2 == 1 else None
    return DirectSum(tuple(nil), tuple(diag), center)


# ---------------------------------------------------------------------------
# Classifiers for general dense matrices
# ---------------------------------------------------------------------------

def _eig_clusters(values, threshold):
    """Greedy clusters as (center, multiplicity, radius)."""
    groups = []
    for v in sorted(values, key=lambda z: (z.real, z.imag)):
        for g in groups:
            if abs(v - sum(g) / len(g)) <= threshold:
                g.append(v)
                break
        else:
            groups.append([v])
    out = []
    for g in groups:
        center = sum(g) / len(g)
        out.append((center, len(g), max(abs(v - center) for v in g)))
    return out


def is_diagonalizable(m, tol: Tolerance = DEFAULT_TOL, scale: float | None = None) -> bool:
    """Every eigenvalue cluster has geometric = algebraic multiplicity.

    ``scale`` sets the zero/cluster resolution; callers testing a product
    like M @ M pass the natural scale ||M||^2 so that rounding noise in an
    exactly-zero product is not mistaken for structure.
    """
    m = matcore.ensure_square(m)
    n = m.shape[0]
    values = matcore.eig_dense(m, tol=tol).values
    if scale is None:
        scale = frobenius(m)
    threshold = cluster_cutoff(scale, tol)
    eye = np.eye(n)
    for lam, alg, radius in _eig_clusters([complex(v) for v in values], threshold):
        if alg > 1 or abs(lam) <= threshold:
            # rank floor sits above the cluster's own spread: members that
            # merely sit close to the center must count as zero directions,
            # while a defective chain leaves a large coupling singular value
            rank_tol = Tolerance(rel=tol.rel,
                                 abs=max(tol.abs, tol.rel * scale, 4.0 * radius))
            if matcore.nullity(m - lam * eye, rank_tol) != alg:
                return False
    return True


@dataclass(frozen=True)
class Classification:
    antidiagonalizable: bool
    reason: str
    witness: np.ndarray | None


def classify_antidiagonalizable(m, tol: Tolerance = DEFAULT_TOL) -> Classification:
    """Decide similarity to an antidiagonal matrix.

    Holds iff the spectrum is symmetric (even size) or c-symmetric (odd
    size), every nonzero eigenvalue has geometric multiplicity equal to
    its algebraic one, and the zero eigenvalue carries no chain longer
    than 2 (tested through the nullities of M, M^2, M^3).
    """
    m = matcore.ensure_square(m)
    n = m.shape[0]
    values = [complex(v) for v in matcore.eig_dense(m, tol=tol).values]
    scale = frobenius(m)
    threshold = cluster_cutoff(scale, tol)

    report = spectrum_symmetry(values, trace=np.trace(m), tol=tol)
    if n % 2 == 0 and not report.symmetric:
        return Classification(False, "spectrum not symmetric", None)
    if n % 2 == 1 and not report.c_symmetric:
        return Classification(False, "spectrum not c-symmetric", None)

    zero_mult = sum(1 for v in values if abs(v) <= threshold)
    nonzero = [v for v in values if abs(v) > threshold]
    eye = np.eye(n)
    for lam, alg, radius in _eig_clusters(nonzero, threshold):
        rank_tol = Tolerance(rel=tol.rel, abs=max(tol.abs, tol.rel * scale, 4.0 * radius))
        if alg > 1 and matcore.nullity(m - lam * eye, rank_tol) != alg:
            return Classification(
                False, f"nonzero eigenvalue {lam:.6g} is defective", None)

    n_blocks2 = 0
    if zero_mult:
        # zero floors for M^k follow the natural scale ||M||^k so that an
        # exactly-nilpotent power made of rounding noise still ranks as 0;
        # rel * ||M||^k sits above the eps-level noise and below any pair
        # eigenvalue the spectral clustering resolves as nonzero
        m2 = m @ m
        floor = lambda k: Tolerance(rel=tol.rel, abs=max(tol.abs, tol.rel * scale ** k))
        n1 = matcore.nullity(m, floor(1))
        n2 = matcore.nullity(m2, floor(2))
        n3 = matcore.nullity(m2 @ m, floor(3))
        if n3 != n2:
            return Classification(False, "rank-3 nilpotent chain at eigenvalue 0", None)
        n_blocks2 = max(n2 - n1, 0)

    witness = np.zeros((n, n), dtype=np.complex128)
    at = 0
    for _ in range(n_blocks2):
        witness[at, at + 1] = 1.0
        at += 2
    rest = nonzero + [0j] * max(zero_mult - 2 * n_blocks2, 0)
    for v in sorted(rest, key=lambda z: (z.real, z.imag)):
        if at >= n:
            break
        witness[at, at] = v
        at += 1
    return Classification(True, "symmetric spectrum with admissible zero structure", witness)


@dataclass(frozen=True)
class NilpotencyTriad:
    antidiagonalizable: bool
    nilpotent: bool
    all_rank2: bool
    consistent: bool


def nilpotency_triad(m, tol: Tolerance = DEFAULT_TOL) -> NilpotencyTriad:
    """Any two of (antidiagonalizable, nilpotent, all generalized
    eigenvectors of rank 2) imply the third; the verdict checks that on
    this instance."""
    m = matcore.ensure_square(m)
    n = m.shape[0]
    scale = frobenius(m)
    anti = classify_antidiagonalizable(m, tol).antidiagonalizable

    if scale == 0.0:
        nilpotent = True
    else:
        power = m / scale
        steps = 1
        nilpotent = False
        while steps < 2 * n:
            power = power @ power
            steps *= 2
            if frobenius(power) <= tol.cutoff(1.0):
                nilpotent = True
                break

    m2 = m @ m
    all_rank2 = (n % 2 == 0
                 and matcore.nullity(m2, tol) == n
                 and matcore.nullity(m, tol) == n // 2)

    flags = [anti, nilpotent, all_rank2]
    consistent = sum(flags) != 2
    return NilpotencyTriad(anti, nilpotent, all_rank2, consistent)
