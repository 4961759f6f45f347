"""Schur decompositions of antidiagonal matrices.

The 2x2 building block carries two free real phases (phi, t) on top of
the coefficients' polar data; the n x n quasidiagonal Schur form chains
one such block per transpose pair at the phi = t/2 slice, which is what
keeps the conjugated block upper triangular.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .antidiag import AntidiagonalSpec, to_dense, zero_cutoff
from .eigenjordan import pair_slots
from .errors import BothZero, SingularFreeBlock
from .matcore import frobenius, principal_sqrt
from .tolerances import DEFAULT_TOL, Tolerance


def _polar(z):
    z = complex(z)
    r = abs(z)
    return r, (cmath.phase(z) if r > 0 else 0.0)


@dataclass(frozen=True)
class SchurBlock2:
    a1: complex
    a2: complex
    phi: float
    t: float
    gamma: np.ndarray
    triangular: np.ndarray


def schur_2x2(a1, a2, phi: float = 0.0, t: float = 0.0) -> SchurBlock2:
    """Schur decomposition of [[0, a1], [a2, 0]] with free phases phi, t.

    gamma is unitary for every (phi, t); the Schur form has diagonal
    (-sqrt(a1) sqrt(a2), +sqrt(a1) sqrt(a2)) and upper-right entry
    (r2 - r1) e^{i (2 phi + theta1 - t)}.  Conjugation commutes both ways
    iff phi = t/2, and gamma is an involution iff phi = t = 0.
    """
    a1, a2 = complex(a1), complex(a2)
    if a1 == 0 and a2 == 0:
        raise BothZero("at least one of the two coefficients must be nonzero")
    r1, th1 = _polar(a1)
    r2, th2 = _polar(a2)
    rsum = r1 + r2
    c1 = math.sqrt(r1 / rsum)
    c2 = math.sqrt(r2 / rsum)
    half = 0.5 * (th1 - th2)
    gamma = np.array([
        [-cmath.exp(1j * phi) * c1, cmath.exp(1j * (phi + half)) * c2],
        [cmath.exp(1j * ((t - phi) - half)) * c2, cmath.exp(1j * (t - phi)) * c1],
    ], dtype=np.complex128)
    p = principal_sqrt(a1) * principal_sqrt(a2)
    tri = np.array([
        [-p, cmath.exp(1j * (2 * phi + th1 - t)) * (r2 - r1)],
        [0.0, p],
    ], dtype=np.complex128)
    return SchurBlock2(a1, a2, float(phi), float(t), gamma, tri)


@dataclass(frozen=True)
class QuasiSchurDecomposition:
    upsilon: np.ndarray
    s: np.ndarray
    t_params: tuple
    omega: complex


def _involution_gamma(top, bot):
    """The involutory (phi = t = 0) unitary triangularizing [[0, top], [bot, 0]]."""
    r1, th1 = _polar(top)
    r2, th2 = _polar(bot)
    rsum = r1 + r2
    c1 = math.sqrt(r1 / rsum)
    c2 = math.sqrt(r2 / rsum)
    half = 0.5 * (th1 - th2)
    return np.array([
        [-c1, cmath.exp(1j * half) * c2],
        [cmath.exp(-1j * half) * c2, c1],
    ], dtype=np.complex128)


def quasidiag_schur(spec: AntidiagonalSpec, t_params=None, omega=1.0,
                    free_blocks=None, tol: Tolerance = DEFAULT_TOL) -> QuasiSchurDecomposition:
    """Quasidiagonal Schur decomposition A = Upsilon S Upsilon^{-1}.

    S carries the pair blocks
        [[-sqrt(a_k) sqrt(a_{k+1}), (r_{k+1} - r_k) e^{i t_k}],
         [0,                        +sqrt(a_k) sqrt(a_{k+1})]]
    preceded by the center element for odd sizes; diag(S) is the closed
    form spectrum in its slot order.  Upsilon is unitary whenever the
    free blocks supplied for all-zero pairs are (default: identity).
    A per-pair diagonal phase pins the off-diagonal to the e^{i t_k}
    convention while keeping the reconstruction exact.
    """
    omega = complex(omega)
    if omega == 0:
        raise ValueError("omega must be nonzero")
    n = spec.n
    slots = pair_slots(spec)
    t_list = [0.0] * len(slots) if t_params is None else list(t_params)
    if len(t_list) != len(slots):
        raise ValueError(f"expected {len(slots)} phase parameters, got {len(t_list)}")
    free_blocks = dict(free_blocks or {})
    cut = zero_cutoff(spec, tol)

    ups = np.zeros((n, n), dtype=np.complex128)
    s = np.zeros((n, n), dtype=np.complex128)
    col = 0
    if n % 2 == 1:
        ups[(n + 1) // 2 - 1, 0] = omega
        s[0, 0] = spec.coeffs[0]
        col = 1
    for slot, t_k in zip(slots, t_list):
        low = spec.coeffs[slot.k - 1]
        high = spec.coeffs[slot.k]
        if abs(low) <= cut and abs(high) <= cut:
            blk = np.asarray(free_blocks.get(slot.j, np.eye(2)), dtype=np.complex128)
            if blk.shape != (2, 2):
                raise ValueError(f"free block for slot {slot.j} must be 2x2")
            if abs(blk[0, 0] * blk[1, 1] - blk[0, 1] * blk[1, 0]) <= 1e-14:
                raise SingularFreeBlock(f"free block for pair slot {slot.j} is singular")
            ub = blk
            # zero block conjugates to zero: S block stays 0
        else:
            g = _involution_gamma(slot.upper, slot.lower)
            p = principal_sqrt(slot.upper) * principal_sqrt(slot.lower)
            target = (abs(high) - abs(low)) * cmath.exp(1j * t_k)
            raw = complex(g[0] @ np.array([[0, slot.upper], [slot.lower, 0]]) @ g[:, 1])
            if abs(raw) > 0 and abs(target) > 0:
                ang = cmath.phase(target / raw)
            else:
                ang = 0.0
            dphase = np.array([cmath.exp(0.5j * ang), cmath.exp(-0.5j * ang)])
            ub = g * dphase.conj()[None, :]
            s[col, col] = -p
            s[col + 1, col + 1] = p
            s[col, col + 1] = target
        ups[slot.urow, col], ups[slot.urow, col + 1] = ub[0]
        ups[slot.lrow, col], ups[slot.lrow, col + 1] = ub[1]
        col += 2
    return QuasiSchurDecomposition(ups, s, tuple(float(t) for t in t_list), omega)


def unitary_direct_sum(spec: AntidiagonalSpec, t_per_pair=None,
                       tol: Tolerance = DEFAULT_TOL):
    """Unitary-similarity direct sum: one upper triangular 2x2 block per
    transpose pair, plus the 1x1 center block for odd sizes (listed last)."""
    slots = pair_slots(spec)
    t_list = [0.0] * len(slots) if t_per_pair is None else list(t_per_pair)
    if len(t_list) != len(slots):
        raise ValueError(f"expected {len(slots)} phase parameters, got {len(t_list)}")
    blocks = []
    for slot, t_k in zip(slots, t_list):
        low = spec.coeffs[slot.k - 1]
        high = spec.coeffs[slot.k]
        p = principal_sqrt(low) * principal_sqrt(high)
        blocks.append(np.array([
            [-p, (abs(high) - abs(low)) * cmath.exp(1j * t_k)],
            [0.0, p],
        ], dtype=np.complex128))
    if spec.n % 2 == 1:
        blocks.append(np.array([[spec.coeffs[0]]], dtype=np.complex128))
    return blocks


@dataclass(frozen=True)
class SchurVerification:
    unitary_residual: float
    antidiag_residual: float
    schur_residual: float
    s_upper_triangular: bool
    s_quasidiagonal: bool
    passed: bool


def verify_quasidiag_schur_form(m, u, spec: AntidiagonalSpec,
                                tol: Tolerance = DEFAULT_TOL) -> SchurVerification:
    """Check that U antidiagonalizes M to the spec, then exhibit M's
    quasidiagonal Schur form by composing with the spec's own Schur
    decomposition.  Failures are reported, not raised."""
    m = matcore.ensure_square(m)
    u = matcore.ensure_square(u)
    n = m.shape[0]
    scale = max(1.0, frobenius(m))
    ru = frobenius(u.conj().T @ u - np.eye(n))
    a = to_dense(spec)
    ra = frobenius(u @ a @ u.conj().T - m) / scale
    dec = quasidiag_schur(spec, tol=tol)
    w = u @ dec.upsilon
    rs = frobenius(w @ dec.s @ w.conj().T - m) / scale
    upper = matcore.is_upper_triangular(dec.s, tol)
    quasi = matcore.quasidiagonal_partition(dec.s, tol) is not None
    gate = max(tol.abs, tol.rel * n * 10.0)
    passed = ru <= gate and ra <= gate and rs <= gate and upper and quasi
    return SchurVerification(ru, ra, rs, upper, quasi, passed)
