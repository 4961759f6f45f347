"""Symmetric and center-symmetric spectrum tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tolerances import DEFAULT_TOL, Tolerance, cluster_cutoff


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple
    symmetric: bool
    c_symmetric: bool
    center: complex | None


def _pairs_up(values, threshold) -> bool:
    # greedy +/- pairing, largest modulus first; a value within threshold
    # of zero may pair with itself
    pool = sorted(values, key=abs, reverse=True)
    while pool:
        lam = pool.pop(0)
        if not pool:
            return abs(lam) <= threshold
        dists = [abs(lam + mu) for mu in pool]
        j = int(np.argmin(dists))
        if dists[j] <= threshold:
            pool.pop(j)
        elif abs(lam) <= threshold:
            continue
        else:
            return False
    return True


def spectrum_symmetry(eigs, trace=None, tol: Tolerance = DEFAULT_TOL) -> SpectrumReport:
    """Classify an eigenvalue multiset as symmetric / c-symmetric.

    Center-symmetry is only defined for odd cardinality; the candidate
    center is the eigenvalue nearest the trace, which equals the center
    whenever the multiset is c-symmetric at all.
    """
    values = [complex(v) for v in np.asarray(eigs, dtype=np.complex128).ravel()]
    scale = max([abs(v) for v in values], default=0.0)
    threshold = cluster_cutoff(scale, tol)
    symmetric = _pairs_up(values, threshold)
    c_symmetric = False
    center = None
    if values and len(values) % 2 == 1:
        target = complex(trace) if trace is not None else complex(np.sum(values))
        idx = int(np.argmin([abs(v - target) for v in values]))
        rest = values[:idx] + values[idx + 1:]
        if _pairs_up(rest, threshold):
            c_symmetric = True
            center = values[idx]
    return SpectrumReport(tuple(values), symmetric, c_symmetric, center)
