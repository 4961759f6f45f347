"""Tolerance handling shared by every numeric comparison in the package."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Machine epsilon and its cube root.  The cube root bounds the eigenvalue
# perturbation of a 3-chain Jordan block, which is the worst structure the
# classifiers must cluster back onto an exact eigenvalue.
EPS = float(np.finfo(np.float64).eps)
EPS_CBRT = EPS ** (1.0 / 3.0)


@dataclass(frozen=True)
class Tolerance:
    """Relative/absolute tolerance pair. ``rel`` is the user-facing knob."""

    rel: float = 1e-9
    abs: float = 1e-12

    def __post_init__(self):
        for name in ("rel", "abs"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"Tolerance.{name} must be finite and >= 0, got {value}")

    def cutoff(self, scale: float) -> float:
        """Threshold below which a quantity of the given scale counts as zero."""
        return max(self.abs, self.rel * scale)

    def with_rel(self, rel: float) -> "Tolerance":
        return Tolerance(rel=rel, abs=self.abs)


DEFAULT_TOL = Tolerance()


def cluster_cutoff(scale: float, tol: Tolerance) -> float:
    """Eigenvalue clustering threshold.

    Must absorb the eps**(1/3)-sized spread that the QR iteration produces
    on the eigenvalues of a defective zero of chain length <= 3.
    """
    return max(tol.abs, tol.rel * scale, 4.0 * EPS_CBRT * scale)
