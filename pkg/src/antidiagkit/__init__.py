"""antidiagkit: antidiagonal matrices, their algebra, and every
constructive decomposition attached to them.

Layers:

- ``matcore``     dense complex foundation (arithmetic, LU, in-repo
                  Hessenberg+QR eigensolver, structural predicates)
- ``antidiag``    the center-outward coefficient representation and its
                  closed-form products, inverses, powers, and spectra
- ``permsim``     permutation quasidiagonalization, real Schur form of
                  antisymmetric antidiagonal matrices, orthogonal
                  antidiagonalization of real antisymmetric matrices
- ``eigenjordan`` explicit eigendecomposition, Jordan form, direct sums,
                  antidiagonalizability classifiers
- ``duodiag``     normal antidiagonal matrices, symmetric/antisymmetric
                  antidiagonalizations, centrosymmetric transport
- ``schur``       2x2 Schur building block and the quasidiagonal Schur
                  decomposition
- ``cli``         the ``antidiag`` command line tool
"""

from ._kernels import BACKEND_NAME as kernel_backend
from .antidiag import (AntidiagonalSpec, AntidiagSpectrum, TransposePair,
                       antidiag_inverse, antidiag_power, antidiag_product,
                       antidiag_spectrum, exchange_factor, from_dense,
                       reciprocal, to_dense, transpose_pairs)
from .duodiag import (Antidiagonalization, antisymmetric_antidiagonalization,
                      centrosymmetric_transport, classify_duodiagonalizable,
                      is_centrosymmetric, normal_antidiag_check,
                      symmetric_antidiagonalization,
                      unitary_diagonalize_normal_antidiag)
from .eigenjordan import (Defective, EigenDecomposition, JordanDecomposition,
                          antidiag_eigendecomposition, antidiag_jordan,
                          classify_antidiagonalizable, is_diagonalizable,
                          lambda_inverse_shortcut, nilpotency_triad,
                          similarity_direct_sum)
from .matcore import (EigResult, StructureFlags, approx_eq, eig_dense,
                      exchange_matrix, mat_inverse, mat_mul, predicates)
from .permsim import (PermQuasiDecomposition, is_q_pseudo_hollow_quasidiagonal,
                      orth_antidiagonalize_real_antisym,
                      pair_permutation_conjugator, perm_quasidiag,
                      real_schur_antisym_antidiag)
from .schur import (QuasiSchurDecomposition, SchurBlock2, quasidiag_schur,
                    schur_2x2, unitary_direct_sum, verify_quasidiag_schur_form)
from .spectra import SpectrumReport, spectrum_symmetry
from .tolerances import DEFAULT_TOL, Tolerance

__version__ = "0.1.0"
