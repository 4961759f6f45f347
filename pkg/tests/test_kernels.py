"""Backend parity and Schur-kernel correctness."""

import numpy as np
import pytest

from antidiagkit._kernels import available_backends, schur_form
from antidiagkit.errors import NoConvergence
from antidiagkit.matcore import eig_dense

BACKENDS = available_backends()


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_schur_reconstruction_random(name, rng):
    mod = BACKENDS[name]
    for trial in range(60):
        n = int(rng.integers(1, 25))
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        if trial % 3 == 0:
            a = (a + a.conj().T) / 2
        t, u, sweeps = mod.schur_form(a, 30 * n)
        assert sweeps >= 0
        assert np.allclose(np.tril(t, -1), 0)
        assert np.linalg.norm(u.conj().T @ u - np.eye(n)) < 1e-12
        assert np.linalg.norm(u @ t @ u.conj().T - a) < 1e-12 * max(1, np.linalg.norm(a))


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_schur_permutation_stall_cases(name):
    # cyclic shifts defeat unshifted QR; the exceptional shift must kick in
    mod = BACKENDS[name]
    for n in range(2, 20):
        p = np.roll(np.eye(n), 1, axis=1).astype(complex)
        t, u, sweeps = mod.schur_form(p, 30 * n)
        assert sweeps >= 0
        assert np.allclose(u @ t @ u.conj().T, p, atol=1e-12)


def test_backends_agree(rng):
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend unavailable")
    for _ in range(25):
        n = int(rng.integers(2, 20))
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        results = {}
        for name, mod in BACKENDS.items():
            t, u, s = mod.schur_form(a, 30 * n)
            assert s >= 0
            results[name] = np.sort_complex(np.diag(t))
        vals = list(results.values())
        pool = list(vals[1])
        for lam in vals[0]:
            j = int(np.argmin([abs(lam - m) for m in pool]))
            assert abs(lam - pool.pop(j)) < 1e-10 * max(1, np.linalg.norm(a))


def test_sweep_budget_exhaustion(rng):
    a = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    t, u, status = schur_form(a, 1)
    assert status < 0
    with pytest.raises(NoConvergence):
        eig_dense(a, max_sweeps=1)
