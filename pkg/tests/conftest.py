"""Shared helpers: random instance generators and independent oracles."""

import numpy as np
import pytest

from antidiagkit.antidiag import AntidiagonalSpec
from antidiagkit.eigenjordan import pair_slots


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_spec(rng, n, scale=10.0, zero_pair_prob=0.0, defective_prob=0.0):
    """Coefficients drawn from the complex unit disk, scaled."""
    c = np.empty(n, dtype=complex)
    for i in range(n):
        while True:
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if abs(z) <= 1.0:
                break
        c[i] = scale * z
    for s in pair_slots(AntidiagonalSpec(tuple(np.ones(n)))):
        u = rng.random()
        if u < zero_pair_prob:
            c[s.k - 1] = 0.0
            c[s.k] = 0.0
        elif u < zero_pair_prob + defective_prob:
            c[s.k - 1 + int(rng.integers(2))] = 0.0
    return AntidiagonalSpec(tuple(c))


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_wellconditioned(rng, n, cond_cap=1e4):
    while True:
        v = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        if n == 1 or np.linalg.cond(v) < cond_cap:
            return v


def char_poly_coeffs(m):
    """Characteristic polynomial by the trace recursion (no eigensolver)."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    mk = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = m @ mk
        if k > 1:
            mk = mk + coeffs[k - 1] * m
        coeffs[k] = -np.trace(mk) / k
    return coeffs


def brute_force_eigs(m):
    """Eigenvalues as roots of the char polynomial; independent of the QR path."""
    return np.roots(char_poly_coeffs(m))


def greedy_match_dist(w1, w2):
    pool = list(np.asarray(w2, dtype=complex))
    worst = 0.0
    for lam in np.asarray(w1, dtype=complex):
        j = int(np.argmin([abs(lam - mu) for mu in pool]))
        worst = max(worst, abs(lam - pool.pop(j)))
    return worst


def bfs_two_coloring(adj):
    """BFS 2-coloring oracle: True iff the (undirected) graph is bipartite."""
    n = adj.shape[0]
    color = [-1] * n
    for start in range(n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop(0)
            for v in range(n):
                if adj[u, v] != 0:
                    if color[v] == -1:
                        color[v] = 1 - color[u]
                        queue.append(v)
                    elif color[v] == color[u]:
                        return False
    return True
