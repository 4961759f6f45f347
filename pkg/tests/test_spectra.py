"""Symmetric / c-symmetric multiset classification."""

import numpy as np

from antidiagkit.spectra import spectrum_symmetry


def test_symmetric_example():
    r = spectrum_symmetry([-2, 2, -np.sqrt(6), np.sqrt(6)], trace=0)
    assert r.symmetric and not r.c_symmetric


def test_c_symmetric_example():
    r = spectrum_symmetry([5, -1, 1], trace=5)
    assert r.c_symmetric and r.center == 5
    assert not r.symmetric


def test_neither():
    r = spectrum_symmetry([1, 2], trace=3)
    assert not r.symmetric and not r.c_symmetric and r.center is None


def test_zero_self_pairs():
    assert spectrum_symmetry([0.0], trace=0).symmetric
    assert spectrum_symmetry([0.0, 0.0, 0.0], trace=0).symmetric
    r = spectrum_symmetry([0.0, -3.0, 3.0], trace=0)
    assert r.symmetric and r.c_symmetric and abs(r.center) < 1e-12


def test_multiplicity_must_match():
    assert not spectrum_symmetry([1, 1, -1], trace=1).symmetric
    assert spectrum_symmetry([1, 1, -1, -1], trace=0).symmetric


def test_complex_pairs():
    vals = [1 + 2j, -1 - 2j, 0.5j, -0.5j]
    assert spectrum_symmetry(vals, trace=0).symmetric


def test_center_tracks_trace():
    r = spectrum_symmetry([2 + 1j, -(2 + 1j), 7 - 3j], trace=7 - 3j)
    assert r.c_symmetric and r.center == 7 - 3j
