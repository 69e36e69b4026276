import math

import numpy as np
import pytest

import tomokernel as tk


def test_vacuum_husimi_paths_agree():
    vac = tk.number_state(0)
    assert tk.husimi_direct(vac, 0.0, 0.0) == pytest.approx(1 / (2 * math.pi), rel=1e-14)
    assert tk.husimi_from_kernel(vac, 0.0, 0.0) == pytest.approx(1 / (2 * math.pi), abs=1e-8)


def test_coherent_state_kernel_matches_direct():
    rho = tk.coherent_state(1 + 0.5j, dim=32)
    for q, p in [(0.0, 0.0), (1.4, 0.7), (-2.0, 1.0)]:
        assert abs(tk.husimi_from_kernel(rho, q, p) - tk.husimi_direct(rho, q, p)) < 1e-6


def test_density_matrix_from_array():
    elems = np.zeros((4, 4), dtype=complex)
    elems[0, 0] = elems[1, 1] = 0.5
    rho = tk.DensityMatrix(elems)
    assert rho.dim == 4
    assert rho.purity() == pytest.approx(0.5)
    with pytest.raises(tk.DomainError):
        tk.DensityMatrix(2 * elems)


def test_sampling_is_seeded_and_estimates_husimi():
    rho = tk.thermal_state(0.5, dim=16)
    a = tk.sample_eht(rho, 50_000, seed=42)
    b = tk.sample_eht(rho, 50_000, seed=42, threads=2)
    assert a.shape == (50_000, 2)
    assert np.array_equal(a, b)
    assert np.all((a[:, 0] >= 0) & (a[:, 0] < 2 * math.pi))
    mean, stderr, n = tk.husimi_mc_estimate(a, 0.3, -0.2)
    assert n == 50_000
    assert abs(mean - tk.husimi_direct(rho, 0.3, -0.2)) < 5 * stderr


def test_kernel_and_dawson():
    assert tk.dawson(1.0) == pytest.approx(0.53807950691276842, rel=1e-15)
    assert tk.kernel_closed(0.0, 0.0, 0.3, 0.0) == 2.0
    assert tk.kernel_series(0.2, -0.1, 1.0, 0.5) == pytest.approx(tk.kernel_closed(0.2, -0.1, 1.0, 0.5), abs=1e-8)
    assert tk.coherent_identity_check(0.5 + 0.5j, -1.0 + 0.2j) < 1e-6


def test_truncation_and_divergence():
    with pytest.raises(tk.TruncationError):
        tk.coherent_state(3.0, dim=8)
    mags = tk.divergence_scan(0.0, 0.0, 0.0, 0.0, [1, 2, 3, 4, 5])
    assert all(b > a for a, b in zip(mags, mags[1:]))
    with pytest.raises(tk.DomainError):
        tk.partial_inverse_integral(0.0, 0.0, 0.0, 0.0, 9.0)
