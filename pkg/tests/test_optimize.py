"""Derivative probes and entropy maximization over the unitary group."""

import numpy as np
import pytest
from scipy.linalg import expm

from cliffent import (
    ParameterError,
    QuditSystem,
    analytic_avg_H2,
    clifford_entropy,
    derivative_bound,
    directional_derivative_H2,
    h2_upper_bound,
    lipschitz_constant,
    lipschitz_probe,
    maximize_H2,
    random_tangent,
    sample_haar,
    unitarity_defect,
    variant_for_system,
)
from cliffent.haar import RngStream
from cliffent.optimize import antihermitian_basis, ensure_tangent


def test_basis_is_orthonormal_antihermitian():
    for d in (2, 3, 4):
        basis = antihermitian_basis(d)
        assert basis.shape == (d * d, d, d)
        flat = basis.reshape(d * d, -1)
        gram = flat.conj() @ flat.T
        assert np.abs(gram - np.eye(d * d)).max() <= 1e-14
        for B in basis:
            assert np.abs(B + B.conj().T).max() <= 1e-15


def test_ensure_tangent_validation():
    rng = np.random.default_rng(1)
    K = random_tangent(3, rng)
    ensure_tangent(K)
    with pytest.raises(ParameterError):
        ensure_tangent(K * 2.0)
    with pytest.raises(ParameterError):
        ensure_tangent(np.eye(3))


def test_directional_derivative_antisymmetric_in_direction():
    rng = np.random.default_rng(2)
    U = sample_haar(3, RngStream(10))
    K = random_tangent(3, rng)
    fwd = directional_derivative_H2(U, K)
    bwd = directional_derivative_H2(U, -K)
    assert abs(fwd + bwd) <= 1e-8


def test_directional_derivative_step_consistency():
    # Richardson at step h and h/2 must agree to O(h^2)
    rng = np.random.default_rng(3)
    U = sample_haar(3, RngStream(11))
    K = random_tangent(3, rng)
    v1 = directional_derivative_H2(U, K, h=1e-3)
    v2 = directional_derivative_H2(U, K, h=5e-4)
    assert abs(v1 - v2) <= 1e-8


@pytest.mark.parametrize("d", [2, 3, 5])
def test_directional_derivative_bound_small_sweep(d):
    bound = derivative_bound(d) + 1e-6
    rng = np.random.default_rng(40 + d)
    for k in range(100):
        U = sample_haar(d, RngStream(41).substream(d, k))
        K = random_tangent(d, rng)
        assert abs(directional_derivative_H2(U, K)) <= bound


def test_gradient_matches_directional_derivative():
    """Central differences along basis coordinates, contracted with a
    direction, agree with the direct directional derivative to O(h^2)."""
    d = 3
    system = QuditSystem.single(d)
    U = sample_haar(d, RngStream(12))
    basis = antihermitian_basis(d)
    h = 1e-5
    grad = np.empty(d * d)
    for i in range(d * d):
        up = clifford_entropy(expm(h * basis[i]) @ U, 2.0, system)
        dn = clifford_entropy(expm(-h * basis[i]) @ U, 2.0, system)
        grad[i] = (up - dn) / (2 * h)
    rng = np.random.default_rng(9)
    for _ in range(20):
        x = rng.standard_normal(d * d)
        x /= np.linalg.norm(x)
        K = np.tensordot(x, basis, axes=(0, 0))
        direct = directional_derivative_H2(U, K)
        assert abs(float(grad @ x) - direct) <= 1e-7


def test_maximize_small_run_d2():
    result = maximize_H2(2, restarts=5, max_iters=200, stream=RngStream(42))
    assert result.bound == h2_upper_bound(2)
    assert result.best_value < result.bound - 1e-3
    assert result.best_value > analytic_avg_H2(2, variant_for_system(QuditSystem.single(2)))
    assert unitarity_defect(result.best_unitary) <= 1e-12
    assert abs(clifford_entropy(result.best_unitary) - result.best_value) <= 1e-12
    assert len(result.traces) == 5


def test_maximize_deterministic():
    r1 = maximize_H2(2, restarts=3, stream=RngStream(5))
    r2 = maximize_H2(2, restarts=3, stream=RngStream(5))
    assert r1.best_value == r2.best_value
    assert np.array_equal(r1.best_unitary, r2.best_unitary)
    assert r1.traces == r2.traces
    r3 = maximize_H2(2, restarts=3, stream=RngStream(5), threads=3)
    assert r1.traces == r3.traces


def test_maximize_accepted_steps_monotone():
    result = maximize_H2(3, restarts=2, stream=RngStream(6))
    for trace in result.traces:
        vals = np.array(trace.values)
        assert (np.diff(vals) >= -1e-12).all()
        assert trace.value >= vals.max() - 1e-12


def test_maximize_rejects_bad_restarts():
    with pytest.raises(ParameterError):
        maximize_H2(2, restarts=0)


def test_lipschitz_probe_small_run():
    for d in (2, 3):
        probe = lipschitz_probe(d, 300, RngStream(21))
        assert probe.bound == lipschitz_constant(d)
        assert probe.max_ratio <= probe.bound
        assert probe.max_ratio_pairwise <= probe.bound_pairwise
        assert probe.max_ratio > 0


def test_lipschitz_probe_single_pair():
    probe = lipschitz_probe(2, 1, RngStream(3))
    assert probe.max_ratio_pairwise == 0.0
    with pytest.raises(ParameterError):
        lipschitz_probe(2, 0, RngStream(3))
