"""Entropy measures, checked against independent brute-force oracles."""

import numpy as np
import pytest

from cliffent import (
    ParameterError,
    QuditSystem,
    UnitarityError,
    chi_distribution,
    choi_relation_residual,
    choi_state,
    clifford_entropy,
    clifford_entropy_many,
    h2_upper_bound,
    is_clifford,
    shannon_clifford_entropy,
    stabilizer_entropy,
    stabilizer_entropy_bound,
)
from cliffent.entropy import row_column_entropy_average
from cliffent.haar import RngStream, sample_haar

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = [I2, X2, Y2, Z2]
T_GATE = np.diag([1.0, np.exp(1j * np.pi / 4)]).astype(complex)
T_PLUS = T_GATE @ (np.array([1.0, 1.0]) / np.sqrt(2))


def h2_pauli_bruteforce(U):
    """Enumerate all 16 Pauli pairs with literal matrices and plain traces."""
    total = 0.0
    for Pa in PAULIS:
        for Pb in PAULIS:
            t = np.trace(Pa.conj().T @ U @ Pb @ U.conj().T) / 2.0
            total += abs(t) ** 4
    return 1.0 - total / 4.0


def test_h2_qubit_t_against_bruteforce():
    oracle = h2_pauli_bruteforce(T_GATE)
    value = clifford_entropy(T_GATE, 2.0)
    assert abs(value - oracle) <= 1e-12
    assert abs(value - 0.25) <= 1e-12


def test_h2_t_gate_d_matrix_entries():
    # |G|^2 of the qubit T has entries {1, 1, 1/2, 1/2, 1/2, 1/2}
    from cliffent import char_matrix

    dm = char_matrix(None, T_GATE).dmat
    nonzero = np.sort(dm[dm > 1e-12])
    assert np.allclose(nonzero, [0.5, 0.5, 0.5, 0.5, 1.0, 1.0], atol=1e-12)


def test_h2_random_unitaries_match_bruteforce():
    for k in range(10):
        U = sample_haar(2, RngStream(20).substream(k))
        assert abs(clifford_entropy(U) - h2_pauli_bruteforce(U)) <= 1e-12


def test_clifford_entropy_identity_zero():
    for d in (2, 3, 4, 5):
        for alpha in (2.0, 3.0, 0.5):
            assert abs(clifford_entropy(np.eye(d), alpha)) <= 1e-12


def test_chi_distribution_t_plus():
    chi = chi_distribution(T_PLUS).probabilities
    # flat order (I, Z, X, Y-slot): chi = (1/2, 0, 1/4, 1/4)
    assert np.allclose(chi, [0.5, 0.0, 0.25, 0.25], atol=1e-14)
    assert abs(chi.sum() - 1.0) <= 1e-12


def test_stabilizer_entropy_values_t_plus():
    m_lin = stabilizer_entropy(T_PLUS, 2.0, kind="tsallis_lin")
    assert abs(m_lin - 0.25) <= 1e-12
    m_renyi = stabilizer_entropy(T_PLUS, 2.0, kind="renyi")
    assert abs(m_renyi - np.log(4.0 / 3.0)) <= 1e-12


def test_stabilizer_entropy_zero_on_stabilizer_states():
    for alpha in (0.5, 2.0, 3.0):
        assert abs(stabilizer_entropy([1, 0], alpha)) <= 1e-12
        plus = np.array([1, 1]) / np.sqrt(2)
        assert abs(stabilizer_entropy(plus, alpha)) <= 1e-12


def test_stabilizer_entropy_upper_bound_random_states():
    rng = np.random.default_rng(77)
    for d in (2, 3, 5):
        bound2 = stabilizer_entropy_bound(d, 2.0)
        for _ in range(20):
            psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            psi /= np.linalg.norm(psi)
            assert stabilizer_entropy(psi, 2.0) <= bound2 + 1e-12


def test_stabilizer_entropy_rejects_bad_alpha():
    with pytest.raises(ParameterError):
        stabilizer_entropy([1, 0], 1.0)
    with pytest.raises(ParameterError):
        stabilizer_entropy([1, 0], 0.0)
    with pytest.raises(ParameterError):
        stabilizer_entropy([1, 0], -2.0)
    with pytest.raises(ParameterError):
        clifford_entropy(np.eye(2), 1.0)


def test_shannon_limit_t_gate():
    # entries {1,1,1/2,1/2,1/2,1/2}: -(1/4) * 4 * (1/2 ln 1/2) = ln(2)/2
    val = shannon_clifford_entropy(T_GATE)
    assert abs(val - 0.5 * np.log(2.0)) <= 1e-12
    assert abs(shannon_clifford_entropy(np.eye(3))) <= 1e-12


def test_shannon_limit_matches_alpha_extrapolation():
    U = sample_haar(3, RngStream(4))
    s = shannon_clifford_entropy(U)
    lo = clifford_entropy(U, 1.0 - 1e-4)
    hi = clifford_entropy(U, 1.0 + 1e-4)
    assert abs(0.5 * (lo + hi) - s) <= 1e-6


def test_tensor_product_identity_exact():
    """H(U ox V) = H(U) + H(V) - (alpha-1) H(U) H(V) on the product group."""
    product = QuditSystem(factors=(2, 3))
    for k in range(10):
        U = sample_haar(2, RngStream(31).substream(2, k))
        V = sample_haar(3, RngStream(31).substream(3, k))
        for alpha in (2.0, 3.0):
            lhs = clifford_entropy(np.kron(U, V), alpha, product)
            hu = clifford_entropy(U, alpha)
            hv = clifford_entropy(V, alpha)
            rhs = hu + hv - (alpha - 1.0) * hu * hv
            assert abs(lhs - rhs) <= 1e-10


def test_tensor_identity_two_qubits():
    product = QuditSystem(2, 2)
    for k in range(8):
        U = sample_haar(2, RngStream(32).substream(0, k))
        V = sample_haar(2, RngStream(32).substream(1, k))
        for alpha in (2.0, 3.0):
            hu = clifford_entropy(U, alpha)
            hv = clifford_entropy(V, alpha)
            lhs = clifford_entropy(np.kron(U, V), alpha, product)
            rhs = hu + hv - (alpha - 1.0) * hu * hv
            assert abs(lhs - rhs) <= 1e-10


def test_tensor_subadditivity_for_alpha_above_one():
    product = QuditSystem(factors=(2, 3))
    for k in range(6):
        U = sample_haar(2, RngStream(33).substream(0, k))
        V = sample_haar(3, RngStream(33).substream(1, k))
        for alpha in (2.0, 3.0):
            lhs = clifford_entropy(np.kron(U, V), alpha, product)
            assert lhs <= clifford_entropy(U, alpha) + clifford_entropy(V, alpha) + 1e-12


def test_is_clifford_examples():
    assert is_clifford(np.eye(2))
    assert not is_clifford(T_GATE)
    for d in (2, 3, 5):
        omega = np.exp(2j * np.pi / d)
        F = omega ** np.outer(np.arange(d), np.arange(d)) / np.sqrt(d)
        assert is_clifford(F)


def test_is_clifford_rejects_non_unitary():
    with pytest.raises(UnitarityError):
        is_clifford(np.diag([1.0, 0.0]))


def test_choi_state_identity_is_bell_pair():
    st = choi_state(np.eye(2))
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / np.sqrt(2)
    assert np.abs(st.vector - bell).max() <= 1e-14


def test_choi_state_reduced_purities():
    for d in (2, 3, 4):
        U = sample_haar(d, RngStream(8).substream(d))
        st = choi_state(U)
        p1, p2 = st.reduced_purities()
        assert abs(p1 - 1.0 / d) <= 1e-10
        assert abs(p2 - 1.0 / d) <= 1e-10


def test_choi_chi_normalization():
    U = sample_haar(3, RngStream(12))
    st = choi_state(U)
    chi = chi_distribution(st.vector, st.system)
    assert abs(chi.total() - 1.0) <= 1e-10


def test_choi_relation_trivial_and_t():
    assert choi_relation_residual(np.eye(2), 2.0) <= 1e-12
    assert choi_relation_residual(T_GATE, 2.0) <= 1e-12


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("alpha", [2.0, 3.0])
def test_choi_relation_random_sweep(d, alpha):
    worst = 0.0
    for k in range(20):
        U = sample_haar(d, RngStream(60 + d).substream(k))
        worst = max(worst, choi_relation_residual(U, alpha))
    assert worst <= 1e-10


def test_h2_upper_bound_random_sweep():
    for d in (2, 3, 4, 5, 6):
        bound = h2_upper_bound(d)
        us = np.stack(
            [sample_haar(d, RngStream(70 + d).substream(k)) for k in range(200)]
        )
        vals = clifford_entropy_many(us, 2.0, check_unitary=False)
        assert vals.max() <= bound
        assert vals.min() >= 0.0


def test_dagger_invariance():
    for d in (2, 3, 5):
        U = sample_haar(d, RngStream(90).substream(d))
        for alpha in (2.0, 3.0):
            assert abs(
                clifford_entropy(U, alpha) - clifford_entropy(U.conj().T, alpha)
            ) <= 1e-10


def test_permutation_dmat_power_sum_is_d_squared():
    """When |G|^2 is a permutation matrix, sum of alpha-powers is d^2."""
    from cliffent import char_matrix

    for d in (2, 3, 4):
        dm = char_matrix(None, np.eye(d)).dmat
        for alpha in (2.0, 3.0):
            assert abs((dm**alpha).sum() - d * d) <= 1e-10 * d * d


def test_row_column_average_reproduces_definition():
    """The mean of row and column Tsallis entropies, normalized by the
    d^2 points on each side, equals the direct definition."""
    for d, alpha in [(2, 2.0), (3, 3.0), (4, 2.0)]:
        U = sample_haar(d, RngStream(41).substream(d))
        direct = clifford_entropy(U, alpha)
        averaged = row_column_entropy_average(U, alpha)
        assert abs(direct - averaged) <= 1e-12


def test_compact_fourth_moment_form_d2():
    """Cross-check at d = 2: H2(U) = 1 - tr(Q U^x4 Q U^dag x4) / d^2 with
    Q = (1/d^2) sum_a (D_a ox D_a^dag)^x2, built densely."""
    from cliffent import all_indices, displacement

    system = QuditSystem(2, 1)
    d = 2
    Q = np.zeros((d**4, d**4), dtype=complex)
    for a in all_indices(system):
        D = displacement(system, a)
        block = np.kron(D, D.conj().T)
        Q += np.kron(block, block)
    Q /= d * d
    assert np.abs(Q - Q.conj().T).max() <= 1e-13
    for k in range(5):
        U = sample_haar(d, RngStream(123).substream(k))
        U4 = np.kron(np.kron(U, U), np.kron(U, U))
        val = 1.0 - np.trace(Q @ U4 @ Q @ U4.conj().T).real / (d * d)
        assert abs(val - clifford_entropy(U)) <= 1e-10


def test_batch_rejects_bad_shapes():
    from cliffent import DimensionMismatchError

    with pytest.raises(DimensionMismatchError):
        clifford_entropy_many(np.eye(2), 2.0)
