"""Clifford generators, random words, and magic gates."""

import numpy as np
import pytest

from cliffent import (
    CertificationError,
    QuditSystem,
    all_indices,
    clifford_entropy,
    clifford_generators,
    displacement,
    is_clifford,
    random_clifford_word,
    t_gate,
)
from cliffent.clifford import fourier_matrix, quadratic_phase_matrix, sum_gate_matrix
from cliffent.haar import RngStream


@pytest.mark.parametrize(
    "system",
    [
        QuditSystem(2, 1),
        QuditSystem(3, 1),
        QuditSystem(4, 1),
        QuditSystem(5, 1),
        QuditSystem(6, 1),
        QuditSystem(2, 2),
        QuditSystem(3, 2),
    ],
    ids=str,
)
def test_generators_certify_and_have_zero_entropy(system):
    gens = clifford_generators(system)
    assert len(gens) >= 2
    for g in gens:
        assert is_clifford(g.matrix, system=system)
        assert abs(clifford_entropy(g.matrix, 2.0, system)) <= 1e-10


def test_qubit_generator_shapes():
    gens = {g.name: g.matrix for g in clifford_generators(QuditSystem(2, 1))}
    H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert np.allclose(gens["F"], H, atol=1e-14)
    assert np.allclose(gens["S"], np.diag([1, 1j]), atol=1e-14)


def test_two_qubit_sum_gate_is_cnot():
    cnot = sum_gate_matrix(2, 0, 1, 2)
    expected = np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    )
    assert np.allclose(cnot, expected, atol=1e-15)
    gens = {g.name: g.matrix for g in clifford_generators(QuditSystem(2, 2))}
    assert "SUM01" in gens and "SUM10" in gens
    assert np.allclose(gens["SUM01"], expected, atol=1e-15)


def test_fourier_certifies_for_d3():
    F3 = fourier_matrix(3)
    assert is_clifford(F3)


def test_word_length_zero_is_identity():
    w = random_clifford_word(QuditSystem(3, 1), 0, 5)
    assert np.allclose(w.matrix, np.eye(3), atol=1e-15)
    assert w.gates == ()


def test_word_determinism():
    system = QuditSystem(3, 1)
    w1 = random_clifford_word(system, 20, 7)
    w2 = random_clifford_word(system, 20, 7)
    assert w1.gates == w2.gates
    assert np.array_equal(w1.matrix, w2.matrix)
    w3 = random_clifford_word(system, 20, 8)
    assert w1.gates != w3.gates


@pytest.mark.parametrize("d", [2, 3, 5])
def test_word_sweep_zero_entropy(d):
    system = QuditSystem.single(d)
    stream = RngStream(900 + d)
    for k in range(25):
        w = random_clifford_word(system, 15, stream.substream(k))
        assert abs(clifford_entropy(w.matrix, 2.0, system)) <= 1e-10


@pytest.mark.parametrize("system", [QuditSystem(2, 1), QuditSystem(3, 1), QuditSystem(2, 2)], ids=str)
def test_conjugation_maps_displacements_to_displacements(system):
    """C D_a C^dag must land on a single displacement up to phase,
    checked directly with dense matrices and plain traces."""
    d = system.dimension
    idx = all_indices(system)
    disp = [displacement(system, a) for a in idx]
    w = random_clifford_word(system, 12, 44)
    C = w.matrix
    for a in range(len(idx)):
        M = C @ disp[a] @ C.conj().T
        overlaps = np.array([np.trace(D.conj().T @ M) / d for D in disp])
        mods = np.abs(overlaps)
        order = np.argsort(mods)
        assert mods[order[-1]] >= 1 - 1e-10
        assert mods[order[:-1]].max() <= 1e-8


def test_t_gate_qubit_value_and_entropy():
    system = QuditSystem(2, 1)
    T = t_gate(system)
    assert np.allclose(T, np.diag([1, np.exp(1j * np.pi / 4)]), atol=1e-15)
    assert not is_clifford(T)
    assert abs(clifford_entropy(T, 2.0) - 0.25) <= 1e-12


@pytest.mark.parametrize("dL", [3, 5])
def test_t_gate_qudit_noncliff(dL):
    system = QuditSystem(dL, 1)
    T = t_gate(system)
    assert not is_clifford(T, system=system)
    assert clifford_entropy(T, 2.0, system) > 1e-3


def test_t_gate_on_two_qubits_matches_tensor_identity():
    system = QuditSystem(2, 2)
    T2 = t_gate(system)  # T on the first qubit, identity on the second
    assert np.allclose(
        T2, np.kron(np.diag([1, np.exp(1j * np.pi / 4)]), np.eye(2)), atol=1e-15
    )
    direct = clifford_entropy(T2, 2.0, system)
    # tensor law with V = I: H2(T ox I) = H2(T)
    assert abs(direct - 0.25) <= 1e-12


def test_word_rejects_negative_length():
    with pytest.raises(ValueError):
        random_clifford_word(QuditSystem(2, 1), -1, 0)
