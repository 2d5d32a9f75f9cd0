"""Certified Clifford generators, random Clifford words, and magic gates.

Every generator is certified at construction by checking that its
characteristic matrix is monomial; exact phase conventions therefore
cannot silently break anything downstream.  Random words are products of
uniformly chosen generators, which is all the invariance and faithfulness
sweeps need (no attempt at uniform sampling over the Clifford group).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CertificationError
from .entropy import is_clifford
from .haar import RngStream
from .phase_space import QuditSystem

CLIFFORD_TOL = 1e-8


@dataclass(frozen=True)
class CliffordGenerator:
    name: str
    matrix: np.ndarray


@dataclass(frozen=True)
class CliffordWord:
    """A product of generators, realized as a certified matrix."""

    system: QuditSystem
    gates: tuple[str, ...]
    matrix: np.ndarray


def fourier_matrix(d: int) -> np.ndarray:
    """F_jk = omega^(jk) / sqrt(d)."""
    omega = np.exp(2j * np.pi / d)
    jk = np.outer(np.arange(d), np.arange(d))
    return omega**jk / np.sqrt(d)


def quadratic_phase_matrix(d: int) -> np.ndarray:
    """diag(conj(tau)^(k^2)); for d = 2 this is diag(1, i)."""
    tau = -np.exp(1j * np.pi / d)
    k = np.arange(d)
    return np.diag(np.conj(tau) ** (k * k))


def sum_gate_matrix(dL: int, control: int, target: int, n: int) -> np.ndarray:
    """|j, k> -> |j, j + k mod dL> on the (control, target) qudit pair."""
    d = dL**n
    idx = np.arange(d)
    digits = np.array(
        [(idx // dL ** (n - 1 - i)) % dL for i in range(n)]
    )  # (n, d)
    new = digits.copy()
    new[target] = (digits[target] + digits[control]) % dL
    place = dL ** np.arange(n - 1, -1, -1)
    dest = (new * place[:, None]).sum(axis=0)
    out = np.zeros((d, d), dtype=np.complex128)
    out[dest, idx] = 1.0
    return out


def _embed_local(op: np.ndarray, qudit: int, system: QuditSystem) -> np.ndarray:
    dL, n = system.local_dimension, system.num_qudits
    out = np.array([[1.0 + 0j]])
    for i in range(n):
        out = np.kron(out, op if i == qudit else np.eye(dL))
    return out


def clifford_generators(system: QuditSystem) -> list[CliffordGenerator]:
    """Fourier + quadratic phase per qudit, plus SUM on each ordered pair.

    Raises CertificationError if any candidate fails the monomial check,
    which would signal a phase-convention bug rather than a user error.
    """
    dL, n = system.local_dimension, system.num_qudits
    gens: list[CliffordGenerator] = []
    F = fourier_matrix(dL)
    S = quadratic_phase_matrix(dL)
    for i in range(n):
        suffix = str(i) if n > 1 else ""
        gens.append(CliffordGenerator(f"F{suffix}", _embed_local(F, i, system)))
        gens.append(CliffordGenerator(f"S{suffix}", _embed_local(S, i, system)))
    for c in range(n):
        for t in range(n):
            if c != t:
                gens.append(
                    CliffordGenerator(
                        f"SUM{c}{t}", sum_gate_matrix(dL, c, t, n)
                    )
                )
    for g in gens:
        if not is_clifford(g.matrix, tol=CLIFFORD_TOL, system=system):
            raise CertificationError(
                f"generator {g.name} failed Clifford certification for "
                f"system ({dL}, {n})"
            )
    return gens


def random_clifford_word(
    system: QuditSystem, length: int, seed: "int | RngStream"
) -> CliffordWord:
    """Uniformly random generator word of the given length, certified.

    Deterministic for a fixed seed; length 0 gives the identity.
    """
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    stream = seed if isinstance(seed, RngStream) else RngStream(seed)
    rng = stream.generator()
    gens = clifford_generators(system)
    d = system.dimension
    mat = np.eye(d, dtype=np.complex128)
    names = []
    for _ in range(length):
        g = gens[int(rng.integers(len(gens)))]
        mat = g.matrix @ mat
        names.append(g.name)
    if not is_clifford(mat, tol=CLIFFORD_TOL, system=system):
        raise CertificationError(
            f"word of length {length} failed Clifford certification"
        )
    return CliffordWord(system=system, gates=tuple(names), matrix=mat)


def t_gate(system: QuditSystem) -> np.ndarray:
    """The fixed diagonal magic gate, certified non-Clifford.

    Qubits get diag(1, e^{i pi/4}) on the first qubit; larger local
    dimensions get the cubic-phase gate diag(zeta^(k^3)) with zeta a
    primitive (3 d_L)-th root of unity.
    """
    dL = system.local_dimension
    if dL == 2:
        local = np.diag([1.0, np.exp(1j * np.pi / 4)]).astype(np.complex128)
    else:
        zeta = np.exp(2j * np.pi / (3 * dL))
        k = np.arange(dL)
        local = np.diag(zeta ** (k**3 % (3 * dL)))
    gate = _embed_local(local, 0, system)
    if is_clifford(gate, tol=CLIFFORD_TOL, system=system):
        raise CertificationError(
            f"magic gate for system ({dL}, {system.num_qudits}) certified "
            "as Clifford; pick a different phase"
        )
    return gate
