"""Stabilizer entropies of pure states and Clifford entropies of unitaries.

For a pure state the squared characteristic function over the d^2
displacement operators, divided by d, is a probability distribution; its
Renyi (or linearized Tsallis) entropy relative to the flat stabilizer
baseline is the stabilizer entropy.  For a unitary the matrix of squared
characteristic-matrix moduli is doubly stochastic, and its Tsallis-type
entropy is the Clifford entropy: zero exactly on Clifford unitaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ParameterError
from .phase_space import (
    DEFAULT_UNITARY_TOL,
    CharacteristicMatrix,
    QuditSystem,
    _system_for_dim,
    char_function_state,
    char_matrix_many,
    ensure_state,
    ensure_unitary,
)


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha <= 0:
        raise ParameterError(f"alpha must be positive, got {alpha!r}")
    if alpha == 1.0:
        raise ParameterError(
            "alpha = 1 is not defined here; use shannon_clifford_entropy for the limit"
        )
    return alpha


@dataclass(frozen=True)
class ChiDistribution:
    """Probabilities chi_a = |c_a|^2 / d over the d^2 phase-space points."""

    system: QuditSystem
    probabilities: np.ndarray

    def total(self) -> float:
        return float(self.probabilities.sum())


def chi_distribution(psi, system: QuditSystem | None = None) -> ChiDistribution:
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    system = _system_for_dim(system, psi.shape[0])
    c = char_function_state(system, psi)
    probs = np.abs(c) ** 2 / system.dimension
    return ChiDistribution(system=system, probabilities=probs)


def stabilizer_entropy(
    psi,
    alpha: float,
    kind: str = "renyi",
    system: QuditSystem | None = None,
) -> float:
    """Stabilizer entropy of a pure state.

    kind="renyi":       log(sum chi^alpha) / (1 - alpha) - log d
    kind="tsallis_lin": (1 - d^(alpha-1) * sum chi^alpha) / (alpha - 1)

    Both vanish exactly on stabilizer states.
    """
    alpha = _check_alpha(alpha)
    psi = ensure_state(psi)
    system = _system_for_dim(system, psi.shape[0])
    chi = chi_distribution(psi, system).probabilities
    d = system.dimension
    s = float((chi**alpha).sum())
    if kind == "renyi":
        return float(np.log(s) / (1.0 - alpha) - np.log(d))
    if kind == "tsallis_lin":
        return float((1.0 - d ** (alpha - 1.0) * s) / (alpha - 1.0))
    raise ParameterError(f"unknown stabilizer entropy kind {kind!r}")


def stabilizer_entropy_bound(d: int, alpha: float) -> float:
    """Upper bound log((1 + (d-1)(d+1)^(1-alpha)) / d) / (1 - alpha)."""
    alpha = _check_alpha(alpha)
    return float(
        np.log((1.0 + (d - 1) * (d + 1) ** (1.0 - alpha)) / d) / (1.0 - alpha)
    )


# ---------------------------------------------------------------------------
# Clifford entropy
# ---------------------------------------------------------------------------


def clifford_entropy_many(
    Us: np.ndarray,
    alpha: float = 2.0,
    system: QuditSystem | None = None,
    check_unitary: bool = True,
    tol: float = DEFAULT_UNITARY_TOL,
) -> np.ndarray:
    """Clifford entropies of a batch of unitaries, shape (B,).

    H_alpha(U) = (1 - sum_ab |G_ab|^(2*alpha) / d^2) / (alpha - 1).
    """
    alpha = _check_alpha(alpha)
    Us = np.asarray(Us, dtype=np.complex128)
    if Us.ndim != 3:
        raise DimensionMismatchError(f"expected (B, d, d) batch, got {Us.shape}")
    system = _system_for_dim(system, Us.shape[1])
    if check_unitary:
        for U in Us:
            ensure_unitary(U, system, tol)
    G = char_matrix_many(system, Us)
    dm = np.abs(G) ** 2
    s = (dm**alpha).sum(axis=(1, 2))
    return (1.0 - s / system.num_points) / (alpha - 1.0)


def clifford_entropy(
    U,
    alpha: float = 2.0,
    system: QuditSystem | None = None,
    tol: float = DEFAULT_UNITARY_TOL,
) -> float:
    """Clifford entropy of one unitary; zero iff U is Clifford."""
    U = ensure_unitary(U, tol=tol)
    system = _system_for_dim(system, U.shape[0])
    return float(clifford_entropy_many(U[None], alpha, system, check_unitary=False)[0])


def h2_upper_bound(d: int) -> float:
    """The alpha = 2 bound 1 - 2/(d^2 + 1); not attained by any unitary."""
    return 1.0 - 2.0 / (d * d + 1.0)


def shannon_clifford_entropy(
    U, system: QuditSystem | None = None, tol: float = DEFAULT_UNITARY_TOL
) -> float:
    """The alpha -> 1 limit: -sum_ab D_ab * ln(D_ab) / d^2, with 0 ln 0 = 0."""
    U = ensure_unitary(U, tol=tol)
    system = _system_for_dim(system, U.shape[0])
    dm = np.abs(char_matrix_many(system, U[None])[0]) ** 2
    mask = dm > 0.0
    s = float((dm[mask] * np.log(dm[mask])).sum())
    return -s / system.num_points


def is_clifford(
    U,
    tol: float = 1e-8,
    system: QuditSystem | None = None,
    unitary_tol: float = DEFAULT_UNITARY_TOL,
) -> bool:
    """True iff |G|^2 is a permutation matrix within tol.

    Every row must contain exactly one entry >= 1 - tol with all other
    entries <= tol; equivalent to the Clifford entropy vanishing.
    """
    U = ensure_unitary(U, tol=unitary_tol)
    system = _system_for_dim(system, U.shape[0])
    dm = np.abs(char_matrix_many(system, U[None])[0]) ** 2
    dm_sorted = np.sort(dm, axis=1)
    top = dm_sorted[:, -1]
    rest = dm_sorted[:, :-1]
    return bool((top >= 1.0 - tol).all() and (rest <= tol).all())


# ---------------------------------------------------------------------------
# Choi state and the exact relation between the two entropies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChoiState:
    """Pure state on two copies of the system encoding a unitary channel."""

    vector: np.ndarray
    channel_dimension: int
    system: QuditSystem  # the doubled system carrying the bipartite group

    def reduced_purities(self) -> tuple[float, float]:
        d = self.channel_dimension
        V = self.vector.reshape(d, d)
        rho1 = V @ V.conj().T
        rho2 = V.T @ V.conj()
        return (
            float(np.trace(rho1 @ rho1).real),
            float(np.trace(rho2 @ rho2).real),
        )


def choi_state(
    U, system: QuditSystem | None = None, tol: float = DEFAULT_UNITARY_TOL
) -> ChoiState:
    """(1/sqrt(d)) sum_i U|i> ox |i>; maximally entangled for unitary U."""
    U = ensure_unitary(U, tol=tol)
    system = _system_for_dim(system, U.shape[0])
    d = system.dimension
    vec = (U / np.sqrt(d)).reshape(-1)
    return ChoiState(vector=vec, channel_dimension=d, system=system.doubled())


def choi_relation_residual(
    U,
    alpha: float,
    system: QuditSystem | None = None,
    tol: float = DEFAULT_UNITARY_TOL,
) -> float:
    """|H_alpha(U) - (1 - exp(-(alpha-1) M_alpha(choi))) / (alpha-1)|.

    M_alpha is the Renyi stabilizer entropy of the channel's state on the
    doubled system, computed from the product displacement group.  The two
    sides are evaluated independently; the residual is a few ulps for any
    unitary.
    """
    alpha = _check_alpha(alpha)
    U = ensure_unitary(U, tol=tol)
    system = _system_for_dim(system, U.shape[0])
    lhs = clifford_entropy(U, alpha, system)
    st = choi_state(U, system)
    m = stabilizer_entropy(st.vector, alpha, kind="renyi", system=st.system)
    rhs = (1.0 - np.exp(-(alpha - 1.0) * m)) / (alpha - 1.0)
    return abs(lhs - rhs)


def row_column_entropy_average(
    U, alpha: float, system: QuditSystem | None = None
) -> float:
    """Mean of the per-row and per-column Tsallis entropies of |G|^2.

    Averaging the d^2 row entropies and d^2 column entropies reproduces
    the Clifford entropy exactly; see the tests for the bookkeeping.
    """
    alpha = _check_alpha(alpha)
    U = ensure_unitary(U)
    system = _system_for_dim(system, U.shape[0])
    dm = np.abs(char_matrix_many(system, U[None])[0]) ** 2
    row = (1.0 - (dm**alpha).sum(axis=1)) / (alpha - 1.0)
    col = (1.0 - (dm**alpha).sum(axis=0)) / (alpha - 1.0)
    return float((row.sum() + col.sum()) / (2.0 * system.num_points))
