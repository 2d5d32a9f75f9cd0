"""Weyl-Heisenberg displacement operators and characteristic functions.

A system of n qudits with local dimension d_L carries d^2 displacement
operators (d = d_L^n), each a monomial matrix: a permutation of the
computational basis times a diagonal of unit-modulus phases.  Everything
here works with that (permutation, phase) representation, so a single
displacement costs O(d) storage and a trace against it costs O(d).

Index convention: a phase-space point is one pair (a1, a2) per qudit with
entries in {0, ..., d_L - 1}.  Flat indices enumerate points
lexicographically, qudit-major, shift (a1) before clock (a2) within a
qudit.  For a single qudit the flat index of (a1, a2) is a1 * d_L + a2.
All file formats and characteristic-matrix rows/columns use this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidIndexError,
    NormalizationError,
    SystemMismatchError,
    UnitarityError,
)

DEFAULT_UNITARY_TOL = 1e-10
DEFAULT_STATE_TOL = 1e-10


class QuditSystem:
    """A register of qudits; usually n qudits of one local dimension d_L.

    Mixed local dimensions are allowed (``QuditSystem(factors=(2, 3))``) so
    that the displacement group of a tensor product U(2) x U(3) is the
    product of the factor groups; the uniform ``QuditSystem(d_L, n)`` form
    covers everything else.
    """

    __slots__ = ("factors",)

    def __init__(
        self,
        local_dimension: int | None = None,
        num_qudits: int = 1,
        factors: tuple[int, ...] | None = None,
    ):
        if factors is None:
            if local_dimension is None:
                raise DimensionMismatchError("need local_dimension or factors")
            factors = (int(local_dimension),) * int(num_qudits)
        factors = tuple(int(f) for f in factors)
        if len(factors) < 1:
            raise DimensionMismatchError("need at least one qudit")
        for f in factors:
            if f < 2:
                raise DimensionMismatchError(
                    f"local dimension must be >= 2, got {f}"
                )
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, name, value):
        raise AttributeError("QuditSystem is immutable")

    def __eq__(self, other):
        return isinstance(other, QuditSystem) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"QuditSystem(factors={self.factors})"

    @property
    def is_uniform(self) -> bool:
        return len(set(self.factors)) == 1

    @property
    def local_dimension(self) -> int:
        if not self.is_uniform:
            raise DimensionMismatchError(
                "mixed system has no single local dimension"
            )
        return self.factors[0]

    @property
    def num_qudits(self) -> int:
        return len(self.factors)

    @property
    def dimension(self) -> int:
        d = 1
        for f in self.factors:
            d *= f
        return d

    @property
    def num_points(self) -> int:
        """Number of phase-space points, d^2."""
        return self.dimension**2

    @property
    def omega(self) -> complex:
        """Primitive d_L-th root of unity exp(2*pi*i/d_L)."""
        return np.exp(2j * np.pi / self.local_dimension)

    @property
    def tau(self) -> complex:
        """The phase -exp(i*pi/d_L); satisfies tau^2 = omega."""
        return -np.exp(1j * np.pi / self.local_dimension)

    @classmethod
    def single(cls, d: int) -> "QuditSystem":
        """The dimension-d system treated as one qudit."""
        return cls(d, 1)

    @classmethod
    def qubits(cls, n: int) -> "QuditSystem":
        return cls(2, n)

    @classmethod
    def product(cls, *systems: "QuditSystem") -> "QuditSystem":
        """Side-by-side composition; displacements are tensor products."""
        factors: tuple[int, ...] = ()
        for s in systems:
            factors = factors + s.factors
        return cls(factors=factors)

    def doubled(self) -> "QuditSystem":
        """The system for two copies side by side (used for channel states)."""
        return QuditSystem(factors=self.factors + self.factors)


@dataclass(frozen=True)
class PhaseSpaceIndex:
    """Symplectic label: one (a1, a2) pair per qudit."""

    components: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "components",
            tuple((int(a1), int(a2)) for a1, a2 in self.components),
        )

    @property
    def num_qudits(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(a1 == 0 and a2 == 0 for a1, a2 in self.components)


def as_index(system: QuditSystem, a) -> PhaseSpaceIndex:
    """Coerce a to a PhaseSpaceIndex valid for system.

    Accepts a PhaseSpaceIndex, a sequence of n (a1, a2) pairs, or for
    n = 1 a bare (a1, a2) pair.  Components must already lie in
    {0, ..., d_L - 1}; out-of-range values raise InvalidIndexError.
    """
    if isinstance(a, PhaseSpaceIndex):
        idx = a
    else:
        seq = list(a)
        if (
            system.num_qudits == 1
            and len(seq) == 2
            and not isinstance(seq[0], (tuple, list, np.ndarray))
        ):
            seq = [tuple(seq)]
        try:
            idx = PhaseSpaceIndex(tuple(tuple(p) for p in seq))
        except (TypeError, ValueError) as exc:
            raise InvalidIndexError(f"cannot interpret {a!r} as an index") from exc
    if idx.num_qudits != system.num_qudits:
        raise InvalidIndexError(
            f"index has {idx.num_qudits} qudit components, system has "
            f"{system.num_qudits}"
        )
    for (a1, a2), f in zip(idx.components, system.factors):
        if not (0 <= a1 < f and 0 <= a2 < f):
            raise InvalidIndexError(
                f"component ({a1}, {a2}) out of range for local dimension {f}"
            )
    return idx


def flat_index(system: QuditSystem, a) -> int:
    """Position of index a in the canonical enumeration."""
    idx = as_index(system, a)
    out = 0
    for (a1, a2), f in zip(idx.components, system.factors):
        out = out * f * f + a1 * f + a2
    return out


def index_from_flat(system: QuditSystem, flat: int) -> PhaseSpaceIndex:
    if not (0 <= flat < system.num_points):
        raise InvalidIndexError(f"flat index {flat} out of range")
    comps = []
    rem = flat
    for f in reversed(system.factors):
        block = rem % (f * f)
        rem //= f * f
        comps.append((block // f, block % f))
    return PhaseSpaceIndex(tuple(reversed(comps)))


def all_indices(system: QuditSystem) -> list[PhaseSpaceIndex]:
    """All d^2 indices in canonical order."""
    return [index_from_flat(system, i) for i in range(system.num_points)]


def negate_index(system: QuditSystem, a) -> PhaseSpaceIndex:
    idx = as_index(system, a)
    return PhaseSpaceIndex(
        tuple(
            ((-a1) % f, (-a2) % f)
            for (a1, a2), f in zip(idx.components, system.factors)
        )
    )


def add_indices(system: QuditSystem, a, b) -> PhaseSpaceIndex:
    ia, ib = as_index(system, a), as_index(system, b)
    return PhaseSpaceIndex(
        tuple(
            ((p[0] + q[0]) % f, (p[1] + q[1]) % f)
            for p, q, f in zip(ia.components, ib.components, system.factors)
        )
    )


def symplectic_form(system: QuditSystem, a, b) -> int:
    """sum_i (a1_i b2_i - a2_i b1_i) mod d_L (uniform systems only)."""
    dL = system.local_dimension
    ia, ib = as_index(system, a), as_index(system, b)
    total = sum(
        p[0] * q[1] - p[1] * q[0] for p, q in zip(ia.components, ib.components)
    )
    return total % dL


# ---------------------------------------------------------------------------
# Displacement tables.
#
# perm[a, k]  : D_a |k> lands on basis state perm[a, k]
# phase[a, k] : with amplitude phase[a, k]  (unit modulus)
#
# The permutation depends only on the shift part s(a) = (a1_1, ..., a1_n),
# of which there are d distinct values.  addtab[s, k] is digitwise k + s,
# so perm[a] = addtab[shift_id[a]].  Grouping the d^2 points by shift id
# lets the trace stage of the characteristic matrix run as d small GEMMs.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DisplacementTable:
    system: QuditSystem
    perm: np.ndarray          # (d^2, d) int
    phase: np.ndarray         # (d^2, d) complex
    shift_id: np.ndarray      # (d^2,) int, flat shift part of each point
    addtab: np.ndarray        # (d, d) int, digitwise addition of basis labels
    perm_inv: np.ndarray      # (d^2, d) int, inverse permutations
    phase_inv_gather: np.ndarray  # (d^2, d) complex, phase[a, perm_inv[a, i]]
    phase_grouped: np.ndarray     # (d, d, d) complex, phase[a(s, z), k]
    group_pos: np.ndarray     # (d^2,) int, position of point a in (s, z) order


def _mixed_digits(radices: Sequence[int], count: int) -> np.ndarray:
    """Mixed-radix digits of 0..count-1, most significant first."""
    n = len(radices)
    digs = np.zeros((count, n), dtype=np.int64)
    rem = np.arange(count)
    for i in range(n - 1, -1, -1):
        digs[:, i] = rem % radices[i]
        rem //= radices[i]
    return digs


@lru_cache(maxsize=32)
def _tables(factors: tuple[int, ...]) -> DisplacementTable:
    system = QuditSystem(factors=factors)
    n = len(factors)
    d = system.dimension
    ds = d * d
    f_arr = np.array(factors, dtype=np.int64)
    omegas = np.exp(2j * np.pi / f_arr)
    taus = -np.exp(1j * np.pi / f_arr)

    point_radices = [f for f in factors for _ in (0, 1)]
    point_digits = _mixed_digits(point_radices, ds)
    a1 = point_digits[:, 0::2]  # (ds, n) shift parts
    a2 = point_digits[:, 1::2]  # (ds, n) clock parts
    kdig = _mixed_digits(factors, d)  # (d, n) basis-label digits

    place = np.ones(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        place[i] = place[i + 1] * factors[i + 1]

    perm = (((kdig[None, :, :] + a1[:, None, :]) % f_arr) * place).sum(axis=2)
    tau_pow = (taus[None, :] ** (a1 * a2)).prod(axis=1)
    clock_phase = (
        omegas[None, None, :] ** (a2[:, None, :] * kdig[None, :, :])
    ).prod(axis=2)
    phase = tau_pow[:, None] * clock_phase

    shift_id = (a1 * place).sum(axis=1)
    clock_id = (a2 * place).sum(axis=1)
    addtab = (((kdig[None, :, :] + kdig[:, None, :]) % f_arr) * place).sum(axis=2)

    neg_shift = ((((-kdig) % f_arr)) * place).sum(axis=1)
    perm_inv = addtab[neg_shift[shift_id]]
    phase_inv_gather = np.take_along_axis(phase, perm_inv, axis=1)

    point_of = np.empty((d, d), dtype=np.int64)
    point_of[shift_id, clock_id] = np.arange(ds)
    phase_grouped = phase[point_of]
    group_pos = shift_id * d + clock_id

    return DisplacementTable(
        system=system,
        perm=perm,
        phase=phase,
        shift_id=shift_id,
        addtab=addtab,
        perm_inv=perm_inv,
        phase_inv_gather=phase_inv_gather,
        phase_grouped=phase_grouped,
        group_pos=group_pos,
    )


def tables(system: QuditSystem) -> DisplacementTable:
    return _tables(system.factors)


def displacement(system: QuditSystem, a) -> np.ndarray:
    """Dense d x d displacement operator for index a.

    The result is monomial: exactly d nonzero entries, each of modulus 1.
    """
    t = tables(system)
    i = flat_index(system, a)
    d = system.dimension
    out = np.zeros((d, d), dtype=np.complex128)
    out[t.perm[i], np.arange(d)] = t.phase[i]
    return out


def displacement_action(system: QuditSystem, a) -> tuple[np.ndarray, np.ndarray]:
    """(perm, phase) arrays such that D_a |k> = phase[k] |perm[k]>."""
    t = tables(system)
    i = flat_index(system, a)
    return t.perm[i].copy(), t.phase[i].copy()


# ---------------------------------------------------------------------------
# Validation helpers
# ---------------------------------------------------------------------------


def unitarity_defect(U: np.ndarray) -> float:
    """Frobenius norm of U^dag U - I."""
    U = np.asarray(U, dtype=np.complex128)
    d = U.shape[0]
    return float(np.linalg.norm(U.conj().T @ U - np.eye(d)))


def ensure_unitary(
    U, system: QuditSystem | None = None, tol: float = DEFAULT_UNITARY_TOL
) -> np.ndarray:
    """Return U as a validated complex array; raise on failure."""
    U = np.asarray(U, dtype=np.complex128)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {U.shape}")
    if not np.isfinite(U).all():
        raise DimensionMismatchError("matrix contains NaN or Inf entries")
    if system is not None and U.shape[0] != system.dimension:
        raise DimensionMismatchError(
            f"matrix dimension {U.shape[0]} != system dimension {system.dimension}"
        )
    defect = unitarity_defect(U)
    if defect > tol:
        raise UnitarityError(defect, tol)
    return U


def ensure_state(
    psi, system: QuditSystem | None = None, tol: float = DEFAULT_STATE_TOL
) -> np.ndarray:
    """Return psi as a validated unit vector; raise on failure."""
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if not np.isfinite(psi).all():
        raise NormalizationError("state contains NaN or Inf entries")
    if system is not None and psi.shape[0] != system.dimension:
        raise DimensionMismatchError(
            f"state dimension {psi.shape[0]} != system dimension {system.dimension}"
        )
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > tol:
        raise NormalizationError(f"state norm {nrm!r} differs from 1 by > {tol:.1e}")
    return psi


def default_system(d: int) -> QuditSystem:
    """Single-qudit system of total dimension d (the default grouping)."""
    return QuditSystem.single(d)


def _system_for_dim(system: QuditSystem | None, dim: int) -> QuditSystem:
    if system is None:
        return default_system(dim)
    if system.dimension != dim:
        raise DimensionMismatchError(
            f"system dimension {system.dimension} != operand dimension {dim}"
        )
    return system


# ---------------------------------------------------------------------------
# Characteristic functions
# ---------------------------------------------------------------------------


def char_function_state(
    system: QuditSystem | None, psi, tol: float = DEFAULT_STATE_TOL
) -> np.ndarray:
    """Characteristic function tr(D_a^dag |psi><psi|) over all d^2 points.

    Entry 0 (the zero displacement) is always 1 for a normalized state, and
    sum_a |c_a|^2 / d = 1 for a pure state.
    """
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    system = _system_for_dim(system, psi.shape[0])
    psi = ensure_state(psi, system, tol)
    t = tables(system)
    # <psi| D_a^dag |psi> = sum_k conj(psi[k]) conj(phase[a,k]) psi[perm[a,k]]
    return np.einsum(
        "ak,ak,k->a", t.phase.conj(), psi[t.perm], psi.conj(), optimize=True
    )


@dataclass(frozen=True)
class CharacteristicMatrix:
    """d^2 x d^2 matrix G_ab = tr(D_a^dag U D_b U^dag) / d for a unitary U.

    The squared moduli |G|^2 form a doubly stochastic matrix when (and only
    when) the input is unitary.
    """

    system: QuditSystem
    gmat: np.ndarray

    @property
    def dmat(self) -> np.ndarray:
        return np.abs(self.gmat) ** 2

    def row_sums(self) -> np.ndarray:
        return self.dmat.sum(axis=1)

    def col_sums(self) -> np.ndarray:
        return self.dmat.sum(axis=0)


def char_matrix_many(system: QuditSystem, Us: np.ndarray) -> np.ndarray:
    """Characteristic matrices of a batch of matrices, shape (B, d^2, d^2).

    Exploits the monomial structure of the displacements: for each column b
    the conjugated operator U D_b U^dag is formed once (a d x d product) and
    all d^2 traces against it are shifted-diagonal sums costing O(d) each.
    Total O(B d^5) arithmetic and O(B d^4) memory.  No validation is done
    here; callers gate on unitarity as their contracts require.
    """
    t = tables(system)
    d = system.dimension
    Us = np.ascontiguousarray(np.asarray(Us, dtype=np.complex128))
    if Us.ndim != 3 or Us.shape[1:] != (d, d):
        raise DimensionMismatchError(
            f"expected batch of shape (B, {d}, {d}), got {Us.shape}"
        )
    B = Us.shape[0]
    Uh = Us.conj().transpose(0, 2, 1)
    # rows of D_b U^dag via the inverse permutation of D_b
    A = t.phase_inv_gather[None, :, :, None] * Uh[:, t.perm_inv, :]
    M = Us[:, None, :, :] @ A  # (B, d^2, d, d): M[n, b] = U D_b U^dag
    cols = np.arange(d)
    # shifted diagonals M[n, b, (k + s), k] for the d distinct shifts s
    Mshift = M[:, :, t.addtab, cols]  # (B, d^2, d, d) indexed [n, b, s, k]
    T = np.einsum(
        "szk,nbsk->nbsz", t.phase_grouped.conj(), Mshift, optimize=True
    )
    G = T.reshape(B, d * d, d * d)[:, :, t.group_pos].transpose(0, 2, 1)
    G /= d
    return G


def char_matrix(
    system: QuditSystem | None,
    U,
    check_unitary: bool = True,
    tol: float = DEFAULT_UNITARY_TOL,
) -> CharacteristicMatrix:
    """Characteristic matrix of a single d x d matrix.

    With check_unitary=False the input may be any matrix (useful to watch
    the doubly stochastic property fail on non-unitary input).
    """
    U = np.asarray(U, dtype=np.complex128)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {U.shape}")
    system = _system_for_dim(system, U.shape[0])
    if check_unitary:
        U = ensure_unitary(U, system, tol)
    gmat = char_matrix_many(system, U[None])[0]
    return CharacteristicMatrix(system=system, gmat=gmat)
