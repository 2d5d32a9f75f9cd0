"""Statistical experiments: subadditivity violations, magic-gate depth
bounds for doped circuits, and informationally-complete fiducial checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .clifford import random_clifford_word, t_gate
from .entropy import clifford_entropy, clifford_entropy_many
from .errors import CertificationError, DimensionMismatchError, ParameterError
from .haar import RngStream, haar_from_generator
from .parallel import indexed_map
from .phase_space import QuditSystem, tables


# ---------------------------------------------------------------------------
# Subadditivity violation frequency
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubadditivityReport:
    dimension: int
    n_pairs: int
    n_reps: int
    violations: tuple[int, ...]
    frequencies: tuple[float, ...]
    mean_frequency: float
    seed: int


def subadditivity_violation_rate(
    d: int,
    n_pairs: int,
    n_reps: int,
    stream: RngStream = RngStream(0),
    system: QuditSystem | None = None,
    threads: int | None = None,
) -> SubadditivityReport:
    """Frequency of H2(UV) >= H2(U) + H2(V) over Haar pairs.

    The comparison is taken on raw binary64 values with ties counted, so a
    reported zero means zero at machine precision.  Rep r draws its pairs
    from stream.substream(r); reps are independent and order-insensitive.
    """
    if n_pairs < 1 or n_reps < 1:
        raise ParameterError("n_pairs and n_reps must be >= 1")
    if system is None:
        system = QuditSystem.single(d)
    chunk = max(64, min(4096, (1 << 22) // d**4))

    def run_rep(r: int) -> int:
        rng = stream.substream(r).generator()
        count = 0
        done = 0
        while done < n_pairs:
            m = min(chunk, n_pairs - done)
            us = haar_from_generator(rng, d, m)
            vs = haar_from_generator(rng, d, m)
            h2u = clifford_entropy_many(us, 2.0, system, check_unitary=False)
            h2v = clifford_entropy_many(vs, 2.0, system, check_unitary=False)
            h2uv = clifford_entropy_many(us @ vs, 2.0, system, check_unitary=False)
            count += int((h2uv >= h2u + h2v).sum())
            done += m
        return count

    violations = list(indexed_map(run_rep, list(range(n_reps)), threads))
    freqs = [v / n_pairs for v in violations]
    return SubadditivityReport(
        dimension=d,
        n_pairs=n_pairs,
        n_reps=n_reps,
        violations=tuple(violations),
        frequencies=tuple(freqs),
        mean_frequency=float(np.mean(freqs)),
        seed=stream.seed,
    )


# ---------------------------------------------------------------------------
# Doped circuits and the depth bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DopedCircuit:
    """t magic gates interleaved with t+1 random Clifford words."""

    system: QuditSystem
    t: int
    words: tuple[tuple[str, ...], ...]
    unitary: np.ndarray


def random_doped_circuit(
    system: QuditSystem,
    t: int,
    word_length: int,
    stream: RngStream,
    magic: np.ndarray | None = None,
) -> DopedCircuit:
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    if magic is None:
        magic = t_gate(system)
    mat = np.eye(system.dimension, dtype=np.complex128)
    words = []
    for layer in range(t + 1):
        w = random_clifford_word(system, word_length, stream.substream(layer))
        words.append(w.gates)
        mat = w.matrix @ mat
        if layer < t:
            mat = magic @ mat
    return DopedCircuit(system=system, t=t, words=tuple(words), unitary=mat)


@dataclass(frozen=True)
class TcountReport:
    dimension: int
    t: int
    n_circuits: int
    word_length: int
    h2_magic: float
    h2_values: tuple[float, ...]
    ratios: tuple[float, ...]
    fraction_within_bound: float
    seed: int


def tcount_bound_experiment(
    system: QuditSystem,
    t: int,
    n_circuits: int,
    stream: RngStream = RngStream(0),
    word_length: int = 20,
    threads: int | None = None,
) -> TcountReport:
    """Distribution of H2(U)/H2(T) over random depth-t doped circuits.

    The ratio lower-bounds the number of magic gates needed to realize U,
    so the reported fraction of circuits with ratio <= t measures how often
    the bound is consistent with the known construction depth.
    """
    if n_circuits < 1:
        raise ParameterError(f"n_circuits must be >= 1, got {n_circuits}")
    magic = t_gate(system)
    h2_magic = clifford_entropy(magic, 2.0, system)
    if h2_magic <= 0.0:
        raise CertificationError("magic gate has vanishing 2-entropy")

    def run(i: int) -> float:
        circ = random_doped_circuit(
            system, t, word_length, stream.substream(i), magic=magic
        )
        return clifford_entropy(circ.unitary, 2.0, system)

    h2_values = list(indexed_map(run, list(range(n_circuits)), threads))
    ratios = [v / h2_magic for v in h2_values]
    frac = float(np.mean([r <= t for r in ratios]))
    return TcountReport(
        dimension=system.dimension,
        t=t,
        n_circuits=n_circuits,
        word_length=word_length,
        h2_magic=h2_magic,
        h2_values=tuple(h2_values),
        ratios=tuple(ratios),
        fraction_within_bound=frac,
        seed=stream.seed,
    )


# ---------------------------------------------------------------------------
# SIC fiducial search and subsystem purity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SicFiducial:
    dimension: int
    vector: np.ndarray
    frame_potential: float
    max_overlap_deviation: float
    accepted: bool
    restarts_used: int

    @property
    def target_overlap(self) -> float:
        return 1.0 / (self.dimension + 1.0)


def _fiducial_overlaps(system: QuditSystem, psi: np.ndarray) -> np.ndarray:
    """c_a = <psi| D_a |psi> over all d^2 points."""
    t = tables(system)
    return np.einsum("ak,ak,k->a", t.phase, np.conj(psi[t.perm]), psi, optimize=True)


def _frame_potential_and_grad(system: QuditSystem, x: np.ndarray):
    """sum_{a != 0} |<phi|D_a|phi>|^4 for phi = psi/||psi||, with gradient.

    x packs (Re psi, Im psi); the gradient is exact (Wirtinger calculus
    through the normalization), which the search needs to drive the
    overlap deviations below 1e-8.
    """
    t = tables(system)
    m = system.dimension
    psi = x[:m] + 1j * x[m:]
    nrm2 = float(np.vdot(psi, psi).real)
    c = np.einsum("ak,ak,k->a", t.phase, np.conj(psi[t.perm]), psi, optimize=True)
    c /= nrm2
    w = np.ones(system.num_points)
    w[0] = 0.0
    absc2 = np.abs(c) ** 2
    f = float((w * absc2**2).sum())
    # D_a psi and D_a^dag psi for every a
    dpsi = np.zeros((system.num_points, m), dtype=np.complex128)
    np.put_along_axis(dpsi, t.perm, t.phase * psi[None, :], axis=1)
    dhpsi = np.conj(t.phase) * psi[t.perm]
    coef = 2.0 * w * absc2
    gpsi = (
        coef[:, None]
        * (
            np.conj(c)[:, None] * (dpsi - c[:, None] * psi[None, :])
            + c[:, None] * (dhpsi - np.conj(c)[:, None] * psi[None, :])
        )
    ).sum(axis=0) / nrm2
    grad = np.concatenate([2.0 * gpsi.real, 2.0 * gpsi.imag])
    return f, grad


def frame_potential(psi, system: QuditSystem | None = None) -> float:
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if system is None:
        system = QuditSystem.single(psi.shape[0])
    psi = psi / np.linalg.norm(psi)
    c = _fiducial_overlaps(system, psi)
    return float((np.abs(c[1:]) ** 4).sum())


def sic_fiducial_search(
    dim: int,
    restarts: int = 20,
    stream: RngStream = RngStream(0),
    tol: float = 1e-8,
) -> SicFiducial:
    """Minimize the frame potential over unit vectors in dimension dim.

    Accepts when every off-zero overlap satisfies |<psi|D_a|psi>|^2 =
    1/(dim+1) within tol.  Failure after all restarts returns a report
    with accepted=False rather than raising: existence of such fiducials
    is not guaranteed in every dimension.
    """
    if dim < 2:
        raise ParameterError(f"dimension must be >= 2, got {dim}")
    system = QuditSystem.single(dim)
    target = 1.0 / (dim + 1.0)
    best = None
    for r in range(restarts):
        rng = stream.substream(r).generator()
        x0 = rng.standard_normal(2 * dim)
        res = minimize(
            lambda x: _frame_potential_and_grad(system, x),
            x0,
            jac=True,
            method="BFGS",
            options={"gtol": 1e-12, "maxiter": 2000},
        )
        # polish from the found point to squeeze out line-search stalls
        res = minimize(
            lambda x: _frame_potential_and_grad(system, x),
            res.x,
            jac=True,
            method="BFGS",
            options={"gtol": 1e-14, "maxiter": 2000},
        )
        psi = res.x[:dim] + 1j * res.x[dim:]
        psi /= np.linalg.norm(psi)
        c = _fiducial_overlaps(system, psi)
        dev = float(np.abs(np.abs(c[1:]) ** 2 - target).max())
        fp = float((np.abs(c[1:]) ** 4).sum())
        if best is None or dev < best[0]:
            best = (dev, fp, psi, r)
        if dev <= tol:
            break
    dev, fp, psi, r = best
    return SicFiducial(
        dimension=dim,
        vector=psi,
        frame_potential=fp,
        max_overlap_deviation=dev,
        accepted=bool(dev <= tol),
        restarts_used=r + 1,
    )


def sic_orbit_states(fid: SicFiducial) -> np.ndarray:
    """All dim^2 states D_a |psi>, rows of the returned array."""
    system = QuditSystem.single(fid.dimension)
    t = tables(system)
    out = np.zeros((system.num_points, fid.dimension), dtype=np.complex128)
    np.put_along_axis(out, t.perm, t.phase * fid.vector[None, :], axis=1)
    return out


def sic_subsystem_purity(fid: SicFiducial, d: int) -> float:
    """Average purity of one side of the orbit states read as d x d blocks.

    The fiducial must live in dimension d^2; the orbit under the full
    displacement group is reinterpreted on a d x d bipartition and the
    reduced purity tr(rho_1^2) is averaged over all d^4 states.  For an
    accepted fiducial this lands on 2d/(d^2+1).
    """
    if fid.dimension != d * d:
        raise DimensionMismatchError(
            f"fiducial dimension {fid.dimension} is not {d}^2 = {d * d}"
        )
    states = sic_orbit_states(fid)
    blocks = states.reshape(-1, d, d)
    rho = blocks @ blocks.conj().transpose(0, 2, 1)
    purities = np.einsum("nij,nji->n", rho, rho).real
    return float(purities.mean())


def predicted_sic_purity(d: int) -> float:
    return 2.0 * d / (d * d + 1.0)


def subsystem_purity(psi, d: int) -> float:
    """tr(rho_1^2) for a pure state on a d x d bipartition."""
    v = np.asarray(psi, dtype=np.complex128).reshape(d, d)
    rho = v @ v.conj().T
    return float(np.trace(rho @ rho).real)


def projective_2design_residual(fid: SicFiducial) -> float:
    """Frobenius distance of the orbit's doubled projectors from the
    symmetric-subspace projector identity satisfied by a 2-design."""
    states = sic_orbit_states(fid)
    n = fid.dimension
    acc = np.zeros((n * n, n * n), dtype=np.complex128)
    for s in states:
        pi = np.outer(s, s.conj())
        acc += np.kron(pi, pi)
    acc /= n * n
    swap = np.zeros((n * n, n * n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            swap[i * n + j, j * n + i] = 1.0
    psym = (np.eye(n * n) + swap) / 2.0
    target = 2.0 / (n * (n + 1.0)) * psym
    return float(np.linalg.norm(acc - target))
