"""Haar-random unitaries and the closed-form average of the 2-entropy.

Sampling is the standard Ginibre + QR construction with the R-diagonal
phase correction that makes the distribution exactly Haar.  Reproducibility
runs through RngStream: a master seed plus a tuple of substream indices,
so that sample i of a Monte Carlo run depends only on (seed, i) and never
on thread count or execution order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .entropy import clifford_entropy_many
from .errors import ParameterError
from .parallel import indexed_map
from .phase_space import QuditSystem


@dataclass(frozen=True)
class RngStream:
    """Deterministic random stream addressed by (seed, substream key)."""

    seed: int
    key: tuple[int, ...] = field(default_factory=tuple)

    def substream(self, *indices: int) -> "RngStream":
        return RngStream(self.seed, self.key + tuple(int(i) for i in indices))

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence(self.seed, spawn_key=self.key)
        )


def haar_from_generator(rng: np.random.Generator, d: int, count: int = 1) -> np.ndarray:
    """Batch of Haar unitaries drawn sequentially from one generator."""
    z = rng.standard_normal((count, d, d)) + 1j * rng.standard_normal((count, d, d))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    diag = np.einsum("nii->ni", r)
    return q * (diag / np.abs(diag))[:, None, :]


def sample_haar(d: int, stream: RngStream) -> np.ndarray:
    """One Haar-random d x d unitary; a pure function of (d, stream)."""
    if d < 2:
        raise ParameterError(f"dimension must be >= 2, got {d}")
    return haar_from_generator(stream.generator(), d, 1)[0]


def sample_haar_indexed(d: int, stream: RngStream, index: int) -> np.ndarray:
    """Sample number `index` of a run: draws from stream.substream(index)."""
    return sample_haar(d, stream.substream(index))


class HaarAverageVariant(enum.Enum):
    ODD_D = "odd_d"
    EVEN_D = "even_d"
    QUBITS = "qubits"


def variant_for_system(system: QuditSystem) -> HaarAverageVariant:
    """The closed-form variant matching a displacement-group choice."""
    if all(f == 2 for f in system.factors):
        return HaarAverageVariant.QUBITS
    if system.num_qudits != 1:
        raise ParameterError(
            "closed forms exist only for single-qudit groups and qubit groups"
        )
    if system.dimension % 2 == 1:
        return HaarAverageVariant.ODD_D
    return HaarAverageVariant.EVEN_D


def analytic_avg_H2(d: int, variant: HaarAverageVariant) -> float:
    """Closed-form Haar average of the 2-entropy for dimension d.

    Three cases: odd d, even d (both with the single-qudit group), and
    d = 2^n with the n-qubit group.  The variant must be consistent with d.
    """
    if isinstance(variant, str):
        variant = HaarAverageVariant(variant)
    d = int(d)
    if d < 2:
        raise ParameterError(f"dimension must be >= 2, got {d}")
    if variant is HaarAverageVariant.ODD_D:
        if d % 2 == 0:
            raise ParameterError(f"odd_d variant requires odd d, got {d}")
        return 1.0 - 3.0 * (d**4 - 4 * d**2 + 2) / (d**4 * (d**2 - 4))
    if variant is HaarAverageVariant.EVEN_D:
        if d % 2 == 1:
            raise ParameterError(f"even_d variant requires even d, got {d}")
        return 1.0 - 3.0 * (d**4 - 10 * d**2 + 10) / (
            d**2 * (d**2 - 9) * (d**2 - 1)
        )
    if variant is HaarAverageVariant.QUBITS:
        n = d.bit_length() - 1
        if 2**n != d:
            raise ParameterError(f"qubits variant requires d = 2^n, got {d}")
        return 1.0 - 4.0 * (d**4 - 9 * d**2 + 6) / (d**4 * (d**2 - 9))
    raise ParameterError(f"unknown variant {variant!r}")


def _chunk_size(d: int) -> int:
    # fixed per dimension so results never depend on threading
    return max(16, min(4096, (1 << 22) // d**4))


def mc_avg_H2(
    system: QuditSystem,
    n_samples: int,
    stream: RngStream,
    threads: int | None = None,
) -> tuple[float, float]:
    """Monte Carlo mean and standard error of the 2-entropy over Haar draws.

    Sample i is drawn from stream.substream(i); per-sample values are
    assembled in index order, so the result is bitwise identical for any
    thread count.
    """
    if n_samples < 1:
        raise ParameterError(f"n_samples must be >= 1, got {n_samples}")
    d = system.dimension
    values = np.empty(n_samples, dtype=np.float64)
    chunk = _chunk_size(d)
    spans = [(i, min(i + chunk, n_samples)) for i in range(0, n_samples, chunk)]

    def run_span(span):
        lo, hi = span
        us = np.empty((hi - lo, d, d), dtype=np.complex128)
        for i in range(lo, hi):
            us[i - lo] = sample_haar_indexed(d, stream, i)
        return lo, hi, clifford_entropy_many(us, 2.0, system, check_unitary=False)

    for lo, hi, vals in indexed_map(run_span, spans, threads):
        values[lo:hi] = vals
    mean = float(values.mean())
    if n_samples == 1:
        return mean, 0.0
    stderr = float(values.std(ddof=1) / np.sqrt(n_samples))
    return mean, stderr
