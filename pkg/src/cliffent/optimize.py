"""Maximization of the 2-entropy over the unitary group and derivative probes.

The search works in a Lie-algebra chart: starting from a Haar draw U0,
candidates are exp(K(x)) U0 with K(x) a real combination of an orthonormal
anti-Hermitian basis, and a quasi-Newton (BFGS) ascent runs over the d^2
chart coordinates with a central-difference gradient.  The directional
derivative along a unit tangent K is bounded by 8/sqrt(d) and the entropy
itself is Lipschitz with constant 4*pi/sqrt(d); both bounds are probed
empirically here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from .entropy import clifford_entropy_many, h2_upper_bound
from .errors import ParameterError
from .haar import RngStream, haar_from_generator, sample_haar
from .parallel import indexed_map
from .phase_space import QuditSystem, _system_for_dim, ensure_unitary

TANGENT_TOL = 1e-12
FD_STEP = 1e-5
GRAD_TOL = 1e-8
VALUE_TOL = 1e-12


def antihermitian_basis(d: int) -> np.ndarray:
    """Orthonormal basis of the d^2 anti-Hermitian matrices (Frobenius)."""
    basis = np.zeros((d * d, d, d), dtype=np.complex128)
    i = 0
    for k in range(d):
        basis[i, k, k] = 1j
        i += 1
    for j in range(d):
        for k in range(j + 1, d):
            basis[i, j, k] = 1 / np.sqrt(2)
            basis[i, k, j] = -1 / np.sqrt(2)
            i += 1
            basis[i, j, k] = 1j / np.sqrt(2)
            basis[i, k, j] = 1j / np.sqrt(2)
            i += 1
    return basis


def ensure_tangent(K, tol: float = TANGENT_TOL) -> np.ndarray:
    """Validate K^dag = -K and unit Frobenius norm."""
    K = np.asarray(K, dtype=np.complex128)
    if np.abs(K + K.conj().T).max() > tol:
        raise ParameterError("tangent direction is not anti-Hermitian")
    nrm = np.linalg.norm(K)
    if abs(nrm - 1.0) > tol:
        raise ParameterError(f"tangent direction has norm {nrm!r}, expected 1")
    return K


def random_tangent(d: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    k = (a - a.conj().T) / 2.0
    return k / np.linalg.norm(k)


def _h2(system: QuditSystem, U: np.ndarray) -> float:
    return float(clifford_entropy_many(U[None], 2.0, system, check_unitary=False)[0])


def directional_derivative_H2(
    U,
    K,
    h: float = 1e-3,
    system: QuditSystem | None = None,
) -> float:
    """d/dt H2(exp(tK) U) at t = 0 by central differences with Richardson.

    Magnitude is bounded by 8/sqrt(d) for any unit tangent.
    """
    U = ensure_unitary(U)
    system = _system_for_dim(system, U.shape[0])
    K = ensure_tangent(K)

    def f(t: float) -> float:
        return _h2(system, expm(t * K) @ U)

    coarse = (f(h) - f(-h)) / (2.0 * h)
    fine = (f(h / 2) - f(-h / 2)) / h
    return (4.0 * fine - coarse) / 3.0


def derivative_bound(d: int) -> float:
    return 8.0 / np.sqrt(d)


def lipschitz_constant(d: int) -> float:
    return 4.0 * np.pi / np.sqrt(d)


@dataclass(frozen=True)
class RestartTrace:
    index: int
    iterations: int
    value: float
    converged: bool
    values: tuple[float, ...]  # objective after each accepted step


@dataclass(frozen=True)
class OptimizationResult:
    best_unitary: np.ndarray
    best_value: float
    bound: float
    traces: tuple[RestartTrace, ...]
    seed: int

    @property
    def gap_to_bound(self) -> float:
        return self.bound - self.best_value


def _maximize_one(
    system: QuditSystem, U0: np.ndarray, basis: np.ndarray, max_iters: int
) -> tuple[np.ndarray, float, int, bool, tuple[float, ...]]:
    nb = basis.shape[0]

    def value(x: np.ndarray) -> float:
        K = np.tensordot(x, basis, axes=(0, 0))
        return -_h2(system, expm(K) @ U0)

    def grad(x: np.ndarray) -> np.ndarray:
        # all 2 nb perturbed points in one batched expm + entropy call
        steps = np.concatenate([np.eye(nb) * FD_STEP, -np.eye(nb) * FD_STEP])
        ks = np.tensordot(x[None, :] + steps, basis, axes=(1, 0))
        us = expm(ks) @ U0
        vals = -clifford_entropy_many(us, 2.0, system, check_unitary=False)
        return (vals[:nb] - vals[nb:]) / (2.0 * FD_STEP)

    accepted: list[float] = []
    res = minimize(
        value,
        np.zeros(nb),
        jac=grad,
        method="BFGS",
        callback=lambda xk: accepted.append(-value(xk)),
        options={"gtol": GRAD_TOL, "maxiter": max_iters},
    )
    K = np.tensordot(res.x, basis, axes=(0, 0))
    U = expm(K) @ U0
    return U, -float(res.fun), int(res.nit), bool(res.success), tuple(accepted)


def maximize_H2(
    d: int,
    restarts: int = 100,
    max_iters: int = 300,
    stream: RngStream = RngStream(0),
    system: QuditSystem | None = None,
    threads: int | None = None,
) -> OptimizationResult:
    """Best 2-entropy found over quasi-Newton ascents from Haar starts.

    Restart r draws its start from stream.substream(r); ties within 1e-12
    resolve to the lowest restart index.  Non-convergence within max_iters
    is flagged in the trace, with the best point still returned.
    """
    if restarts < 1:
        raise ParameterError(f"restarts must be >= 1, got {restarts}")
    if system is None:
        system = QuditSystem.single(d)
    if system.dimension != d:
        raise ParameterError(f"system dimension {system.dimension} != d = {d}")
    basis = antihermitian_basis(d)

    def run(r: int):
        U0 = sample_haar(d, stream.substream(r))
        return (r, *_maximize_one(system, U0, basis, max_iters))

    traces = []
    best_val = -np.inf
    best_U = None
    for r, U, val, nit, ok, accepted in indexed_map(run, list(range(restarts)), threads):
        traces.append(
            RestartTrace(
                index=r, iterations=nit, value=val, converged=ok, values=accepted
            )
        )
        if val > best_val + VALUE_TOL:
            best_val = val
            best_U = U
    best_val = _h2(system, best_U)
    return OptimizationResult(
        best_unitary=best_U,
        best_value=best_val,
        bound=h2_upper_bound(d),
        traces=tuple(traces),
        seed=stream.seed,
    )


@dataclass(frozen=True)
class LipschitzProbe:
    dimension: int
    n_pairs: int
    max_ratio: float          # |H2(U) - H2(V)| / ||U - V||_F
    bound: float              # 4 pi / sqrt(d)
    max_ratio_pairwise: float  # same for G(U,V) = H2(UV) - H2(U) - H2(V)
    bound_pairwise: float     # 2 sqrt(2) * 4 pi / sqrt(d)


def lipschitz_probe(
    d: int,
    n_pairs: int,
    stream: RngStream = RngStream(0),
    system: QuditSystem | None = None,
) -> LipschitzProbe:
    """Largest observed difference quotients over Haar pairs.

    Probe i draws (U_i, V_i) from stream.substream(i).  The pairwise
    function is probed between consecutive draws on the product metric.
    Coincident pairs (zero distance) are skipped.
    """
    if n_pairs < 1:
        raise ParameterError(f"n_pairs must be >= 1, got {n_pairs}")
    if system is None:
        system = QuditSystem.single(d)
    us = np.empty((n_pairs, d, d), dtype=np.complex128)
    vs = np.empty((n_pairs, d, d), dtype=np.complex128)
    for i in range(n_pairs):
        rng = stream.substream(i).generator()
        pair = haar_from_generator(rng, d, 2)
        us[i], vs[i] = pair[0], pair[1]
    h2u = clifford_entropy_many(us, 2.0, system, check_unitary=False)
    h2v = clifford_entropy_many(vs, 2.0, system, check_unitary=False)
    h2uv = clifford_entropy_many(us @ vs, 2.0, system, check_unitary=False)

    dist = np.linalg.norm((us - vs).reshape(n_pairs, -1), axis=1)
    ok = dist > 1e-12
    ratios = np.abs(h2u - h2v)[ok] / dist[ok]
    max_ratio = float(ratios.max()) if ratios.size else 0.0

    max_pair = 0.0
    if n_pairs > 1:
        g = h2uv - h2u - h2v
        du = np.linalg.norm((us[1:] - us[:-1]).reshape(n_pairs - 1, -1), axis=1)
        dv = np.linalg.norm((vs[1:] - vs[:-1]).reshape(n_pairs - 1, -1), axis=1)
        dprod = np.sqrt(du**2 + dv**2)
        okp = dprod > 1e-12
        if okp.any():
            ratios_p = np.abs(g[1:] - g[:-1])[okp] / dprod[okp]
            max_pair = float(ratios_p.max())
    L = lipschitz_constant(d)
    return LipschitzProbe(
        dimension=d,
        n_pairs=n_pairs,
        max_ratio=max_ratio,
        bound=L,
        max_ratio_pairwise=max_pair,
        bound_pairwise=2.0 * np.sqrt(2.0) * L,
    )
