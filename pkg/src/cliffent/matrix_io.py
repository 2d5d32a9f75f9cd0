"""JSON file format for unitaries and state vectors.

Layout: {"d": <int>, "entries": [[re, im], ...]} with d*d entries in
row-major order, each a pair of binary64 reals written as decimal text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import MatrixFormatError, UnitarityError
from .phase_space import DEFAULT_UNITARY_TOL, unitarity_defect


@dataclass(frozen=True)
class UnitaryMatrix:
    """A unitarity-checked matrix together with its measured defect."""

    matrix: np.ndarray
    defect: float

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


def parse_matrix(data) -> np.ndarray:
    """Decode the JSON object into a d x d complex array (no unitarity check)."""
    if not isinstance(data, dict):
        raise MatrixFormatError("<root>", "expected a JSON object")
    if "d" not in data:
        raise MatrixFormatError("d", "missing")
    d = data["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise MatrixFormatError("d", f"expected a positive integer, got {d!r}")
    if "entries" not in data:
        raise MatrixFormatError("entries", "missing")
    entries = data["entries"]
    if not isinstance(entries, list):
        raise MatrixFormatError("entries", "expected a list")
    if len(entries) != d * d:
        raise MatrixFormatError(
            "entries", f"expected {d * d} pairs for d={d}, got {len(entries)}"
        )
    out = np.empty(d * d, dtype=np.complex128)
    for i, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise MatrixFormatError(
                f"entries[{i}]", f"expected a [re, im] pair of reals, got {pair!r}"
            )
        out[i] = complex(pair[0], pair[1])
    mat = out.reshape(d, d)
    if not np.isfinite(mat).all():
        bad = int(np.flatnonzero(~np.isfinite(out))[0])
        raise MatrixFormatError(f"entries[{bad}]", "non-finite value")
    return mat


def load_matrix(path) -> np.ndarray:
    """Read a matrix file without the unitarity gate."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError("<document>", f"invalid JSON: {exc}") from exc
    return parse_matrix(data)


def load_unitary(path, tol: float = DEFAULT_UNITARY_TOL) -> UnitaryMatrix:
    """Read a matrix file and certify unitarity.

    Raises MatrixFormatError for malformed input and UnitarityError (with
    the Frobenius defect) when the matrix is not unitary within tol.
    """
    mat = load_matrix(path)
    defect = unitarity_defect(mat)
    if defect > tol:
        raise UnitarityError(defect, tol)
    return UnitaryMatrix(matrix=mat, defect=defect)


def save_matrix(path, U: np.ndarray) -> None:
    U = np.asarray(U, dtype=np.complex128)
    d = U.shape[0]
    flat = U.reshape(-1)
    entries = [[float(z.real), float(z.imag)] for z in flat]
    with open(path, "w") as fh:
        json.dump({"d": int(d), "entries": entries}, fh)
        fh.write("\n")


def parse_state(data) -> np.ndarray:
    """Decode the same JSON layout holding d entries as a state vector."""
    if not isinstance(data, dict):
        raise MatrixFormatError("<root>", "expected a JSON object")
    if "d" not in data:
        raise MatrixFormatError("d", "missing")
    d = data["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise MatrixFormatError("d", f"expected a positive integer, got {d!r}")
    entries = data.get("entries")
    if not isinstance(entries, list) or len(entries) != d:
        raise MatrixFormatError("entries", f"expected {d} pairs for a state")
    vec = np.empty(d, dtype=np.complex128)
    for i, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise MatrixFormatError(
                f"entries[{i}]", f"expected a [re, im] pair of reals, got {pair!r}"
            )
        vec[i] = complex(pair[0], pair[1])
    if not np.isfinite(vec).all():
        bad = int(np.flatnonzero(~np.isfinite(vec))[0])
        raise MatrixFormatError(f"entries[{bad}]", "non-finite value")
    return vec


def load_state(path, tol: float = 1e-10) -> np.ndarray:
    """Read a normalized state vector; rejects norm defects beyond tol."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError("<document>", f"invalid JSON: {exc}") from exc
    vec = parse_state(data)
    nrm = float(np.linalg.norm(vec))
    if abs(nrm - 1.0) > tol:
        raise MatrixFormatError("entries", f"state norm {nrm!r} differs from 1")
    return vec


def save_state(path, psi: np.ndarray) -> None:
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    entries = [[float(z.real), float(z.imag)] for z in psi]
    with open(path, "w") as fh:
        json.dump({"d": int(psi.shape[0]), "entries": entries}, fh)
        fh.write("\n")
