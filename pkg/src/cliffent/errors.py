"""Exception types shared across the package."""


class CliffentError(Exception):
    """Base class for all cliffent errors."""


class InvalidIndexError(CliffentError):
    """Phase-space index component out of range or wrong arity."""


class SystemMismatchError(CliffentError):
    """Operands belong to different qudit systems."""


class DimensionMismatchError(CliffentError):
    """Matrix or vector dimension does not match the system."""


class NormalizationError(CliffentError):
    """State vector is not normalized within tolerance."""


class UnitarityError(CliffentError):
    """Matrix fails the unitarity check. Carries the Frobenius defect."""

    def __init__(self, defect: float, tol: float):
        self.defect = defect
        self.tol = tol
        super().__init__(
            f"matrix is not unitary: ||U^dag U - I||_F = {defect:.6e} > {tol:.1e}"
        )


class ParameterError(CliffentError):
    """Unsupported parameter value (e.g. alpha = 1 or alpha <= 0)."""


class CertificationError(CliffentError):
    """A constructed gate failed (or unexpectedly passed) Clifford certification."""


class MatrixFormatError(CliffentError):
    """Malformed matrix file. Carries the first offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"bad field '{field}': {message}")
