"""Clifford entropy of unitaries and stabilizer entropy of states.

Quantities are built on the Weyl-Heisenberg displacement operators of a
qudit register: characteristic functions of states and of conjugation
channels, the doubly stochastic matrix of squared moduli, and the entropy
measures on top of them, plus Monte Carlo / optimization experiment
drivers with seeded reproducibility.
"""

from .clifford import (
    CliffordGenerator,
    CliffordWord,
    clifford_generators,
    fourier_matrix,
    quadratic_phase_matrix,
    random_clifford_word,
    sum_gate_matrix,
    t_gate,
)
from .entropy import (
    ChiDistribution,
    ChoiState,
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
from .errors import (
    CertificationError,
    CliffentError,
    DimensionMismatchError,
    InvalidIndexError,
    MatrixFormatError,
    NormalizationError,
    ParameterError,
    SystemMismatchError,
    UnitarityError,
)
from .haar import (
    HaarAverageVariant,
    RngStream,
    analytic_avg_H2,
    mc_avg_H2,
    sample_haar,
    variant_for_system,
)
from .matrix_io import (
    UnitaryMatrix,
    load_matrix,
    load_state,
    load_unitary,
    save_matrix,
    save_state,
)
from .optimize import (
    LipschitzProbe,
    OptimizationResult,
    directional_derivative_H2,
    derivative_bound,
    lipschitz_constant,
    lipschitz_probe,
    maximize_H2,
    random_tangent,
)
from .experiments import (
    DopedCircuit,
    SicFiducial,
    SubadditivityReport,
    TcountReport,
    predicted_sic_purity,
    random_doped_circuit,
    sic_fiducial_search,
    sic_subsystem_purity,
    subadditivity_violation_rate,
    subsystem_purity,
    tcount_bound_experiment,
)
from .phase_space import (
    CharacteristicMatrix,
    PhaseSpaceIndex,
    QuditSystem,
    all_indices,
    char_function_state,
    char_matrix,
    displacement,
    ensure_state,
    ensure_unitary,
    symplectic_form,
    unitarity_defect,
)

__version__ = "0.1.0"
