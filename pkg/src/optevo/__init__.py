"""Synthesis and certification of maximal-speed quantum evolutions.

The package answers three linked questions about unitary evolution between
pure (or quasi-pure) states: which generators move a given state as fast
as the energy uncertainty allows, how to build every such generator for a
chosen pair of rays, and how long the transfer takes. The same geometry is
exposed on the algebra side as an equigeodesic certificate for directions
on the flag of one-dimensional projectors.
"""

from .errors import (
    BlockStructureError,
    DimensionMismatchError,
    DistinguishedStateNotMappedError,
    EigenConvergenceError,
    FoldExceededError,
    InvalidQuasiPureError,
    NotHermitianError,
    NotOptimalError,
    NotRankOneError,
    NotSkewHermitianError,
    NotUnitaryError,
    SerializationError,
    SpectraMismatchError,
    StationaryStateError,
)
from .numerics import (
    DEFAULT_TOLERANCES,
    Tolerances,
    frobenius,
    golden_section_min,
    herm_eig,
    is_hermitian,
    is_skew_hermitian,
    is_unitary,
    unitary_exp,
)
from .lie_flag import (
    BlockStructure,
    MetricOperator,
    SuVector,
    ad_conjugate,
    apply_metric,
    bracket,
    coset_orbit,
    is_equigeodesic_structural,
    is_equigeodesic_variational,
    killing_inner,
    killing_norm,
    reductive_split,
)
from .quantum_states import (
    DensityMatrix,
    PureState,
    QuasiPureSpec,
    Units,
    energy_uncertainty,
    energy_uncertainty_max,
    fidelity,
    fs_distance,
    projector,
    quasi_pure,
    quasi_pure_transport,
    state_from_projector,
)
from .synthesis import (
    HamiltonianBlocks,
    OptimalityVerdict,
    Verdict,
    adapted_basis,
    adapted_blocks,
    equigeodesic_vector_of,
    first_arrival_time,
    is_optimal_speed,
    optimal_family_sample,
    optimal_hamiltonian,
    qsl_time,
)
from .evolution import (
    Trajectory,
    density_arrival_time,
    fs_speed_profile,
    geodesic_defect,
    propagate,
    propagate_density,
    sample_trajectory,
    subspace_leakage,
    trace_distance,
)
from .verification import PropertyResult, SUITE_NAMES, run_suite

__version__ = "0.1.0"

__all__ = [
    "BlockStructureError",
    "DimensionMismatchError",
    "DistinguishedStateNotMappedError",
    "EigenConvergenceError",
    "FoldExceededError",
    "InvalidQuasiPureError",
    "NotHermitianError",
    "NotOptimalError",
    "NotRankOneError",
    "NotSkewHermitianError",
    "NotUnitaryError",
    "SerializationError",
    "SpectraMismatchError",
    "StationaryStateError",
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "frobenius",
    "golden_section_min",
    "herm_eig",
    "is_hermitian",
    "is_skew_hermitian",
    "is_unitary",
    "unitary_exp",
    "BlockStructure",
    "MetricOperator",
    "SuVector",
    "ad_conjugate",
    "apply_metric",
    "bracket",
    "coset_orbit",
    "is_equigeodesic_structural",
    "is_equigeodesic_variational",
    "killing_inner",
    "killing_norm",
    "reductive_split",
    "DensityMatrix",
    "PureState",
    "QuasiPureSpec",
    "Units",
    "energy_uncertainty",
    "energy_uncertainty_max",
    "fidelity",
    "fs_distance",
    "projector",
    "quasi_pure",
    "quasi_pure_transport",
    "state_from_projector",
    "HamiltonianBlocks",
    "OptimalityVerdict",
    "Verdict",
    "adapted_basis",
    "adapted_blocks",
    "equigeodesic_vector_of",
    "first_arrival_time",
    "is_optimal_speed",
    "optimal_family_sample",
    "optimal_hamiltonian",
    "qsl_time",
    "Trajectory",
    "density_arrival_time",
    "fs_speed_profile",
    "geodesic_defect",
    "propagate",
    "propagate_density",
    "sample_trajectory",
    "subspace_leakage",
    "trace_distance",
    "PropertyResult",
    "SUITE_NAMES",
    "run_suite",
    "__version__",
]
