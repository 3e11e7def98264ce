"""Quantum design verification, entropic uncertainty bounds, and steering tests."""

__version__ = "0.1.0"

from .combinatorics import Partition, class_size, partitions, sym_dim_inverse
from .designs import (
    DesignSet,
    DesignVerificationError,
    NoOrthogonalPairs,
    VerificationReport,
    as_single_povm,
    catalog,
    catalog_names,
    frame_potential,
    load_design,
    partition_into_povms,
    save_design,
    verify_design,
)
from .entropy import (
    EntropyOrder,
    JointDistribution,
    conditional_renyi,
    convert_tsallis_to_renyi,
    renyi,
    shannon,
    tsallis,
)
from .eur import (
    BoundReport,
    FtPolynomial,
    design_moment_sum,
    f_t_lower_bound,
    f_t_polynomial,
    f_t_rho,
    lhs_entropy_sum,
    optimal_tprime,
    renyi_bound,
    tsallis_bound,
)
from .haar import SampleEstimate, haar_moment_estimate, random_density, sample_pure
from .linalg import (
    BlochVector,
    DensityMatrix,
    PureState,
    bloch_to_state,
    moment,
    moment_sequence,
    state_to_bloch,
)
from .measurements import (
    MeasurementAssembly,
    NotNormalizable,
    Povm,
    depolarize,
    outcome_distribution,
)
from .steering import (
    NoViolation,
    SteeringScenario,
    ThresholdResult,
    esi_lhs,
    joint_distribution,
    maximally_entangled,
    scan_threshold,
    scenario_from_design,
    standard_scenario,
)

__all__ = [
    "__version__",
    "BlochVector",
    "BoundReport",
    "DensityMatrix",
    "DesignSet",
    "DesignVerificationError",
    "EntropyOrder",
    "FtPolynomial",
    "JointDistribution",
    "MeasurementAssembly",
    "NoOrthogonalPairs",
    "NotNormalizable",
    "NoViolation",
    "Partition",
    "Povm",
    "PureState",
    "SampleEstimate",
    "SteeringScenario",
    "ThresholdResult",
    "VerificationReport",
    "as_single_povm",
    "bloch_to_state",
    "catalog",
    "catalog_names",
    "class_size",
    "conditional_renyi",
    "convert_tsallis_to_renyi",
    "depolarize",
    "design_moment_sum",
    "esi_lhs",
    "f_t_lower_bound",
    "f_t_polynomial",
    "f_t_rho",
    "frame_potential",
    "haar_moment_estimate",
    "joint_distribution",
    "lhs_entropy_sum",
    "load_design",
    "maximally_entangled",
    "moment",
    "moment_sequence",
    "optimal_tprime",
    "outcome_distribution",
    "partition_into_povms",
    "partitions",
    "random_density",
    "renyi",
    "renyi_bound",
    "sample_pure",
    "save_design",
    "scan_threshold",
    "scenario_from_design",
    "shannon",
    "standard_scenario",
    "state_to_bloch",
    "sym_dim_inverse",
    "tsallis",
    "tsallis_bound",
    "verify_design",
]
