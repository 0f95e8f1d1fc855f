"""Direction sets of integer tuples: enumeration, density, construction."""

from .construction import (
    FactorialFloor,
    RepetitionReport,
    StepRecord,
    VerificationReport,
    construct,
    dump_construction,
    factorial_floor,
    repetition_demo,
    verify_construction,
)
from .core import (
    UNIT_NORM_TOL,
    distance,
    is_unit,
    lift,
    normalize,
    permute,
    primitive,
    project,
)
from .density import (
    DensityReport,
    RatioGapStat,
    SphereNet,
    audit_net,
    chain_check,
    covering_radius,
    ratio_gap,
    sphere_net,
    witness_tuple,
)
from .enumeration import (
    DirectionCloud,
    GroundSet,
    accumulation_candidates,
    budget,
    directions,
    explicit_ground_set,
    export_csv,
    export_json,
    ground_set,
)
from .errors import DirectionsError, DomainError, PrecisionError, ResourceError
from .exact import Surd, SurdSum, sqrt_floor, squarefree_split
from .targets import (
    TargetPoint,
    TargetSpec,
    ValidityReport,
    close_generators,
    dense_prefix,
    enumerate_dense,
    load_spec,
    save_spec,
    validate_target,
)

__version__ = "0.1.0"

__all__ = [
    "DirectionCloud",
    "DirectionsError",
    "DensityReport",
    "DomainError",
    "FactorialFloor",
    "GroundSet",
    "PrecisionError",
    "RatioGapStat",
    "RepetitionReport",
    "ResourceError",
    "SphereNet",
    "StepRecord",
    "Surd",
    "SurdSum",
    "TargetPoint",
    "TargetSpec",
    "UNIT_NORM_TOL",
    "ValidityReport",
    "VerificationReport",
    "accumulation_candidates",
    "audit_net",
    "budget",
    "chain_check",
    "close_generators",
    "construct",
    "covering_radius",
    "dense_prefix",
    "directions",
    "distance",
    "dump_construction",
    "enumerate_dense",
    "explicit_ground_set",
    "export_csv",
    "export_json",
    "factorial_floor",
    "ground_set",
    "is_unit",
    "lift",
    "load_spec",
    "normalize",
    "permute",
    "primitive",
    "project",
    "ratio_gap",
    "repetition_demo",
    "save_spec",
    "sphere_net",
    "sqrt_floor",
    "squarefree_split",
    "validate_target",
    "verify_construction",
    "witness_tuple",
]
