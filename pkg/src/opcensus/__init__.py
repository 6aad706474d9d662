"""Exact fixed-point combinatorics of orientation-preserving transformation monoids.

The package computes, enumerates and cross-verifies, all in exact
arithmetic:

* the monoids of order-preserving ("On"), orientation-preserving ("OPn")
  and rotated-order-preserving ("Onk") full transformations of {1, ..., n},
* closed-form counts for how many members fix a given point or have a given
  number of fixed points, with the identities and recurrence tying them
  together,
* the exact probability distribution of the fixed-point count (mean 1),
* a brute-force census that re-measures every count by full enumeration.
"""

from .counting import (
    FixedPointDistribution,
    binomial,
    check_identity,
    check_recurrence,
    distribution,
    fixed_points_count,
    fixing_count,
    order_preserving_fixed_points_count,
    order_preserving_size,
    orientation_preserving_size,
    sending_count,
)
from .census import (
    CensusBoundError,
    CensusFormatError,
    CensusTable,
    Check,
    VerificationReport,
    cache_roundtrip,
    census,
    decode_census,
    encode_census,
    verify,
)
from .digraph import (
    Component,
    ComponentDecomposition,
    CyclicInterval,
    cyclic_interval,
    decompose,
    fixed_component_shifts,
)
from .monoids import (
    Factorization,
    MonoidId,
    factorizations,
    order_preserving_maps,
    order_preserving_shifts,
    orientation_preserving_maps,
    rotated_order_preserving_maps,
)
from .transforms import (
    RotatedOrder,
    Transformation,
    compose,
    conjugate,
    constant,
    fixed_points,
    identity,
    is_order_preserving,
    is_orientation_preserving,
    rotation,
)

__version__ = "0.1.0"

__all__ = [
    "Transformation",
    "RotatedOrder",
    "identity",
    "constant",
    "rotation",
    "compose",
    "conjugate",
    "fixed_points",
    "is_order_preserving",
    "is_orientation_preserving",
    "MonoidId",
    "Factorization",
    "order_preserving_maps",
    "orientation_preserving_maps",
    "rotated_order_preserving_maps",
    "factorizations",
    "order_preserving_shifts",
    "Component",
    "ComponentDecomposition",
    "CyclicInterval",
    "cyclic_interval",
    "decompose",
    "fixed_component_shifts",
    "binomial",
    "order_preserving_size",
    "orientation_preserving_size",
    "sending_count",
    "fixing_count",
    "fixed_points_count",
    "order_preserving_fixed_points_count",
    "check_identity",
    "check_recurrence",
    "FixedPointDistribution",
    "distribution",
    "CensusTable",
    "CensusBoundError",
    "CensusFormatError",
    "census",
    "encode_census",
    "decode_census",
    "cache_roundtrip",
    "Check",
    "VerificationReport",
    "verify",
    "__version__",
]
