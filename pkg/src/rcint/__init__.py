"""Robust (interval-capacity) Choquet, Sugeno and Shilkret integrals."""

from .capacity import (
    Capacity,
    IntervalCapacity,
    SeparableDecomposition,
    decompose_separable,
    diagonal_capacity,
    interval_capacity_new,
    is_separable,
    lower_upper_derived,
    separable_from,
)
from .errors import RcintError
from .extensions import (
    BipolarIntervalCapacity,
    BipolarQuad,
    Decomposition,
    LevelDependentCapacity,
    MPointCapacity,
    MPointVector,
    bipolar_from_interval,
    bipolar_rci,
    concave_robust,
    mpoint_rci,
    rci_level_dependent,
)
from .integrals import (
    Interval,
    IntervalVector,
    choquet,
    comonotone,
    indicator,
    iv_add,
    iv_leq,
    iv_scale,
    rci,
    rci_mobius,
    rci_riemann,
    robust_shilkret,
    rsi,
    rsi_sorted,
    shilkret,
    sugeno,
    sugeno_subsets,
)
from .lattice import CriterionSet, QPair, enumerate_q, q_from_index, q_index, q_intersection, q_leq, q_union, qpair_new
from .mobius import MobiusRepresentation, is_interval_capacity_mobius, mobius, mobius_classical, zeta, zeta_classical

__version__ = "0.1.0"

__all__ = [
    "bipolar_from_interval",
    "bipolar_rci",
    "BipolarIntervalCapacity",
    "BipolarQuad",
    "Capacity",
    "choquet",
    "comonotone",
    "concave_robust",
    "CriterionSet",
    "decompose_separable",
    "Decomposition",
    "diagonal_capacity",
    "enumerate_q",
    "indicator",
    "Interval",
    "interval_capacity_new",
    "IntervalCapacity",
    "IntervalVector",
    "is_interval_capacity_mobius",
    "is_separable",
    "iv_add",
    "iv_leq",
    "iv_scale",
    "LevelDependentCapacity",
    "lower_upper_derived",
    "mobius",
    "mobius_classical",
    "MobiusRepresentation",
    "mpoint_rci",
    "MPointCapacity",
    "MPointVector",
    "q_from_index",
    "q_index",
    "q_intersection",
    "q_leq",
    "q_union",
    "QPair",
    "qpair_new",
    "rci",
    "rci_level_dependent",
    "rci_mobius",
    "rci_riemann",
    "RcintError",
    "robust_shilkret",
    "rsi",
    "rsi_sorted",
    "separable_from",
    "SeparableDecomposition",
    "shilkret",
    "sugeno",
    "sugeno_subsets",
    "zeta",
    "zeta_classical",
]
