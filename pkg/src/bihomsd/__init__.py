"""Exact computer algebra for finite-dimensional BiHom-superdialgebras.

Structure-constant instances over Q or F_p, axiom checkers with itemized
counterexamples, twist/quotient/morphism constructions, and derivation-type
spaces computed as exact nullspaces.
"""

from .fields import QQ, PrimeField, RationalField, field_from_name
from .linalg import Matrix, extend_to_basis, nullspace, rank, rref, solve
from .model import (
    DialgebraInstance,
    DifferentialInstance,
    GradedMap,
    ParityMap,
    ProductTensor,
    SuperalgebraInstance,
    SuperSpace,
    check_grading,
    evaluate,
    hom_power,
)

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "PrimeField",
    "RationalField",
    "field_from_name",
    "Matrix",
    "extend_to_basis",
    "nullspace",
    "rank",
    "rref",
    "solve",
    "SuperSpace",
    "ProductTensor",
    "GradedMap",
    "ParityMap",
    "DialgebraInstance",
    "SuperalgebraInstance",
    "DifferentialInstance",
    "evaluate",
    "hom_power",
    "check_grading",
    "__version__",
]
