"""Exact computations with finite-dimensional Zinbiel algebras."""

from .algebra import (
    Algebra,
    BasisChange,
    ZinbielReport,
    direct_sum,
    multiply,
    permutation_change,
    transport,
    zinbiel_check,
)
from .analysis import (
    Fingerprint,
    GradedAlgebra,
    PowerSeries,
    Shape,
    annihilator,
    classify_shape,
    fingerprint,
    generator_count,
    natural_grading,
    nilindex,
    power_series,
    signature,
)
from .catalog import (
    CatalogId,
    binomial,
    make_dim4,
    make_f1,
    make_f2,
    make_f3,
    make_filiform,
    make_nf,
)
from .linalg import Subspace, row_reduce
from .scalars import QuadraticScalar

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "BasisChange",
    "CatalogId",
    "Fingerprint",
    "GradedAlgebra",
    "PowerSeries",
    "QuadraticScalar",
    "Shape",
    "Subspace",
    "ZinbielReport",
    "annihilator",
    "binomial",
    "classify_shape",
    "direct_sum",
    "fingerprint",
    "generator_count",
    "make_dim4",
    "make_f1",
    "make_f2",
    "make_f3",
    "make_filiform",
    "make_nf",
    "multiply",
    "natural_grading",
    "nilindex",
    "permutation_change",
    "power_series",
    "row_reduce",
    "signature",
    "transport",
    "zinbiel_check",
]
