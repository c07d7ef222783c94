"""Exact calculus for moment sequences of convex distribution functions
on [0,1], the completely alternating sequences they induce, subordinator
Laplace exponents, and the regenerative composition structures they drive.

Everything numeric is a Fraction unless a float is unavoidable
(interpolation at irrational points, Monte Carlo, figures).
"""

from .compstruct import (
    ChiSquareReport,
    CompositionDistribution,
    DEFAULT_CAP,
    QRow,
    RegenerationReport,
    ball_allocation,
    composition_pmf,
    deletion_projection,
    enumerate_compositions,
    goodness_of_fit,
    q_row_from_jumps,
    q_row_from_phi,
    regeneration_check,
    sample_composition_paintbox,
    sample_composition_recursive,
)
from .errors import (
    CertificationError,
    DepthError,
    EnumerationCapError,
    InvalidInputError,
    NormalizationError,
)
from .kconvex import (
    KAssociated,
    certify_k_alternating,
    k_associated,
    k_convex_moments,
)
from .momentrep import (
    ConvexCdf,
    DiscreteMeasure,
    alternating_of_mixture,
    hausdorff_reconstruct,
    mixing_moments,
    moments_of_mixture,
)
from .seqcalc import (
    CERTIFIED,
    VIOLATED,
    DepthCertificate,
    FiniteSequence,
    TriangularArrayRow,
    Witness,
    alternating_from_moments,
    certify_completely_alternating,
    certify_completely_monotone,
    certify_convex_moments,
    difference_table,
    moments_from_alternating,
    nabla_power,
    to_fraction,
    triangular_row,
)
from .subord import (
    LaplaceExponentData,
    from_mix_scale,
    laplace_exponent,
    laplace_exponent_at,
    laplace_exponent_mix_scale,
    laplace_exponent_sequence,
    mixing_measure,
    moments_from_laplace_exponent,
    newton_interpolate,
    normalized,
    to_mix_scale,
)

__version__ = "0.1.0"

__all__ = [
    "CERTIFIED",
    "VIOLATED",
    "CertificationError",
    "ChiSquareReport",
    "CompositionDistribution",
    "ConvexCdf",
    "DEFAULT_CAP",
    "DepthCertificate",
    "DepthError",
    "DiscreteMeasure",
    "EnumerationCapError",
    "FiniteSequence",
    "InvalidInputError",
    "KAssociated",
    "LaplaceExponentData",
    "NormalizationError",
    "QRow",
    "RegenerationReport",
    "TriangularArrayRow",
    "Witness",
    "alternating_from_moments",
    "alternating_of_mixture",
    "ball_allocation",
    "certify_completely_alternating",
    "certify_completely_monotone",
    "certify_convex_moments",
    "certify_k_alternating",
    "composition_pmf",
    "deletion_projection",
    "difference_table",
    "enumerate_compositions",
    "from_mix_scale",
    "goodness_of_fit",
    "hausdorff_reconstruct",
    "k_associated",
    "k_convex_moments",
    "laplace_exponent",
    "laplace_exponent_at",
    "laplace_exponent_mix_scale",
    "laplace_exponent_sequence",
    "mixing_measure",
    "mixing_moments",
    "moments_from_alternating",
    "moments_from_laplace_exponent",
    "moments_of_mixture",
    "nabla_power",
    "newton_interpolate",
    "normalized",
    "q_row_from_jumps",
    "q_row_from_phi",
    "regeneration_check",
    "sample_composition_paintbox",
    "sample_composition_recursive",
    "to_fraction",
    "to_mix_scale",
    "triangular_row",
]
