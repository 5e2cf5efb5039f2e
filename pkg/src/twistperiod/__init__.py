"""Quadratic twists of elliptic curves over Q.

Exact Weierstrass-model arithmetic (invariants, coordinate changes, twists,
Laska-Kraus-Connell minimal models), the per-prime scaling factor of a
minimal quadratic twist, arbitrary-precision period lattices via the complex
AGM, and numerical verification that the real period of a twist matches
(utilde / sqrt(d)) times the (real or imaginary) period of the original curve.
"""

from .exact import (
    INFINITY,
    ExtendedValuation,
    PadicInfinity,
    factorize,
    is_prime,
    is_square_free,
    odd_prime_divisors,
    vp,
)
from .minimality import (
    CASE_LABELS,
    ConsistencyError,
    MinimalModelResult,
    UTildeResult,
    compute_utilde,
    minimal_model_of_twist,
    minimal_twist_discriminant_valuation,
    minimize,
    signature_gauge,
    utilde_factor_at,
)
from .periods import (
    DEFAULT_PRECISION_BITS,
    LatticeRecognitionError,
    PeriodLattice,
    PeriodReport,
    PrecisionError,
    complex_agm,
    imaginary_period,
    lattice_periods,
    period_report,
    raw_real_period,
    real_components,
    real_period,
)
from .twisting import TwistMap, twist, twist_transformation
from .verification import (
    DEFAULT_TOLERANCE,
    FILTERS,
    VerificationReport,
    iter_curve_file,
    scan,
    verify_twist_period_relation,
)
from .weierstrass import (
    IDENTITY,
    Invariants,
    PAdicSignature,
    SingularCurveError,
    Transformation,
    WeierstrassModel,
    padic_signature,
)

__version__ = "0.1.0"

__all__ = [
    "CASE_LABELS",
    "ConsistencyError",
    "DEFAULT_PRECISION_BITS",
    "DEFAULT_TOLERANCE",
    "ExtendedValuation",
    "FILTERS",
    "IDENTITY",
    "INFINITY",
    "Invariants",
    "LatticeRecognitionError",
    "MinimalModelResult",
    "PAdicSignature",
    "PadicInfinity",
    "PeriodLattice",
    "PeriodReport",
    "PrecisionError",
    "SingularCurveError",
    "Transformation",
    "TwistMap",
    "UTildeResult",
    "VerificationReport",
    "WeierstrassModel",
    "complex_agm",
    "compute_utilde",
    "factorize",
    "imaginary_period",
    "is_prime",
    "is_square_free",
    "iter_curve_file",
    "lattice_periods",
    "minimal_model_of_twist",
    "minimal_twist_discriminant_valuation",
    "minimize",
    "odd_prime_divisors",
    "padic_signature",
    "period_report",
    "raw_real_period",
    "real_components",
    "real_period",
    "scan",
    "signature_gauge",
    "twist",
    "twist_transformation",
    "utilde_factor_at",
    "verify_twist_period_relation",
    "vp",
]
