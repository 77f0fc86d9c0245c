"""
Analytic route: exponential kernels, Laplace-Carson pair and the joint functional
"""

from .gamma_terms import (
    GammaTerms,
    TransformArgs,
    expected_exponential,
    expected_exponential_tail,
    gamma
)
from .quadrature import QuadratureScheme, integrate
from .laplace_carson import (
    InversionResult,
    check_order,
    lc_forward,
    lc_inverse,
    lc_inverse_1d,
    stehfest_coefficients
)
from .renewal_measure import RenewalMeasure, exit_atoms, renewal_measure
from .functional import (
    Exponents,
    FunctionalForm,
    exit_functional,
    exit_transform,
    phi_functional,
    printed_functional,
    trace_functional
)
from .moments import moments

__all__ = [
    "GammaTerms",
    "TransformArgs",
    "expected_exponential",
    "expected_exponential_tail",
    "gamma",
    "QuadratureScheme",
    "integrate",
    "InversionResult",
    "check_order",
    "lc_forward",
    "lc_inverse",
    "lc_inverse_1d",
    "stehfest_coefficients",
    "RenewalMeasure",
    "exit_atoms",
    "renewal_measure",
    "Exponents",
    "FunctionalForm",
    "exit_functional",
    "exit_transform",
    "phi_functional",
    "printed_functional",
    "trace_functional",
    "moments"
]
