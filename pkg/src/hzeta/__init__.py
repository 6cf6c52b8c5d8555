"""Configurable-precision Hurwitz zeta evaluation.

Evaluates the entire function phi(s, a) = (s-1) * zeta(s, a) through
integral and series representations, continues it left of Re(s) = 0,
and computes Laurent/Taylor coefficients about any point, with
independent classical oracles for validation.
"""

from .precision import (
    AccuracyError,
    ComplexPoint,
    DomainError,
    EvalConfig,
    MpReal,
    PoleError,
    ShiftParameter,
    bernoulli_number,
    bernoulli_poly,
    complex_pow,
    digamma,
    gamma,
)
from .kernels import (
    KernelJet,
    eta,
    identity_lhs_rhs,
    integrand_derivative,
    kernel_jet,
    psi,
)
from .sums import (
    SnEntry,
    SnTable,
    SnValue,
    TruncationBound,
    dominating_term_bound,
    s_n_asymptotic,
    s_n_direct,
    s_n_shifted,
    sn_shifted_prefix,
    sn_table,
    stirling_generalized,
    stirling_generalized_exact,
    truncation_bound,
)
from .quadrature import QuadratureRule, quad_halfline
from .integral_eval import (
    EvalResult,
    continuation_order,
    phi_continued,
    phi_integral,
    phi_shifted_integral,
)
from .series_eval import (
    phi_series,
    phi_shifted_series,
    series_term,
    weight_main,
    weight_shifted_printed,
)
from .oracles import (
    classical_integral_oracle,
    dirichlet_oracle,
    negative_integer_oracle,
)
from .laurent import (
    LaurentExpansion,
    a_coeff,
    c_coeff,
    from_pole_normalized,
    laurent_eval,
    laurent_expand,
    to_pole_normalized,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ComplexPoint",
    "DomainError",
    "EvalConfig",
    "EvalResult",
    "KernelJet",
    "LaurentExpansion",
    "MpReal",
    "PoleError",
    "QuadratureRule",
    "ShiftParameter",
    "SnEntry",
    "SnTable",
    "SnValue",
    "TruncationBound",
    "a_coeff",
    "bernoulli_number",
    "bernoulli_poly",
    "c_coeff",
    "classical_integral_oracle",
    "complex_pow",
    "continuation_order",
    "digamma",
    "dirichlet_oracle",
    "dominating_term_bound",
    "eta",
    "from_pole_normalized",
    "gamma",
    "identity_lhs_rhs",
    "integrand_derivative",
    "kernel_jet",
    "laurent_eval",
    "laurent_expand",
    "negative_integer_oracle",
    "phi_continued",
    "phi_integral",
    "phi_series",
    "phi_shifted_integral",
    "phi_shifted_series",
    "psi",
    "quad_halfline",
    "s_n_asymptotic",
    "s_n_direct",
    "s_n_shifted",
    "series_term",
    "sn_shifted_prefix",
    "sn_table",
    "stirling_generalized",
    "stirling_generalized_exact",
    "to_pole_normalized",
    "truncation_bound",
    "weight_main",
    "weight_shifted_printed",
]
