"""Matrix congruential generators modulo prime powers.

Exact integer streams u_{n+1} = A u_n (mod p^t), their order growth and
p-adic expansion coefficients, plus measurement tools: exponential sums,
power-sum system counts, explicit bound formulas, and exact discrepancy.
"""

from .arith import (
    IntMatrix,
    IntPolynomial,
    PrimePowerModulus,
    char_poly,
    companion_matrix,
    det_exact,
    mat_inverse_mod,
    mat_mul_mod,
    mat_pow_mod,
    valuation,
)
from .fieldalg import (
    Verdict,
    irreducible_mod_p,
    is_p_primitive,
    is_proper_pair,
    minimal_recurrence_length,
    nondegeneracy_check,
    squarefree_mod_p,
    validate_theorem_hypotheses,
)
from .generator import GeneratorConfig, GeneratorState, fractional_points, jump_ahead, scalar_sequence, step
from .padic import (
    ExpansionData,
    PeriodProfile,
    RootSet,
    UnramifiedRing,
    beta_pair,
    binomial_to_monomial,
    compute_w,
    expansion_data,
    h_coeffs,
    H_coeffs,
    lift_roots,
    order_mod,
    period_profile,
    tau_pair,
    theta_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "IntMatrix",
    "IntPolynomial",
    "PrimePowerModulus",
    "char_poly",
    "companion_matrix",
    "det_exact",
    "mat_inverse_mod",
    "mat_mul_mod",
    "mat_pow_mod",
    "valuation",
    "Verdict",
    "irreducible_mod_p",
    "is_p_primitive",
    "is_proper_pair",
    "minimal_recurrence_length",
    "nondegeneracy_check",
    "squarefree_mod_p",
    "validate_theorem_hypotheses",
    "GeneratorConfig",
    "GeneratorState",
    "fractional_points",
    "jump_ahead",
    "scalar_sequence",
    "step",
    "ExpansionData",
    "PeriodProfile",
    "RootSet",
    "UnramifiedRing",
    "beta_pair",
    "binomial_to_monomial",
    "compute_w",
    "expansion_data",
    "h_coeffs",
    "H_coeffs",
    "lift_roots",
    "order_mod",
    "period_profile",
    "tau_pair",
    "theta_matrix",
]
