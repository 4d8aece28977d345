"""Generalized Dawson integral functions.

``D_b(x) = exp(-B(x)) * int_0^x exp(B(t)) dt`` with ``B(x) = int_0^x b``,
its MacLaurin coefficients from the derivatives of ``b`` at 0, the
unit-triangular cofactor machinery behind them, and ODE cross-checks.
"""

from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    InputLengthError,
    NumericalError,
    NumericalOverflowError,
)
from .ode import (
    HLIIODECoeffs,
    RiccatiWitness,
    dawson_coeffs,
    dawson_witness,
    eval_ode,
    family_coeffs,
    general_solution,
    integrate_cauchy,
    residual_report,
    wronskian_at_zero,
)
from .quadrature import (
    BSpec,
    FamilyParams,
    adaptive_integrate,
    big_B,
    eval_Db,
    eval_F_classical,
    eval_F_family,
)
from .series import (
    DerivativeSeq,
    EvalReport,
    TaylorPoly,
    dawson_derivatives,
    derivs_to_taylor,
    series_eval,
    taylor_to_derivs,
)
from .triangular import (
    BorderedSystem,
    UniTriangular,
    bordered_det,
    build_system,
    chain_term_counts,
    cofactor,
    cofactor_closed_form,
    cofactor_oracle,
    dawson_derivative_cramer,
    forward_solve,
)

__version__ = "0.1.0"
