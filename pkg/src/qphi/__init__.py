"""qphi: basic hypergeometric series, contiguous three-term recurrences, and
Jackson q-Bessel functions, with exact-rational and arbitrary-precision
float backends."""

from .errors import (
    ConvergenceError,
    NonTerminatingError,
    OrderMismatchError,
    PoleError,
    PrecisionMismatchError,
    QphiError,
)
from .scalars import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    Scalar,
    float_agree_tol,
    float_context,
    format_scalar,
    parse_scalar,
    rat,
    to_float,
)
from .series import LaurentPoly, TruncatedSeries
from .qpoch import (
    inv_q_factorial,
    q_pochhammer,
    q_pochhammer_inf,
    q_pochhammer_ratio_inf,
)
from .phi import (
    PhiResult,
    PhiSpec,
    ScaledPair,
    phi_eval,
    phi_eval_detailed,
    phi_formal,
    phi_terminating_scaled,
)
from .contiguous import (
    CoeffPair,
    ShiftPair,
    ShiftTriple,
    coeff_st,
    coeff_st_rational,
    coeff_st_tilde,
    coeff_st_tilde_rational,
    coeff_uv,
    coeff_uv_rational,
    p01,
    p11,
)
from .qbessel import (
    BesselParams,
    LommelCoeff,
    j2_recurrence_residual,
    j2_residual_series,
    j3_recurrence_residual,
    j3_residual_series,
    jackson_j,
    jackson_recurrence_residual,
    lommel_closed,
    p2,
    p3,
    r2,
    r3,
    st_tilde_a0,
)
from .verify import (
    FLOAT_ONLY,
    IDENTITY_IDS,
    CaseResult,
    IdentityCase,
    Report,
    SweepConfig,
    run_bench,
    run_case,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "QphiError", "PoleError", "NonTerminatingError", "ConvergenceError",
    "PrecisionMismatchError", "OrderMismatchError",
    # scalars
    "Scalar", "DEFAULT_PRECISION", "GUARD_BITS", "rat", "to_float",
    "float_context", "float_agree_tol", "parse_scalar", "format_scalar",
    # series
    "TruncatedSeries", "LaurentPoly",
    # q-Pochhammer
    "q_pochhammer", "q_pochhammer_inf", "q_pochhammer_ratio_inf",
    "inv_q_factorial",
    # phi
    "PhiSpec", "PhiResult", "ScaledPair", "phi_eval", "phi_eval_detailed",
    "phi_formal", "phi_terminating_scaled",
    # contiguous
    "ShiftTriple", "ShiftPair", "CoeffPair", "p11", "p01",
    "coeff_st", "coeff_st_rational", "coeff_st_tilde", "coeff_st_tilde_rational",
    "coeff_uv", "coeff_uv_rational",
    # q-Bessel
    "BesselParams", "LommelCoeff", "jackson_j", "r2", "r3", "p2", "p3",
    "lommel_closed", "j3_residual_series", "j2_residual_series",
    "j3_recurrence_residual", "j2_recurrence_residual",
    "jackson_recurrence_residual", "st_tilde_a0",
    # verify
    "IDENTITY_IDS", "FLOAT_ONLY", "IdentityCase", "CaseResult", "SweepConfig",
    "Report", "run_case", "run_sweep", "run_bench",
]
