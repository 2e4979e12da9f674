"""Certified evaluation of periodized sinc power sums.

    >>> import sincpow
    >>> v = sincpow.f_r(0.5, 2.0)
    >>> v.contains(1 / 3)
    True
"""

from ._core import (
    DEFAULT_MAX_TERMS,
    CertifiedValue,
    EvaluationError,
    HypothesisError,
    dominance,
    f_half_closed,
    f_r,
    f_r_partial,
    figure_csv,
    find_min,
    h,
    log_deriv_upper_bound,
    phi,
    phi_log_deriv,
    s_m,
    tail_bound,
    verify,
    y_half,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_TERMS",
    "CertifiedValue",
    "EvaluationError",
    "HypothesisError",
    "dominance",
    "f_half_closed",
    "f_r",
    "f_r_partial",
    "figure_csv",
    "find_min",
    "h",
    "log_deriv_upper_bound",
    "phi",
    "phi_log_deriv",
    "s_m",
    "tail_bound",
    "verify",
    "y_half",
]
