"""Gamma, log-gamma and beta functions for positive real arguments.

The log-gamma kernel is the Lanczos-type series with ``g = 607/128`` and
fourteen coefficients due to P. Godfrey, as tabulated in Numerical Recipes
(3rd ed., ``gammln``).  Its relative error on the log scale is below
``2e-16``, which gives ``Gamma`` itself better than ``1e-13`` relative on
``(0, 171)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["SpecialFnAccuracy", "DEFAULT_ACCURACY", "gamma_fn", "log_gamma", "beta_fn", "log_beta"]


@dataclass(frozen=True)
class SpecialFnAccuracy:
    abs_tol: float = 1e-14
    rel_tol: float = 1e-12

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("accuracy tolerances must be strictly positive")


DEFAULT_ACCURACY = SpecialFnAccuracy()

# Godfrey's coefficients for g = 607/128 = 4.7421875.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEF = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005

# Largest x with Gamma(x) representable as a double.
_GAMMA_OVERFLOW = 171.6243769563027


def _check_positive(x, name="x"):
    try:
        xf = float(x)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {x!r}") from None
    if not math.isfinite(xf) or xf <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {x!r}")
    return xf


def _lanczos_log_gamma(x):
    tmp = x + _LANCZOS_G + 0.5
    tmp = (x + 0.5) * math.log(tmp) - tmp
    ser = _LANCZOS_C0
    y = x
    for c in _LANCZOS_COEF:
        y += 1.0
        ser += c / y
    return tmp + math.log(_SQRT_2PI * ser / x)


def log_gamma(x):
    """Natural log of Gamma(x) for x > 0."""
    x = _check_positive(x)
    # Exact zeros keep lgamma(1) and lgamma(2) free of series round-off.
    if x == 1.0 or x == 2.0:
        return 0.0
    return _lanczos_log_gamma(x)


def gamma_fn(x):
    """Gamma(x) for x > 0.

    Small positive integers are returned as exact factorials.  Arguments
    beyond the double range raise ``OverflowError``; use :func:`log_gamma`.
    """
    x = _check_positive(x)
    if x.is_integer() and x <= 23:
        return float(math.factorial(int(x) - 1))
    if x >= _GAMMA_OVERFLOW:
        raise OverflowError(f"Gamma({x}) overflows a double; use log_gamma")
    if x < 1.0:
        # Recurrence keeps the log-scale error tiny where Gamma blows up near 0.
        return math.exp(_lanczos_log_gamma(x + 1.0)) / x
    return math.exp(_lanczos_log_gamma(x))


def log_beta(p, q):
    p = _check_positive(p, "p")
    q = _check_positive(q, "q")
    return log_gamma(p) + log_gamma(q) - log_gamma(p + q)


def beta_fn(p, q):
    """Beta(p, q) = Gamma(p) Gamma(q) / Gamma(p + q), evaluated in log space.

    The arguments are ordered before evaluation so the result is exactly
    symmetric.
    """
    p = _check_positive(p, "p")
    q = _check_positive(q, "q")
    if p > q:
        p, q = q, p
    if p == 1.0:
        return 1.0 / q
    return math.exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q))
