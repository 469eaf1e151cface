"""Left and right Riemann-Liouville integrals and the two-sided bracket.

Both operators are evaluated in the unit coordinate s in [0, 1]:

    J_{a+}^alpha f(b) = (b-a)^alpha / Gamma(alpha) * int_0^1 s^(alpha-1) f(b - (b-a)s) ds
    J_{b-}^alpha f(a) = (b-a)^alpha / Gamma(alpha) * int_0^1 s^(alpha-1) f(a + (b-a)s) ds

so the kernel singularity is handled once, by the quadrature module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .quadrature import DEFAULT_SPEC, integrate_power_weight
from .special_fn import log_gamma

__all__ = [
    "Interval",
    "FracOrder",
    "RLBracket",
    "rl_left",
    "rl_right",
    "bracket",
    "midpoint_form",
    "rl_scale",
]


@dataclass(frozen=True, order=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError(f"interval endpoints must be finite, got [{self.a}, {self.b}]")
        if not a < b:
            raise DomainError(f"interval needs a < b, got [{self.a}, {self.b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self):
        return self.b - self.a

    @property
    def midpoint(self):
        return 0.5 * (self.a + self.b)

    def __str__(self):
        return f"[{self.a!r}, {self.b!r}]"


@dataclass(frozen=True)
class FracOrder:
    alpha: float

    def __post_init__(self):
        try:
            alpha = float(self.alpha)
        except (TypeError, ValueError):
            raise DomainError(f"alpha must be a real number, got {self.alpha!r}") from None
        if not (math.isfinite(alpha) and alpha > 0):
            raise DomainError(f"alpha must be positive and finite, got {self.alpha!r}")
        object.__setattr__(self, "alpha", alpha)

    def __float__(self):
        return self.alpha


def as_interval(iv):
    if isinstance(iv, Interval):
        return iv
    a, b = iv
    return Interval(a, b)


def as_alpha(alpha):
    if isinstance(alpha, FracOrder):
        return alpha.alpha
    return FracOrder(alpha).alpha


@dataclass(frozen=True)
class RLBracket:
    """J_{a+}^alpha f(b), J_{b-}^alpha f(a), their sum and its Hadamard mean."""

    left: float
    right: float
    bracket: float
    normalized_mean: float


def rl_scale(iv, alpha):
    """(b-a)^alpha / Gamma(alpha), in log space so large alpha is safe."""
    iv = as_interval(iv)
    alpha = as_alpha(alpha)
    return math.exp(alpha * math.log(iv.length) - log_gamma(alpha))


def rl_left(f, iv, alpha, spec=DEFAULT_SPEC):
    """J_{a+}^alpha f evaluated at x = b."""
    iv = as_interval(iv)
    alpha = as_alpha(alpha)
    _a, b, length = iv.a, iv.b, iv.length
    res = integrate_power_weight(lambda s: f(b - length * s), alpha, spec)
    return rl_scale(iv, alpha) * res.value


def rl_right(f, iv, alpha, spec=DEFAULT_SPEC):
    """J_{b-}^alpha f evaluated at x = a."""
    iv = as_interval(iv)
    alpha = as_alpha(alpha)
    a, length = iv.a, iv.length
    res = integrate_power_weight(lambda s: f(a + length * s), alpha, spec)
    return rl_scale(iv, alpha) * res.value


def bracket(f, iv, alpha, spec=DEFAULT_SPEC):
    iv = as_interval(iv)
    alpha = as_alpha(alpha)
    left = rl_left(f, iv, alpha, spec)
    right = rl_right(f, iv, alpha, spec)
    total = left + right
    # Gamma(alpha+1) / (2 (b-a)^alpha)
    norm = 0.5 * math.exp(log_gamma(alpha + 1.0) - alpha * math.log(iv.length))
    return RLBracket(left, right, total, norm * total)


def midpoint_form(f, iv, alpha, spec=DEFAULT_SPEC):
    """int_0^1 t^(alpha-1) [f(ta + (1-t)b) + f((1-t)a + tb)] dt.

    Equals Gamma(alpha) / (b-a)^alpha times the bracket; computed as one
    integral of the symmetrized integrand, independently of ``bracket``.
    """
    iv = as_interval(iv)
    alpha = as_alpha(alpha)
    a, b = iv.a, iv.b
    res = integrate_power_weight(
        lambda t: f(t * a + (1.0 - t) * b) + f((1.0 - t) * a + t * b), alpha, spec
    )
    return res.value
