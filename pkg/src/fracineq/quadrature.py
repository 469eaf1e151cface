"""Composite Gauss-Legendre quadrature on [0, 1], including power weights.

``integrate_power_weight`` evaluates

    int_0^1 t^(alpha-1) (1-t)^(beta-1) g(t) dt

for bounded ``g`` and any ``alpha, beta > 0``.  The interval is split at
t = 1/2.  The left half is mapped by u = t^alpha and the right half by
v = (1-t)^beta, which absorbs each endpoint power into the Jacobian:

    int_0^(1/2) t^(a-1) w(t) dt = (1/a) int_0^(2^-a) w(u^(1/a)) du

Both transformed integrands are bounded, but compositions such as
u^(1/3) are not smooth at the origin, so the first panel of each half is
refined geometrically (ratio 0.15) toward the origin.  The right half
also receives 1 - t exactly as v^(1/beta), so nothing is lost to
cancellation next to t = 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, EvaluationError

__all__ = [
    "QuadratureSpec",
    "QuadResult",
    "DEFAULT_SPEC",
    "gauss_legendre",
    "integrate_smooth",
    "integrate_power_weight",
]

log = logging.getLogger(__name__)

_GRADING_RATIO = 0.15


@dataclass(frozen=True)
class QuadratureSpec:
    """Rule parameters.

    ``grading_levels`` is the number of geometric sub-panels placed next to
    each singular endpoint by :func:`integrate_power_weight`; 0 disables it.
    """

    nodes: int = 32
    panels: int = 8
    target_rel_tol: float = 1e-10
    grading_levels: int = 24

    def __post_init__(self):
        if int(self.nodes) != self.nodes or self.nodes < 2:
            raise DomainError(f"nodes must be an integer >= 2, got {self.nodes!r}")
        if int(self.panels) != self.panels or self.panels < 1:
            raise DomainError(f"panels must be an integer >= 1, got {self.panels!r}")
        if not self.target_rel_tol > 0:
            raise DomainError("target_rel_tol must be positive")
        if int(self.grading_levels) != self.grading_levels or self.grading_levels < 0:
            raise DomainError("grading_levels must be a nonnegative integer")

    def as_dict(self):
        return {
            "nodes": self.nodes,
            "panels": self.panels,
            "target_rel_tol": self.target_rel_tol,
            "grading_levels": self.grading_levels,
        }


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    evaluations: int

    def converged(self, target_rel_tol):
        return self.err_estimate <= target_rel_tol * max(1.0, abs(self.value))


def _legendre_pair(n, x):
    """Return (P_{n-1}(x), P_n(x)) by the three-term recurrence."""
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    return p0, p1


@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].

    Roots of P_n are found by Newton iteration from the Chebyshev-like
    initial guess; the returned arrays are read-only and cached.
    """
    n = int(n)
    if n < 2:
        raise DomainError(f"rule order must be >= 2, got {n}")
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p0, p1 = _legendre_pair(n, x)
        dx = p1 / (n * (x * p1 - p0) / (x * x - 1.0))
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p0, p1 = _legendre_pair(n, x)
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    # Symmetrize to remove last-bit asymmetry from the iteration.
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def _evaluate(g, t):
    vals = g(t)
    vals = np.broadcast_to(np.asarray(vals, dtype=float), t.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        raise EvaluationError("integrand is not finite", float(t[bad][0]))
    return vals


def _panel_rule(breaks, nodes):
    """Map an n-point rule onto consecutive panels given by ``breaks``."""
    x, w = gauss_legendre(nodes)
    lo = breaks[:-1, None]
    half = 0.5 * (breaks[1:, None] - lo)
    pts = lo + half * (x + 1.0)
    wts = half * w
    return pts.ravel(), wts.ravel()


def _uniform_breaks(length, panels):
    return np.linspace(0.0, length, panels + 1)


def _graded_breaks(length, panels, levels):
    """Uniform panels on [0, length] with the first split geometrically."""
    uniform = _uniform_breaks(length, panels)
    if levels == 0:
        return uniform
    first = uniform[1]
    geo = first * _GRADING_RATIO ** np.arange(levels, 0, -1)
    return np.concatenate(([0.0], geo, uniform[1:]))


def integrate_smooth(g, spec=DEFAULT_SPEC):
    """Composite Gauss-Legendre estimate of int_0^1 g(t) dt.

    ``err_estimate`` compares against the same rule on half as many panels
    (or half as many nodes when there is a single panel).
    """
    pts, wts = _panel_rule(_uniform_breaks(1.0, spec.panels), spec.nodes)
    value = float(np.dot(wts, _evaluate(g, pts)))
    if spec.panels > 1:
        cpts, cwts = _panel_rule(_uniform_breaks(1.0, spec.panels // 2), spec.nodes)
    else:
        cpts, cwts = _panel_rule(_uniform_breaks(1.0, 1), max(2, spec.nodes // 2))
    coarse = float(np.dot(cwts, _evaluate(g, cpts)))
    return QuadResult(value, abs(value - coarse), pts.size + cpts.size)


def _check_order(name, x):
    try:
        xf = float(x)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {x!r}") from None
    if not (math.isfinite(xf) and xf > 0):
        raise DomainError(f"{name} must be positive and finite, got {x!r}")
    return xf


def _power_weight_value(g, alpha, beta, panels, nodes, levels):
    # Left half: t = u^(1/alpha), u in [0, 2^-alpha].
    ulen = 0.5**alpha
    u, wu = _panel_rule(_graded_breaks(ulen, panels, levels), nodes)
    t_left = u ** (1.0 / alpha)
    # Right half: 1 - t = v^(1/beta), v in [0, 2^-beta].
    vlen = 0.5**beta
    v, wv = _panel_rule(_graded_breaks(vlen, panels, levels), nodes)
    s_right = v ** (1.0 / beta)
    t_right = 1.0 - s_right

    left = _evaluate(g, t_left)
    if beta != 1.0:
        left = left * (1.0 - t_left) ** (beta - 1.0)
    right = _evaluate(g, t_right)
    if alpha != 1.0:
        right = right * t_right ** (alpha - 1.0)
    value = float(np.dot(wu, left)) / alpha + float(np.dot(wv, right)) / beta
    return value, t_left.size + t_right.size


def integrate_power_weight(g, alpha, spec=DEFAULT_SPEC, beta=1.0):
    """int_0^1 t^(alpha-1) (1-t)^(beta-1) g(t) dt for bounded g.

    ``g`` is called with a numpy array of nodes in (0, 1) and must return
    an array of the same shape (or a broadcastable scalar).
    """
    alpha = _check_order("alpha", alpha)
    beta = _check_order("beta", beta)
    value, n_fine = _power_weight_value(
        g, alpha, beta, spec.panels, spec.nodes, spec.grading_levels
    )
    if spec.panels > 1:
        coarse, n_coarse = _power_weight_value(
            g, alpha, beta, spec.panels // 2, spec.nodes, spec.grading_levels
        )
    else:
        coarse, n_coarse = _power_weight_value(
            g, alpha, beta, 1, max(2, spec.nodes // 2), spec.grading_levels
        )
    result = QuadResult(value, abs(value - coarse), n_fine + n_coarse)
    if not result.converged(spec.target_rel_tol):
        log.debug(
            "power-weight quadrature above target: value=%r err=%r alpha=%r",
            value, result.err_estimate, alpha,
        )
    return result
