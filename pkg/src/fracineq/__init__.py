"""Riemann-Liouville fractional integrals and Hadamard-type inequality checks."""

__version__ = "0.1.0"

from .errors import ConfigError, DomainError, EvaluationError, FracIneqError, PreconditionError
from .fractional_integral import FracOrder, Interval, RLBracket, bracket, midpoint_form, rl_left, rl_right
from .function_classes import FunctionSpec, HFunction, MembershipReport, SamplingPlan, parse_function, parse_h
from .inequality_suite import BoundReport, check_reductions, evaluate, falsify, sweep
from .quadrature import QuadResult, QuadratureSpec, integrate_power_weight, integrate_smooth
from .special_fn import beta_fn, gamma_fn, log_gamma

__all__ = [
    "BoundReport", "ConfigError", "DomainError", "EvaluationError", "FracIneqError",
    "FracOrder", "FunctionSpec", "HFunction", "Interval", "MembershipReport",
    "PreconditionError", "QuadResult", "QuadratureSpec", "RLBracket", "SamplingPlan",
    "beta_fn", "bracket", "check_reductions", "evaluate", "falsify", "gamma_fn",
    "integrate_power_weight", "integrate_smooth", "log_gamma", "midpoint_form",
    "parse_function", "parse_h", "rl_left", "rl_right", "sweep",
]
