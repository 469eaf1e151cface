"""Hadamard-type inequality chains: fractional theorems and classical baselines.

Every evaluator returns a :class:`BoundReport` whose ``sides`` form a chain
that should be nondecreasing.  Theorem ids:

=================  ==================================================
HH_classical       f(m) <= mean <= (f(a)+f(b))/2
Q_classical        f(m) <= 4 mean
P_classical        f(m) <= 2 mean <= 2(f(a)+f(b))
R_classical        mean <= (r/(r+1))^(1/r) (f(a)^r + f(b)^r)^(1/r)
H_classical        f(m)/(2h(1/2)) <= mean <= (f(a)+f(b)) int_0^1 h
HH_fractional      f(m) <= G(a+1)/(2L^a) B <= (f(a)+f(b))/2
Q_fractional       f(m) <= 2 G(a+1)/L^a B
P_fractional       f(m) <= G(a+1)/L^a B <= 2(f(a)+f(b))
R_fractional       G(a)/L^a B <= two Minkowski power-mean terms
H_fractional       f(m)/(a h(1/2)) <= G(a)/L^a B <= (f(a)+f(b)) int t^(a-1)[h(t)+h(1-t)]
=================  ==================================================

with m the midpoint, L = b - a, "mean" the integral mean of f, and
B = J_{a+}^alpha f(b) + J_{b-}^alpha f(a).

``R_fractional`` uses the Gamma(alpha) scaling by default, which is the
quantity the Minkowski argument actually bounds.  The Gamma(alpha+1)
scaling (``r_form="printed"``) is larger by a factor alpha and is violated
for alpha > 1; it is kept for falsification runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError, PreconditionError
from .fractional_integral import as_alpha, as_interval, bracket
from .function_classes import DEFAULT_PLAN, HFunction, is_member
from .quadrature import DEFAULT_SPEC, integrate_power_weight
from .special_fn import log_beta, log_gamma

__all__ = [
    "THEOREMS",
    "FRACTIONAL",
    "CLASSICAL",
    "CHAIN_TOL",
    "BoundReport",
    "ReductionCase",
    "ReductionReport",
    "FalsifyConfig",
    "FalsifyOutcome",
    "eval_hh_fractional",
    "eval_q_fractional",
    "eval_p_fractional",
    "eval_r_fractional",
    "eval_h_fractional",
    "eval_classical_baselines",
    "evaluate",
    "check_reductions",
    "falsify",
    "sweep",
    "in_class",
]

CHAIN_TOL = 1e-9
REDUCTION_TOL = 1e-10

FRACTIONAL = ("HH_fractional", "Q_fractional", "P_fractional", "R_fractional", "H_fractional")
CLASSICAL = ("HH_classical", "Q_classical", "P_classical", "R_classical", "H_classical")
THEOREMS = CLASSICAL + FRACTIONAL

# Class each theorem presumes of f.
_THEOREM_CLASS = {
    "HH": "convex",
    "Q": "Q",
    "P": "P",
    "R": "r-convex",
    "H": "h-convex",
}
# Statements that carry "0 <= a".
_NEEDS_NONNEG_A = {"HH_fractional", "Q_fractional"}


@dataclass(frozen=True)
class BoundReport:
    theorem_id: str
    sides: tuple
    margins: tuple
    satisfied: bool
    tolerance: float
    inputs: dict = field(default_factory=dict)
    preconditions: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def values(self):
        return tuple(v for _, v in self.sides)

    @property
    def min_margin(self):
        return min(self.margins)

    @property
    def preconditions_met(self):
        return all(self.preconditions.values())

    def to_record(self):
        """Flat record shared by the JSON and CSV report writers."""
        rec = {
            "theorem_id": self.theorem_id,
            "function": self.inputs.get("function"),
            "a": self.inputs.get("a"),
            "b": self.inputs.get("b"),
            "alpha": self.inputs.get("alpha"),
            "r": self.inputs.get("r"),
            "h": self.inputs.get("h"),
        }
        for i in range(3):
            name, value = self.sides[i] if i < len(self.sides) else (None, None)
            rec[f"side_{i + 1}_name"] = name
            rec[f"side_{i + 1}"] = value
        for i in range(2):
            rec[f"margin_{i + 1}"] = self.margins[i] if i < len(self.margins) else None
        rec["satisfied"] = self.satisfied
        rec["tolerance"] = self.tolerance
        rec["preconditions_met"] = self.preconditions_met
        rec["notes"] = "; ".join(self.notes)
        return rec


def _make_report(theorem_id, sides, inputs, preconditions, notes=(), tol=CHAIN_TOL):
    sides = tuple((name, float(v)) for name, v in sides)
    values = [v for _, v in sides]
    if not all(math.isfinite(v) for v in values):
        raise DomainError(f"{theorem_id}: non-finite side in {sides}")
    margins = tuple(values[i + 1] - values[i] for i in range(len(values) - 1))
    tolerance = tol * max(1.0, abs(values[-1]))
    satisfied = all(m >= -tolerance for m in margins)
    return BoundReport(theorem_id, sides, margins, satisfied, tolerance,
                       dict(inputs), dict(preconditions), tuple(notes))


def _fval(f, x):
    return float(np.asarray(f(np.asarray([x], dtype=float)), dtype=float)[0])


def _fid(f):
    return str(getattr(f, "id", getattr(f, "__name__", repr(f))))


def _preconditions(theorem_id, f, iv, plan, check, r=None, h=None, strict=False,
                   allow_negative_a=True):
    pre = {}
    if theorem_id in _NEEDS_NONNEG_A:
        pre["a_nonnegative"] = iv.a >= 0
        if iv.a < 0 and not allow_negative_a:
            raise DomainError(f"{theorem_id} is stated for 0 <= a; got a = {iv.a!r}")
    if check:
        tag = _THEOREM_CLASS[theorem_id.split("_")[0]]
        key = tag if tag not in ("r-convex", "h-convex") else (
            f"r-convex(r={r!r})" if tag == "r-convex" else f"h-convex(h={h.id})")
        pre[key] = is_member(tag, f, iv, plan, r=r, h=h)
        if theorem_id.startswith("HH"):
            pre["nonnegative"] = bool(np.min(f(np.linspace(iv.a, iv.b, 257))) >= 0)
    if strict and not all(pre.values()):
        failed = sorted(k for k, v in pre.items() if not v)
        raise PreconditionError(f"{theorem_id}: preconditions not met: {', '.join(failed)}")
    return pre


def _common(f, iv, alpha):
    iv = as_interval(iv)
    alpha = as_alpha(alpha)
    fm = _fval(f, iv.midpoint)
    fa = _fval(f, iv.a)
    fb = _fval(f, iv.b)
    return iv, alpha, fm, fa, fb


def _inputs(f, iv, alpha, r=None, h=None):
    return {"function": _fid(f), "a": iv.a, "b": iv.b, "alpha": alpha,
            "r": r, "h": None if h is None else h.id}


def _gamma_over_len(log_g, iv, alpha):
    return math.exp(log_g - alpha * math.log(iv.length))


def eval_hh_fractional(f, iv, alpha, spec=DEFAULT_SPEC, *, strict=False,
                       allow_negative_a=False, check=True, plan=DEFAULT_PLAN, tol=CHAIN_TOL):
    iv, alpha, fm, fa, fb = _common(f, iv, alpha)
    pre = _preconditions("HH_fractional", f, iv, plan, check, strict=strict,
                         allow_negative_a=allow_negative_a)
    br = bracket(f, iv, alpha, spec)
    sides = [("f_mid", fm), ("hadamard_mean", br.normalized_mean), ("endpoint_mean", 0.5 * (fa + fb))]
    return _make_report("HH_fractional", sides, _inputs(f, iv, alpha), pre, tol=tol)


def eval_q_fractional(f, iv, alpha, spec=DEFAULT_SPEC, *, strict=False,
                      allow_negative_a=False, check=True, plan=DEFAULT_PLAN, tol=CHAIN_TOL):
    iv, alpha, fm, fa, fb = _common(f, iv, alpha)
    pre = _preconditions("Q_fractional", f, iv, plan, check, strict=strict,
                         allow_negative_a=allow_negative_a)
    br = bracket(f, iv, alpha, spec)
    scale = 2.0 * _gamma_over_len(log_gamma(alpha + 1.0), iv, alpha)
    sides = [("f_mid", fm), ("q_bound", scale * br.bracket)]
    return _make_report("Q_fractional", sides, _inputs(f, iv, alpha), pre, tol=tol)


def eval_p_fractional(f, iv, alpha, spec=DEFAULT_SPEC, *, strict=False,
                      allow_negative_a=False, check=True, plan=DEFAULT_PLAN, tol=CHAIN_TOL):
    iv, alpha, fm, fa, fb = _common(f, iv, alpha)
    pre = _preconditions("P_fractional", f, iv, plan, check, strict=strict,
                         allow_negative_a=allow_negative_a)
    br = bracket(f, iv, alpha, spec)
    scale = _gamma_over_len(log_gamma(alpha + 1.0), iv, alpha)
    sides = [("f_mid", fm), ("p_mean", scale * br.bracket), ("p_bound", 2.0 * (fa + fb))]
    return _make_report("P_fractional", sides, _inputs(f, iv, alpha), pre, tol=tol)


def r_bound(fa, fb, alpha, r):
    """Sum of the two Minkowski terms bounding the r-convex fractional mean."""
    if not 0.0 < r <= 1.0:
        raise DomainError(f"r must lie in (0, 1], got {r!r}")
    if fa < 0 or fb < 0:
        raise DomainError("r-convex bound needs nonnegative endpoint values")
    c_pow = (1.0 / (alpha + 1.0 / r)) ** r
    c_beta = math.exp(r * log_beta(alpha, (r + 1.0) / r))
    far, fbr = fa**r, fb**r
    inv = 1.0 / r
    return (c_pow * far + c_beta * fbr) ** inv + (c_beta * far + c_pow * fbr) ** inv


def eval_r_fractional(f, iv, alpha, r, spec=DEFAULT_SPEC, *, strict=False,
                      allow_negative_a=False, check=True, plan=DEFAULT_PLAN, tol=CHAIN_TOL,
                      r_form="proved"):
    """r-convex chain.  ``r_form`` selects the Gamma(alpha) ("proved") or
    Gamma(alpha+1) ("printed") scaling of the left side."""
    iv, alpha, fm, fa, fb = _common(f, iv, alpha)
    r = float(r)
    if r_form not in ("proved", "printed"):
        raise ConfigError(f"r_form must be 'proved' or 'printed', got {r_form!r}", "r_form")
    pre = _preconditions("R_fractional", f, iv, plan, check, r=r, strict=strict,
                         allow_negative_a=allow_negative_a)
    br = bracket(f, iv, alpha, spec)
    log_g = log_gamma(alpha) if r_form == "proved" else log_gamma(alpha + 1.0)
    lhs = _gamma_over_len(log_g, iv, alpha) * br.bracket
    sides = [("r_mean", lhs), ("r_bound", r_bound(fa, fb, alpha, r))]
    notes = () if r_form == "proved" else ("left side scaled by Gamma(alpha+1)",)
    return _make_report("R_fractional", sides, _inputs(f, iv, alpha, r=r), pre, notes, tol=tol)


def h_moment(h, alpha, spec=DEFAULT_SPEC):
    """int_0^1 t^(alpha-1) [h(t) + h(1-t)] dt; +inf for reciprocal h."""
    if not h.moment_finite:
        return math.inf
    return integrate_power_weight(lambda t: h(t) + h(1.0 - t), alpha, spec).value


def eval_h_fractional(f, h, iv, alpha, spec=DEFAULT_SPEC, *, strict=False,
                      allow_negative_a=False, check=True, plan=DEFAULT_PLAN, tol=CHAIN_TOL):
    """h-convex chain.  When the h-moment diverges the upper side is dropped."""
    if not isinstance(h, HFunction):
        raise ConfigError("h must be an HFunction", "h")
    iv, alpha, fm, fa, fb = _common(f, iv, alpha)
    h_half = h(0.5)
    if not h_half > 0:
        raise DomainError(f"h(1/2) must be positive, got {h_half!r}")
    pre = _preconditions("H_fractional", f, iv, plan, check, h=h, strict=strict,
                         allow_negative_a=allow_negative_a)
    br = bracket(f, iv, alpha, spec)
    sides = [("h_lower", fm / (alpha * h_half)),
             ("h_mean", _gamma_over_len(log_gamma(alpha), iv, alpha) * br.bracket)]
    notes = []
    moment = h_moment(h, alpha, spec)
    if math.isfinite(moment):
        sides.append(("h_bound", (fa + fb) * moment))
    else:
        notes.append("upper side infinite: h-moment diverges")
    return _make_report("H_fractional", sides, _inputs(f, iv, alpha, h=h), pre, notes, tol=tol)


def integral_mean(f, iv, spec=DEFAULT_SPEC):
    """(1/(b-a)) int_a^b f, via the alpha = 1 quadrature path."""
    iv = as_interval(iv)
    a, length = iv.a, iv.length
    return integrate_power_weight(lambda t: f(a + length * t), 1.0, spec).value


def eval_classical_baselines(f, iv, variant, spec=DEFAULT_SPEC, *, r=None, h=None,
                             check=True, plan=DEFAULT_PLAN, tol=CHAIN_TOL):
    """Classical (alpha = 1) chains; ``variant`` is one of CLASSICAL."""
    if variant not in CLASSICAL:
        raise ConfigError(f"unknown classical variant {variant!r}", "theorem")
    if variant == "R_classical" and (r is None or not 0.0 < r <= 1.0):
        raise DomainError(f"R_classical needs r in (0, 1], got {r!r}")
    iv, _, fm, fa, fb = _common(f, iv, 1.0)
    pre = {}
    if check:
        tag = _THEOREM_CLASS[variant.split("_")[0]]
        pre[tag] = is_member(tag, f, iv, plan, r=r, h=h)
    mean = integral_mean(f, iv, spec)
    notes = []
    if variant == "HH_classical":
        sides = [("f_mid", fm), ("mean", mean), ("endpoint_mean", 0.5 * (fa + fb))]
    elif variant == "Q_classical":
        sides = [("f_mid", fm), ("q_bound", 4.0 * mean)]
    elif variant == "P_classical":
        sides = [("f_mid", fm), ("p_mean", 2.0 * mean), ("p_bound", 2.0 * (fa + fb))]
    elif variant == "R_classical":
        rhs = (r / (r + 1.0)) ** (1.0 / r) * (fa**r + fb**r) ** (1.0 / r)
        sides = [("mean", mean), ("r_bound", rhs)]
    else:
        if not isinstance(h, HFunction):
            raise ConfigError("H_classical needs an HFunction", "h")
        sides = [("h_lower", fm / (2.0 * h(0.5))), ("mean", mean)]
        if h.moment_finite:
            h_int = integrate_power_weight(h, 1.0, spec).value
            sides.append(("h_bound", (fa + fb) * h_int))
        else:
            notes.append("upper side infinite: int_0^1 h diverges")
    inputs = _inputs(f, iv, 1.0, r=r, h=h)
    return _make_report(variant, sides, inputs, pre, notes, tol=tol)


def evaluate(theorem_id, f, iv, alpha=1.0, spec=DEFAULT_SPEC, *, r=None, h=None, **kw):
    """Dispatch to the evaluator for ``theorem_id``."""
    if theorem_id in CLASSICAL:
        kw.pop("strict", None)
        kw.pop("allow_negative_a", None)
        kw.pop("r_form", None)
        return eval_classical_baselines(f, iv, theorem_id, spec, r=r, h=h, **kw)
    if theorem_id == "HH_fractional":
        return eval_hh_fractional(f, iv, alpha, spec, **kw)
    if theorem_id == "Q_fractional":
        return eval_q_fractional(f, iv, alpha, spec, **kw)
    if theorem_id == "P_fractional":
        return eval_p_fractional(f, iv, alpha, spec, **kw)
    if theorem_id == "R_fractional":
        if r is None:
            raise ConfigError("R_fractional needs r", "r")
        return eval_r_fractional(f, iv, alpha, r, spec, **kw)
    if theorem_id == "H_fractional":
        if h is None:
            raise ConfigError("H_fractional needs h", "h")
        return eval_h_fractional(f, h, iv, alpha, spec, **kw)
    raise ConfigError(f"unknown theorem {theorem_id!r}; known: {', '.join(THEOREMS)}", "theorem")


def in_class(theorem_id, f, iv, plan=DEFAULT_PLAN, r=None, h=None):
    """Sampled check of every hypothesis of ``theorem_id`` on ``iv``."""
    iv = as_interval(iv)
    if not getattr(f, "admits", lambda _: True)(iv):
        return False
    if theorem_id in _NEEDS_NONNEG_A and iv.a < 0:
        return False
    tag = _THEOREM_CLASS[theorem_id.split("_")[0]]
    if not is_member(tag, f, iv, plan, r=r, h=h):
        return False
    if tag == "convex":
        return bool(np.min(f(np.linspace(iv.a, iv.b, 257))) >= 0)
    return True


# ---------------------------------------------------------------------------
# reductions


@dataclass(frozen=True)
class ReductionCase:
    """One fractional chain set beside its classical counterpart.

    ``factor`` multiplies every fractional side before comparison.  For
    ``kind == "identity"`` the sides must agree; for ``kind == "comparison"``
    only the right-hand sides are reported together with their order.
    """

    remark: str
    kind: str
    fractional: BoundReport
    classical: BoundReport
    factor: float
    max_abs_diff: float
    consistent: bool

    def to_record(self):
        f_vals = [self.factor * v for v in self.fractional.values]
        c_vals = list(self.classical.values)
        rec = {
            "remark": self.remark,
            "kind": self.kind,
            "fractional_id": self.fractional.theorem_id,
            "classical_id": self.classical.theorem_id,
            "function": self.fractional.inputs.get("function"),
            "a": self.fractional.inputs.get("a"),
            "b": self.fractional.inputs.get("b"),
            "alpha": self.fractional.inputs.get("alpha"),
            "r": self.fractional.inputs.get("r"),
            "h": self.fractional.inputs.get("h"),
            "factor": self.factor,
        }
        for i in range(3):
            rec[f"fractional_side_{i + 1}"] = f_vals[i] if i < len(f_vals) else None
            rec[f"classical_side_{i + 1}"] = c_vals[i] if i < len(c_vals) else None
        rec["max_abs_diff"] = self.max_abs_diff
        rec["consistent"] = self.consistent
        return rec


@dataclass(frozen=True)
class ReductionReport:
    cases: tuple

    @property
    def all_consistent(self):
        return all(c.consistent for c in self.cases)


def _identity_case(remark, frac, classical, factor, tol):
    fv = [factor * v for v in frac.values]
    cv = list(classical.values)
    if len(fv) != len(cv):
        raise AssertionError(f"{remark}: side counts differ ({len(fv)} vs {len(cv)})")
    diff = max(abs(x - y) for x, y in zip(fv, cv))
    scale = max(1.0, max(abs(v) for v in cv))
    return ReductionCase(remark, "identity", frac, classical, factor, diff, diff <= tol * scale)


def check_reductions(f, iv, spec=DEFAULT_SPEC, *, rs=(0.25, 0.5, 0.75, 1.0), hs=None,
                     tol=REDUCTION_TOL):
    """Evaluate each fractional chain at alpha = 1 against its classical form.

    Normalizing factors (applied to the fractional sides):

    * Q and P fractional vs their classical chains: 1.
    * HH fractional vs the Hadamard chain: 1.
    * H fractional vs H classical: 1/2 (every side of the fractional chain
      is twice the classical one).
    * H fractional with h = identity vs the Hadamard chain: 1/2; with
      h = constant vs the P classical chain: 1.
    * R fractional vs R classical: 1/2, reported as a comparison of the
      right-hand sides, since the coefficients r/(r+1) and (r/(r+1))^(1/r)
      differ for r < 1.
    """
    iv = as_interval(iv)
    if hs is None:
        hs = (HFunction("identity"), HFunction("constant"), HFunction("power", 0.5),
              HFunction("reciprocal"))
    kw = {"check": False}
    cases = []

    cases.append(_identity_case(
        "HH alpha=1", eval_hh_fractional(f, iv, 1.0, spec, **kw),
        eval_classical_baselines(f, iv, "HH_classical", spec, **kw), 1.0, tol))
    cases.append(_identity_case(
        "Q alpha=1", eval_q_fractional(f, iv, 1.0, spec, **kw),
        eval_classical_baselines(f, iv, "Q_classical", spec, **kw), 1.0, tol))
    cases.append(_identity_case(
        "P alpha=1", eval_p_fractional(f, iv, 1.0, spec, **kw),
        eval_classical_baselines(f, iv, "P_classical", spec, **kw), 1.0, tol))

    fa, fb = _fval(f, iv.a), _fval(f, iv.b)
    if fa >= 0 and fb >= 0:
        for r in rs:
            frac = eval_r_fractional(f, iv, 1.0, r, spec, **kw)
            classical = eval_classical_baselines(f, iv, "R_classical", spec, r=r, **kw)
            lhs_diff = abs(0.5 * frac.values[0] - classical.values[0])
            rhs_frac, rhs_cls = 0.5 * frac.values[1], classical.values[1]
            tighter = rhs_frac >= rhs_cls - tol * max(1.0, abs(rhs_cls))
            cases.append(ReductionCase(
                "R alpha=1", "comparison", frac, classical, 0.5, lhs_diff,
                tighter and lhs_diff <= tol * max(1.0, abs(classical.values[0]))))

    for h in hs:
        cases.append(_identity_case(
            "H alpha=1", eval_h_fractional(f, h, iv, 1.0, spec, **kw),
            eval_classical_baselines(f, iv, "H_classical", spec, h=h, **kw), 0.5, tol))
    h_id = HFunction("identity")
    cases.append(_identity_case(
        "H h=t vs HH classical", eval_h_fractional(f, h_id, iv, 1.0, spec, **kw),
        eval_classical_baselines(f, iv, "HH_classical", spec, **kw), 0.5, tol))
    cases.append(_identity_case(
        "H h=1 vs P classical", eval_h_fractional(f, HFunction("constant"), iv, 1.0, spec, **kw),
        eval_classical_baselines(f, iv, "P_classical", spec, **kw), 1.0, tol))
    return ReductionReport(tuple(cases))


def h_identity_vs_hadamard(f, iv, alpha, spec=DEFAULT_SPEC, tol=REDUCTION_TOL):
    """H fractional with h(t) = t against the fractional Hadamard chain.

    With h(t) = t every side of the h-chain is 2/alpha times the matching
    side of the fractional Hadamard chain, so the factor is alpha/2.
    """
    alpha = as_alpha(alpha)
    frac = eval_h_fractional(f, HFunction("identity"), iv, alpha, spec, check=False)
    hh = eval_hh_fractional(f, iv, alpha, spec, check=False)
    return _identity_case("H h=t vs HH fractional", frac, hh, 0.5 * alpha, tol)


# ---------------------------------------------------------------------------
# sweeps and falsification

SWEEP_ALPHAS = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0)
SWEEP_RS = (0.25, 0.5, 1.0)
SWEEP_INTERVALS = ((0.0, 1.0), (1.0, 2.0), (0.5, 3.0))


def _default_hs():
    return (HFunction("identity"), HFunction("constant"), HFunction("power", 0.5),
            HFunction("reciprocal"))


def sweep(theorem_id, corpus, intervals=SWEEP_INTERVALS, alphas=SWEEP_ALPHAS, rs=SWEEP_RS,
          hs=None, spec=DEFAULT_SPEC, plan=DEFAULT_PLAN, tol=CHAIN_TOL, in_class_only=True,
          r_form="proved"):
    """Evaluate ``theorem_id`` over corpus x intervals x alphas (x r or h).

    With ``in_class_only`` the (f, interval) pairs failing the theorem's
    hypotheses are skipped.  Reports come back ordered by input key.
    """
    if hs is None:
        hs = _default_hs()
    reports = []
    for f in corpus:
        for raw_iv in intervals:
            iv = as_interval(raw_iv)
            if not getattr(f, "admits", lambda _: True)(iv):
                continue
            extras = [{}]
            if theorem_id.startswith("R_"):
                extras = [{"r": r} for r in rs]
            elif theorem_id.startswith("H_"):
                extras = [{"h": h} for h in hs]
            for extra in extras:
                if in_class_only and not in_class(theorem_id, f, iv, plan, **extra):
                    continue
                for alpha in (alphas if theorem_id in FRACTIONAL else (1.0,)):
                    kw = {"plan": plan, "tol": tol}
                    if theorem_id == "R_fractional":
                        kw["r_form"] = r_form
                    reports.append(evaluate(theorem_id, f, iv, alpha, spec, **extra, **kw))
    reports.sort(key=_report_key)
    return reports


def _report_key(rep):
    inp = rep.inputs
    return (rep.theorem_id, inp["function"], inp["a"], inp["b"], inp["alpha"],
            -1.0 if inp["r"] is None else inp["r"], inp["h"] or "")


@dataclass(frozen=True)
class FalsifyConfig:
    """Search settings.

    ``generator`` is ``convex-quadratic``, ``concave``, ``negative``,
    ``exp``, or a function spec string (a fixed function).  When
    ``interval`` or ``alphas`` are given they replace the random draws.
    """

    theorem: str
    generator: str
    cases: int = 50
    seed: int = 0
    interval: tuple | None = None
    alphas: tuple | None = None
    rs: tuple = SWEEP_RS
    h: HFunction | None = None
    tol: float = CHAIN_TOL
    r_form: str = "proved"


@dataclass(frozen=True)
class FalsifyOutcome:
    """Violating reports plus counters.

    ``findings`` are violations by in-class inputs with margin below
    -10 * tolerance; ``expected`` are violations by out-of-class inputs.
    """

    reports: tuple
    cases_evaluated: int
    in_class_cases: int
    findings: int
    expected: int

    @property
    def ok(self):
        """In-class searches must find nothing; out-of-class ones must find something."""
        out_of_class = self.cases_evaluated - self.in_class_cases
        if out_of_class == 0:
            return self.findings == 0
        return self.expected >= 1 and self.findings == 0


_GENERATORS = ("convex-quadratic", "concave", "negative", "exp")


def _draw_function(gen, rng, iv):
    from .function_classes import FunctionSpec, parse_function

    if gen == "convex-quadratic":
        return FunctionSpec("monomial", {"k": 2.0, "scale": rng.uniform(0.1, 5.0),
                                         "shift": rng.uniform(-1.0, 3.0),
                                         "offset": rng.uniform(0.0, 2.0)}, iv)
    if gen == "concave":
        return FunctionSpec("sqrt", {"scale": rng.uniform(0.5, 3.0),
                                     "shift": iv.a - rng.uniform(0.0, 1.0)}, iv)
    if gen == "negative":
        return FunctionSpec("affine", {"m": rng.uniform(-2.0, 2.0),
                                       "c": rng.uniform(-6.0, -1.0) - 2.0 * abs(iv.b)}, iv)
    if gen == "exp":
        return FunctionSpec("exp", {"c": rng.uniform(0.2, 3.0), "k": rng.uniform(-2.0, 2.0)}, iv)
    return parse_function(gen, iv)


def falsify(config, spec=DEFAULT_SPEC, plan=DEFAULT_PLAN):
    """Seeded random search for chain violations."""
    if config.theorem not in THEOREMS:
        raise ConfigError(f"unknown theorem {config.theorem!r}", "theorem")
    if config.cases < 1:
        raise ConfigError("cases must be >= 1", "cases")
    rng = np.random.default_rng(config.seed)
    violations = []
    n_in = findings = expected = 0
    for _ in range(config.cases):
        if config.interval is not None:
            iv = as_interval(config.interval)
        else:
            a = float(rng.uniform(0.0, 2.0))
            iv = as_interval((a, a + float(rng.uniform(0.1, 3.0))))
        if config.alphas is not None:
            alpha = float(config.alphas[int(rng.integers(len(config.alphas)))])
        else:
            alpha = float(SWEEP_ALPHAS[int(rng.integers(len(SWEEP_ALPHAS)))])
        f = _draw_function(config.generator, rng, iv)
        extra = {}
        if config.theorem.startswith("R_"):
            extra["r"] = float(config.rs[int(rng.integers(len(config.rs)))])
        elif config.theorem.startswith("H_"):
            extra["h"] = config.h or HFunction("identity")
        member = in_class(config.theorem, f, iv, plan, **extra)
        n_in += member
        kw = {"plan": plan, "tol": config.tol}
        if config.theorem == "R_fractional":
            kw["r_form"] = config.r_form
        try:
            rep = evaluate(config.theorem, f, iv, alpha, spec, **extra, **kw)
        except DomainError:
            # e.g. r-convex bound with negative endpoint values
            continue
        if rep.satisfied:
            continue
        if member:
            if rep.min_margin < -10.0 * rep.tolerance:
                findings += 1
                violations.append(rep)
        else:
            expected += 1
            violations.append(rep)
    return FalsifyOutcome(tuple(violations), config.cases, n_in, findings, expected)
