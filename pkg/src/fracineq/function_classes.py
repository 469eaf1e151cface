"""Test-function registry and sampled membership checks for convexity classes.

Membership is decided by falsification: a check samples the defining
inequality on a deterministic grid plus seeded random triples and passes
when no sample has slack below ``-membership_tol``.  A pass therefore means
"no violation found at this density", and every report carries the number
of samples behind its verdict.

Function spec strings have the form ``family:key=value,...``; see
:func:`parse_function` for the grammar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ConfigError, DomainError, EvaluationError
from .fractional_integral import Interval, as_interval

__all__ = [
    "FunctionSpec",
    "HFunction",
    "SamplingPlan",
    "MembershipReport",
    "DEFAULT_PLAN",
    "MEMBERSHIP_TOL",
    "parse_function",
    "parse_h",
    "power_mean",
    "check_convex",
    "check_godunova_levin",
    "check_p_function",
    "check_r_convex",
    "check_h_convex",
    "godunova_levin_triple",
    "godunova_levin_crosscheck",
    "check_class",
    "is_member",
    "default_corpus",
]

MEMBERSHIP_TOL = 1e-9
LAMBDA_EPS = 1e-3

CLASS_TAGS = ("convex", "Q", "P", "r-convex", "h-convex")

# family -> (default params, default domain)
_FAMILIES = {
    "monomial": ({"k": 2.0}, (0.0, 1.0)),
    "affine": ({"m": 1.0, "c": 0.0}, (0.0, 1.0)),
    "const": ({"c": 1.0}, (0.0, 1.0)),
    "exp": ({"c": 1.0, "k": 1.0}, (0.0, 1.0)),
    "recip": ({"c": 1.0}, (1.0, 2.0)),
    "abspow": ({"p": 1.5}, (0.0, 1.0)),
    "sqrt": ({}, (0.0, 1.0)),
    "tab": ({}, None),
}
_MODIFIERS = {"scale": 1.0, "shift": 0.0, "offset": 0.0}


def _fmt(v):
    return repr(float(v)) if not float(v).is_integer() else str(int(v))


@dataclass(frozen=True)
class FunctionSpec:
    """An evaluatable real function from a named family.

    The value is ``scale * base(x - shift) + offset``.  Tabulated functions
    (family ``tab``) interpolate linearly between the given points.
    """

    family: str
    params: tuple = ()
    domain: Interval = field(default=Interval(0.0, 1.0))
    claimed_classes: frozenset = frozenset()

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ConfigError(f"unknown function family {self.family!r}", "function")
        if isinstance(self.params, dict):
            object.__setattr__(self, "params", tuple(sorted(self.params.items())))
        object.__setattr__(self, "domain", as_interval(self.domain))
        object.__setattr__(self, "claimed_classes", frozenset(self.claimed_classes))
        p = self.param_dict
        if self.family == "tab":
            xs, ys = p.get("x"), p.get("y")
            if xs is None or ys is None or len(xs) != len(ys) or len(xs) < 2:
                raise ConfigError("tab needs x and y lists of equal length >= 2", "function")
            if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
                raise ConfigError("tab x values must be strictly increasing", "function")

    @property
    def param_dict(self):
        return dict(self.params)

    def _get(self, key):
        p = self.param_dict
        if key in p:
            return p[key]
        if key in _MODIFIERS:
            return _MODIFIERS[key]
        return _FAMILIES[self.family][0][key]

    def _base(self, x):
        fam = self.family
        g = self._get
        with np.errstate(divide="ignore", invalid="ignore"):
            if fam == "monomial":
                k = g("k")
                if float(k).is_integer():
                    return x ** int(k)
                return np.where(x >= 0, np.abs(x) ** k, np.nan)
            if fam == "affine":
                return g("m") * x + g("c")
            if fam == "const":
                return np.full_like(x, g("c"))
            if fam == "exp":
                return g("c") * np.exp(g("k") * x)
            if fam == "recip":
                return g("c") / x
            if fam == "abspow":
                return np.abs(x) ** g("p")
            if fam == "sqrt":
                return np.where(x >= 0, np.sqrt(np.abs(x)), np.nan)
            if fam == "tab":
                xs, ys = np.asarray(g("x")), np.asarray(g("y"))
                inside = (x >= xs[0]) & (x <= xs[-1])
                return np.where(inside, np.interp(x, xs, ys), np.nan)
        raise AssertionError(fam)

    def __call__(self, x):
        scalar = np.ndim(x) == 0
        xa = np.asarray(x, dtype=float)
        y = self._get("scale") * self._base(xa - self._get("shift")) + self._get("offset")
        return float(y) if scalar else y

    @property
    def id(self):
        parts = []
        for k, v in self.params:
            if isinstance(v, tuple):
                parts.append(f"{k}=" + "|".join(_fmt(e) for e in v))
            else:
                parts.append(f"{k}={_fmt(v)}")
        return self.family + (":" + ",".join(parts) if parts else "")

    def __str__(self):
        return self.id

    def admits(self, iv, points=257):
        """True if the function is finite on a dense grid over ``iv``."""
        iv = as_interval(iv)
        xs = np.linspace(iv.a, iv.b, points)
        return bool(np.all(np.isfinite(self(xs))))

    def scaled(self, c):
        p = self.param_dict
        p["scale"] = self._get("scale") * c
        p["offset"] = self._get("offset") * c
        return FunctionSpec(self.family, p, self.domain)

    def translated(self, d):
        p = self.param_dict
        p["shift"] = self._get("shift") + d
        iv = Interval(self.domain.a + d, self.domain.b + d)
        return FunctionSpec(self.family, p, iv)


def _parse_value(key, text):
    try:
        if "|" in text or key in ("x", "y"):
            return tuple(float(t) for t in text.split("|"))
        return float(text)
    except ValueError:
        raise ConfigError(f"bad numeric value {text!r} for {key!r}", "function") from None


def parse_function(text, domain=None):
    """Parse ``family:key=value,...`` into a :class:`FunctionSpec`.

    Families and their keys (defaults in brackets):

    ``monomial`` k[2]; ``affine`` m[1], c[0]; ``const`` c[1];
    ``exp`` c[1], k[1]; ``recip`` c[1]; ``abspow`` p[1.5]; ``sqrt``;
    ``tab`` x=x0|x1|..., y=y0|y1|...

    Every family also accepts ``scale``, ``shift`` and ``offset``.  A
    ``neg-`` prefix on the family negates the function.  Aliases:
    ``square`` = ``monomial:k=2``, ``identity`` = ``monomial:k=1``.
    """
    text = text.strip()
    aliases = {"square": "monomial:k=2", "identity": "monomial:k=1", "one": "const:c=1"}
    fam, _, rest = text.partition(":")
    fam = fam.strip().lower()
    if fam in aliases:
        alias_fam, _, alias_rest = aliases[fam].partition(":")
        fam = alias_fam
        rest = ",".join(p for p in (alias_rest, rest) if p)
    negate = fam.startswith("neg-")
    if negate:
        fam = fam[4:]
        if fam in aliases:
            alias_fam, _, alias_rest = aliases[fam].partition(":")
            fam = alias_fam
            rest = ",".join(p for p in (alias_rest, rest) if p)
    if fam not in _FAMILIES:
        raise ConfigError(
            f"unknown function family {fam!r}; known: {', '.join(sorted(_FAMILIES))}",
            "function",
        )
    params = {}
    allowed = set(_FAMILIES[fam][0]) | set(_MODIFIERS) | ({"x", "y"} if fam == "tab" else set())
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq:
            raise ConfigError(f"expected key=value, got {item!r}", "function")
        if key not in allowed:
            raise ConfigError(f"family {fam!r} has no parameter {key!r}", "function")
        params[key] = _parse_value(key, val.strip())
    if negate:
        params["scale"] = -params.get("scale", 1.0)
        params["offset"] = -params.get("offset", 0.0)
    if domain is None:
        default = _FAMILIES[fam][1]
        if default is None:
            default = (params["x"][0], params["x"][-1])
        domain = default
    return FunctionSpec(fam, params, as_interval(domain))


@dataclass(frozen=True)
class HFunction:
    """Positive weight h on (0, 1): identity, constant, reciprocal or power."""

    family: str
    s: float | None = None

    def __post_init__(self):
        if self.family not in ("identity", "constant", "reciprocal", "power"):
            raise ConfigError(f"unknown h family {self.family!r}", "h")
        if self.family == "power":
            if self.s is None or not (0.0 < float(self.s) < 1.0):
                raise DomainError(f"power h needs s in (0, 1), got {self.s!r}")
            object.__setattr__(self, "s", float(self.s))
        elif self.s is not None:
            raise ConfigError(f"h family {self.family!r} takes no exponent", "h")

    def __call__(self, lam):
        scalar = np.ndim(lam) == 0
        lam = np.asarray(lam, dtype=float)
        if self.family == "identity":
            out = lam.copy()
        elif self.family == "constant":
            out = np.ones_like(lam)
        elif self.family == "reciprocal":
            with np.errstate(divide="ignore"):
                out = 1.0 / lam
        else:
            out = lam**self.s
        return float(out) if scalar else out

    @property
    def moment_finite(self):
        """Whether int_0^1 t^(alpha-1) [h(t) + h(1-t)] dt is finite for alpha > 0."""
        return self.family != "reciprocal"

    @property
    def id(self):
        return f"power:s={_fmt(self.s)}" if self.family == "power" else self.family

    def __str__(self):
        return self.id


def parse_h(text):
    """Parse an h spec: ``identity``, ``constant``, ``reciprocal`` or ``power:s=0.5``.

    ``lambda``, ``1`` and ``1/lambda`` are accepted as aliases.
    """
    text = text.strip().lower()
    aliases = {"lambda": "identity", "id": "identity", "1": "constant", "one": "constant",
               "1/lambda": "reciprocal", "recip": "reciprocal"}
    fam, _, rest = text.partition(":")
    fam = aliases.get(fam, fam)
    if fam == "power":
        key, _, val = rest.partition("=")
        if key.strip() != "s":
            raise ConfigError(f"power h needs s=<value>, got {text!r}", "h")
        try:
            s = float(val)
        except ValueError:
            raise ConfigError(f"bad exponent in {text!r}", "h") from None
        return HFunction("power", s)
    if rest:
        raise ConfigError(f"h family {fam!r} takes no parameters", "h")
    return HFunction(fam)


def power_mean(x, y, lam, r):
    """Weighted power mean M_r(x, y; lam); r = 0 is the geometric mean.

    Evaluated as exp(log(lam x^r + (1-lam) y^r) / r) with log1p/expm1 so it
    stays accurate as r approaches 0.  Works elementwise on arrays.
    """
    scalar = all(np.ndim(v) == 0 for v in (x, y, lam))
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lam = np.asarray(lam, dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("power mean needs positive arguments")
    if np.any((lam < 0) | (lam > 1)):
        raise DomainError("power mean weight must lie in [0, 1]")
    lx, ly = np.log(x), np.log(y)
    spread = float(np.max(np.abs(lx - ly), initial=0.0))
    if r == 0:
        out = np.exp(lam * lx + (1.0 - lam) * ly)
    elif abs(r) * max(spread, 1.0) < 1e-7:
        # second-order expansion; expm1 underflows to garbage for subnormal r*log
        out = np.exp(lam * lx + (1.0 - lam) * ly + 0.5 * r * lam * (1.0 - lam) * (lx - ly) ** 2)
    else:
        inner = np.log1p(lam * np.expm1(r * lx) + (1.0 - lam) * np.expm1(r * ly))
        out = np.exp(inner / r)
    return float(out) if scalar else out


@dataclass(frozen=True)
class SamplingPlan:
    lam_points: int = 33
    xy_points: int = 17
    random_triples: int = 10_000
    seed: int = 0
    membership_tol: float = MEMBERSHIP_TOL
    lam_eps: float = LAMBDA_EPS


DEFAULT_PLAN = SamplingPlan()


@dataclass(frozen=True)
class MembershipReport:
    class_tag: str
    verdict: str
    samples_used: int
    worst_margin: float
    witness: tuple
    function: str = ""
    interval: Interval | None = None

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_record(self):
        return {
            "class_tag": self.class_tag,
            "function": self.function,
            "a": None if self.interval is None else self.interval.a,
            "b": None if self.interval is None else self.interval.b,
            "verdict": self.verdict,
            "samples_used": self.samples_used,
            "worst_margin": self.worst_margin,
            "witness": ";".join(f"{k}={v!r}" for k, v in self.witness),
        }


def _samples(iv, plan, lam_lo, lam_hi):
    grid_x = np.linspace(iv.a, iv.b, plan.xy_points)
    grid_l = np.linspace(lam_lo, lam_hi, plan.lam_points)
    X, Y, L = np.meshgrid(grid_x, grid_x, grid_l, indexing="ij")
    rng = np.random.default_rng(plan.seed)
    rx = rng.uniform(iv.a, iv.b, plan.random_triples)
    ry = rng.uniform(iv.a, iv.b, plan.random_triples)
    rl = rng.uniform(lam_lo, lam_hi, plan.random_triples)
    return (np.concatenate((X.ravel(), rx)),
            np.concatenate((Y.ravel(), ry)),
            np.concatenate((L.ravel(), rl)))


def _eval_checked(f, x):
    v = np.asarray(f(x), dtype=float)
    bad = ~np.isfinite(v)
    if bad.any():
        raise EvaluationError("function is not finite", float(np.asarray(x)[bad][0]))
    return v


def _run_check(tag, f, plan, iv, slack, lam_lo, lam_hi, nonneg):
    iv = as_interval(f.domain if iv is None else iv)
    x, y, lam = _samples(iv, plan, lam_lo, lam_hi)
    fx, fy = _eval_checked(f, x), _eval_checked(f, y)
    z = lam * x + (1.0 - lam) * y
    fz = _eval_checked(f, z)
    margins = slack(fx, fy, fz, lam)
    i = int(np.argmin(margins))
    worst = float(margins[i])
    witness = (("x", float(x[i])), ("y", float(y[i])), ("lam", float(lam[i])))
    used = margins.size
    if nonneg:
        pts = np.concatenate((np.linspace(iv.a, iv.b, plan.xy_points), x))
        vals = _eval_checked(f, pts)
        j = int(np.argmin(vals))
        used += vals.size
        if vals[j] < worst:
            worst = float(vals[j])
            witness = (("x", float(pts[j])),)
    verdict = "fail" if worst < -plan.membership_tol else "pass"
    return MembershipReport(tag, verdict, used, worst, witness, str(getattr(f, "id", f)), iv)


def check_convex(f, plan=DEFAULT_PLAN, interval=None):
    """Sampled check of f(lam x + (1-lam) y) <= lam f(x) + (1-lam) f(y)."""
    return _run_check(
        "convex", f, plan, interval,
        lambda fx, fy, fz, lam: lam * fx + (1.0 - lam) * fy - fz,
        0.0, 1.0, nonneg=False,
    )


def check_godunova_levin(f, plan=DEFAULT_PLAN, interval=None):
    """Sampled check of class Q: nonnegative and f(z) <= f(x)/lam + f(y)/(1-lam)."""
    return _run_check(
        "Q", f, plan, interval,
        lambda fx, fy, fz, lam: fx / lam + fy / (1.0 - lam) - fz,
        plan.lam_eps, 1.0 - plan.lam_eps, nonneg=True,
    )


def check_p_function(f, plan=DEFAULT_PLAN, interval=None):
    """Sampled check of class P: nonnegative and f(z) <= f(x) + f(y), lam in [0, 1]."""
    return _run_check(
        "P", f, plan, interval,
        lambda fx, fy, fz, lam: fx + fy - fz,
        0.0, 1.0, nonneg=True,
    )


def check_r_convex(f, r, plan=DEFAULT_PLAN, interval=None):
    """Sampled check of f(z) <= M_r(f(x), f(y); lam) for positive f, r in [0, 1].

    Raises DomainError if f takes a non-positive value at a sampled point.
    """
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    iv = as_interval(f.domain if interval is None else interval)
    probe = _eval_checked(f, np.linspace(iv.a, iv.b, plan.xy_points))
    if np.any(probe <= 0):
        bad = float(np.linspace(iv.a, iv.b, plan.xy_points)[np.argmin(probe)])
        raise DomainError(f"r-convexity needs f > 0; f({bad!r}) = {float(np.min(probe))!r}")

    def slack(fx, fy, fz, lam):
        if np.any(fx <= 0) or np.any(fy <= 0):
            raise DomainError("r-convexity needs f > 0 at every sampled point")
        return power_mean(fx, fy, lam, r) - fz

    rep = _run_check(f"r-convex(r={_fmt(r)})", f, plan, iv, slack, 0.0, 1.0, nonneg=False)
    return rep


def check_h_convex(f, h, plan=DEFAULT_PLAN, interval=None):
    """Sampled check of f(z) <= h(lam) f(x) + h(1-lam) f(y), f nonnegative."""
    return _run_check(
        f"h-convex(h={h.id})", f, plan, interval,
        lambda fx, fy, fz, lam: h(lam) * fx + h(1.0 - lam) * fy - fz,
        plan.lam_eps, 1.0 - plan.lam_eps, nonneg=True,
    )


def godunova_levin_triple(f, x, y, z):
    """f(x)(x-y)(x-z) + f(y)(y-x)(y-z) + f(z)(z-x)(z-y)."""
    x, y, z = float(x), float(y), float(z)
    if x == y or y == z or x == z:
        raise DomainError(f"points must be pairwise distinct, got {(x, y, z)}")
    return float(f(x) * (x - y) * (x - z) + f(y) * (y - x) * (y - z) + f(z) * (z - x) * (z - y))


def _triples_array(f, x, y, z):
    return f(x) * (x - y) * (x - z) + f(y) * (y - x) * (y - z) + f(z) * (z - x) * (z - y)


def godunova_levin_crosscheck(f, plan=DEFAULT_PLAN, interval=None):
    """Compare the Q check with the sign of the cubic triple form.

    Returns a dict with both verdicts, the minimum triple value over
    ``plan.random_triples`` seeded distinct triples, and whether the two
    characterizations agree.
    """
    iv = as_interval(f.domain if interval is None else interval)
    q = check_godunova_levin(f, plan, iv)
    rng = np.random.default_rng(plan.seed + 1)
    pts = rng.uniform(iv.a, iv.b, (plan.random_triples, 3))
    keep = (pts[:, 0] != pts[:, 1]) & (pts[:, 1] != pts[:, 2]) & (pts[:, 0] != pts[:, 2])
    pts = pts[keep]
    vals = _triples_array(f, pts[:, 0], pts[:, 1], pts[:, 2])
    # Nonnegativity belongs to the class definition, so both sides require it.
    fvals = f(np.linspace(iv.a, iv.b, plan.xy_points))
    nonneg = bool(np.min(fvals) >= -plan.membership_tol)
    i = int(np.argmin(vals))
    triple_min = float(vals[i])
    triple_pass = nonneg and triple_min >= -plan.membership_tol
    return {
        "function": str(getattr(f, "id", f)),
        "a": iv.a,
        "b": iv.b,
        "q_verdict": q.verdict,
        "triple_verdict": "pass" if triple_pass else "fail",
        "triple_min": triple_min,
        "triple_witness": tuple(float(v) for v in pts[i]),
        "triples_used": int(vals.size),
        "agree": (q.verdict == "pass") == triple_pass,
    }


def check_class(tag, f, plan=DEFAULT_PLAN, interval=None, r=None, h=None):
    """Dispatch on a class tag: convex, Q, P, r-convex (needs r), h-convex (needs h)."""
    if tag == "convex":
        return check_convex(f, plan, interval)
    if tag == "Q":
        return check_godunova_levin(f, plan, interval)
    if tag == "P":
        return check_p_function(f, plan, interval)
    if tag == "r-convex":
        if r is None:
            raise ConfigError("r-convex check needs r", "r")
        return check_r_convex(f, r, plan, interval)
    if tag == "h-convex":
        if h is None:
            raise ConfigError("h-convex check needs h", "h")
        return check_h_convex(f, h, plan, interval)
    raise ConfigError(f"unknown class tag {tag!r}", "class")


@lru_cache(maxsize=4096)
def _cached_member(tag, f, plan, iv, r, h):
    try:
        return check_class(tag, f, plan, iv, r=r, h=h).passed
    except (DomainError, EvaluationError):
        return False


def is_member(tag, f, interval=None, plan=DEFAULT_PLAN, r=None, h=None):
    """Boolean membership; evaluation or domain failures count as non-members."""
    iv = as_interval(f.domain if interval is None else interval)
    try:
        return _cached_member(tag, f, plan, iv, r, h)
    except TypeError:
        # unhashable callables bypass the cache
        return _cached_member.__wrapped__(tag, f, plan, iv, r, h)


def default_corpus():
    """The shipped corpus: seven functions with their natural domains.

    ``sqrt`` is the concave control; the rest are nonnegative convex.
    """
    convex_set = {"convex", "Q", "P", "h-convex"}
    return [
        FunctionSpec("monomial", {"k": 2.0}, Interval(0.0, 1.0), convex_set),
        FunctionSpec("monomial", {"k": 1.0}, Interval(0.0, 1.0), convex_set),
        FunctionSpec("exp", {"c": 1.0, "k": 1.0}, Interval(0.0, 1.0), convex_set | {"r-convex"}),
        FunctionSpec("recip", {}, Interval(1.0, 2.0), convex_set | {"r-convex"}),
        FunctionSpec("abspow", {"p": 1.5}, Interval(0.0, 1.0), convex_set),
        FunctionSpec("sqrt", {}, Interval(0.0, 1.0), {"Q", "P"}),
        FunctionSpec("const", {"c": 1.0}, Interval(0.0, 1.0), convex_set | {"r-convex"}),
    ]
