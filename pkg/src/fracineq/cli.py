"""Command-line harness: evaluations, sweeps, membership, reductions, falsification.

Exit codes: 0 success, 1 chain violation, 2 configuration error,
3 evaluation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field, fields, replace

from . import __version__
from .errors import ConfigError, DomainError, FracIneqError
from .fractional_integral import as_interval
from .function_classes import (
    SamplingPlan,
    check_convex,
    check_godunova_levin,
    check_h_convex,
    check_p_function,
    check_r_convex,
    default_corpus,
    parse_function,
    parse_h,
)
from .inequality_suite import (
    FRACTIONAL,
    SWEEP_ALPHAS,
    SWEEP_INTERVALS,
    SWEEP_RS,
    THEOREMS,
    FalsifyConfig,
    check_reductions,
    evaluate,
    falsify,
    sweep,
)
from .quadrature import QuadratureSpec
from .report import write_report

log = logging.getLogger("fracineq")

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_EVAL = 0, 1, 2, 3
MODES = ("eval", "sweep", "membership", "reductions", "falsify")


@dataclass
class RunConfig:
    mode: str = "eval"
    theorem: str | None = None
    functions: list = field(default_factory=list)
    intervals: list = field(default_factory=list)
    alphas: list = field(default_factory=list)
    rs: list = field(default_factory=list)
    hs: list = field(default_factory=list)
    seed: int = 0
    out: str | None = None
    format: str = "json"
    strict_preconditions: bool = True
    panels: int | None = None
    nodes: int | None = None
    generator: str | None = None
    cases: int = 50
    r_form: str = "proved"

    def validate(self):
        if self.mode not in MODES:
            raise ConfigError(f"must be one of {', '.join(MODES)}", "mode")
        if self.format not in ("json", "csv"):
            raise ConfigError("must be json or csv", "format")
        if self.mode in ("eval", "falsify") and self.theorem is None:
            raise ConfigError(f"mode {self.mode} needs a theorem", "theorem")
        if self.theorem is not None and self.theorem not in THEOREMS + ("all",):
            raise ConfigError(f"unknown theorem; known: {', '.join(THEOREMS)}", "theorem")
        if self.mode == "eval" and not self.functions:
            raise ConfigError("mode eval needs at least one function", "function")
        if self.mode == "falsify" and not self.generator:
            raise ConfigError("mode falsify needs a generator", "generator")
        for name in ("alphas", "rs"):
            vals = getattr(self, name)
            if any(not isinstance(v, (int, float)) for v in vals):
                raise ConfigError("grid values must be numbers", name)
        if any(v <= 0 for v in self.alphas):
            raise ConfigError("alpha values must be positive", "alpha")
        if any(not 0 <= v <= 1 for v in self.rs):
            raise ConfigError("r values must lie in [0, 1]", "r")
        if not isinstance(self.seed, int):
            raise ConfigError("seed must be an integer", "seed")
        if self.r_form not in ("proved", "printed"):
            raise ConfigError("must be proved or printed", "r_form")
        if self.cases < 1:
            raise ConfigError("must be >= 1", "cases")
        # parse everything once so bad specs fail before any work starts
        self.function_specs()
        self.interval_list()
        self.h_list()
        self.quadrature()
        return self

    def function_specs(self):
        if not self.functions:
            return default_corpus()
        return [parse_function(s) for s in self.functions]

    def interval_list(self):
        try:
            return [as_interval(iv) for iv in self.intervals]
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc), "interval") from None

    def h_list(self):
        return [parse_h(s) for s in self.hs]

    def quadrature(self):
        spec = QuadratureSpec()
        try:
            if self.panels is not None:
                spec = replace(spec, panels=self.panels)
            if self.nodes is not None:
                spec = replace(spec, nodes=self.nodes)
        except ValueError as exc:
            raise ConfigError(str(exc), "quadrature") from None
        return spec

    def plan(self):
        return SamplingPlan(seed=self.seed)


def _float_list(text, name):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ConfigError(f"expected a comma list of numbers, got {text!r}", name) from None


def _interval_arg(text):
    vals = _float_list(text, "interval")
    if len(vals) != 2:
        raise ConfigError(f"expected a,b got {text!r}", "interval")
    return tuple(vals)


def build_parser():
    p = argparse.ArgumentParser(
        prog="fracineq",
        description="Evaluate fractional Hadamard-type inequality chains.",
    )
    p.add_argument("--config", help="JSON run configuration; flags override its values")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--theorem", help=f"one of {', '.join(THEOREMS)} (sweep also accepts 'all')")
    p.add_argument("--function", action="append", dest="functions",
                   help="function spec family:key=value,...; repeatable (default corpus if omitted)")
    p.add_argument("--interval", action="append", dest="intervals",
                   help="a,b; repeatable (default: each function's domain)")
    p.add_argument("--alpha", help="comma list of fractional orders")
    p.add_argument("--r", help="comma list of r values")
    p.add_argument("--h", action="append", dest="hs",
                   help="h spec: identity, constant, reciprocal, power:s=<s>; repeatable")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--strict-preconditions", choices=("on", "off"))
    p.add_argument("--panels", type=int)
    p.add_argument("--nodes", type=int)
    p.add_argument("--generator", help="falsify generator: convex-quadratic, concave, "
                                       "negative, exp, or a function spec")
    p.add_argument("--cases", type=int, help="falsify case count")
    p.add_argument("--r-form", choices=("proved", "printed"),
                   help="scaling of the r-convex fractional mean")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args):
    data = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(str(exc), "config") from None
        known = {f.name for f in fields(RunConfig)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown keys {unknown}", "config")
        if "intervals" in data:
            data["intervals"] = [tuple(iv) for iv in data["intervals"]]
        if isinstance(data.get("strict_preconditions"), str):
            data["strict_preconditions"] = data["strict_preconditions"] == "on"
    overrides = {
        "mode": args.mode,
        "theorem": args.theorem,
        "functions": args.functions,
        "intervals": None if args.intervals is None else [_interval_arg(s) for s in args.intervals],
        "alphas": None if args.alpha is None else _float_list(args.alpha, "alpha"),
        "rs": None if args.r is None else _float_list(args.r, "r"),
        "hs": args.hs,
        "seed": args.seed,
        "out": args.out,
        "format": args.format,
        "strict_preconditions": None if args.strict_preconditions is None
        else args.strict_preconditions == "on",
        "panels": args.panels,
        "nodes": args.nodes,
        "generator": args.generator,
        "cases": args.cases,
        "r_form": args.r_form,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        cfg = RunConfig(**data)
    except TypeError as exc:
        raise ConfigError(str(exc), "config") from None
    return cfg.validate()


def _extras(theorem, cfg):
    if theorem.startswith("R_"):
        return [{"r": r} for r in (cfg.rs or [1.0])]
    if theorem.startswith("H_"):
        return [{"h": h} for h in (cfg.h_list() or [parse_h("identity")])]
    return [{}]


def _run_eval(cfg, spec, plan, errors):
    strict = cfg.strict_preconditions
    reports = []
    for f in cfg.function_specs():
        for iv in cfg.interval_list() or [f.domain]:
            for extra in _extras(cfg.theorem, cfg):
                for alpha in cfg.alphas or [1.0]:
                    try:
                        reports.append(evaluate(
                            cfg.theorem, f, iv, alpha, spec, plan=plan, strict=strict,
                            allow_negative_a=not strict, **_rform(cfg), **extra))
                    except FracIneqError as exc:
                        errors.append(f"{f.id} on {iv} alpha={alpha} {extra}: {exc}")
    return reports


def _rform(cfg):
    return {"r_form": cfg.r_form} if cfg.theorem == "R_fractional" else {}


def _violation_exit(reports, strict):
    relevant = [r for r in reports if strict or r.preconditions_met]
    return EXIT_VIOLATION if any(not r.satisfied for r in relevant) else EXIT_OK


def run(cfg):
    """Execute a validated RunConfig.  Returns (exit status, report text)."""
    start = time.perf_counter()
    spec = cfg.quadrature()
    plan = cfg.plan()
    errors = []
    summary = {}
    status = EXIT_OK

    if cfg.mode == "eval":
        reports = _run_eval(cfg, spec, plan, errors)
        cases = [r.to_record() for r in reports]
        status = _violation_exit(reports, cfg.strict_preconditions)
        summary = {"evaluated": len(reports), "violated": sum(not r.satisfied for r in reports)}

    elif cfg.mode == "sweep":
        theorems = FRACTIONAL if cfg.theorem in (None, "all") else (cfg.theorem,)
        reports = []
        for th in theorems:
            try:
                reports.extend(sweep(
                    th, cfg.function_specs(),
                    intervals=cfg.interval_list() or SWEEP_INTERVALS,
                    alphas=cfg.alphas or SWEEP_ALPHAS,
                    rs=cfg.rs or SWEEP_RS,
                    hs=cfg.h_list() or None,
                    spec=spec, plan=plan,
                    r_form=cfg.r_form,
                ))
            except FracIneqError as exc:
                errors.append(f"{th}: {exc}")
        cases = [r.to_record() for r in reports]
        status = _violation_exit(reports, True)
        summary = {"evaluated": len(reports), "violated": sum(not r.satisfied for r in reports)}

    elif cfg.mode == "membership":
        cases = []
        rs = cfg.rs or list(SWEEP_RS)
        hs = cfg.h_list() or [parse_h(s) for s in ("identity", "constant", "power:s=0.5", "reciprocal")]
        for f in cfg.function_specs():
            for iv in cfg.interval_list() or [f.domain]:
                checks = [lambda: check_convex(f, plan, iv),
                          lambda: check_godunova_levin(f, plan, iv),
                          lambda: check_p_function(f, plan, iv)]
                checks += [lambda r=r: check_r_convex(f, r, plan, iv) for r in rs]
                checks += [lambda h=h: check_h_convex(f, h, plan, iv) for h in hs]
                for chk in checks:
                    try:
                        cases.append(chk().to_record())
                    except DomainError as exc:
                        # r-convexity is undefined for functions that are not positive
                        cases.append({"class_tag": "r-convex", "function": f.id, "a": iv.a,
                                      "b": iv.b, "verdict": "not-applicable", "samples_used": 0,
                                      "worst_margin": None, "witness": str(exc)})
                    except FracIneqError as exc:
                        errors.append(f"{f.id} on {iv}: {exc}")
        summary = {"checks": len(cases), "failed": sum(c["verdict"] == "fail" for c in cases)}

    elif cfg.mode == "reductions":
        cases = []
        consistent = True
        for f in cfg.function_specs():
            for iv in cfg.interval_list() or [f.domain]:
                try:
                    rep = check_reductions(f, iv, spec, rs=tuple(r for r in (cfg.rs or (0.25, 0.5, 0.75, 1.0)) if r > 0),
                                           hs=tuple(cfg.h_list()) or None)
                except FracIneqError as exc:
                    errors.append(f"{f.id} on {iv}: {exc}")
                    continue
                consistent &= rep.all_consistent
                cases.extend(c.to_record() for c in rep.cases)
        status = EXIT_OK if consistent else EXIT_VIOLATION
        summary = {"comparisons": len(cases), "inconsistent": sum(not c["consistent"] for c in cases)}

    else:  # falsify
        ivs = cfg.interval_list()
        hs = cfg.h_list()
        fc = FalsifyConfig(
            theorem=cfg.theorem, generator=cfg.generator, cases=cfg.cases, seed=cfg.seed,
            interval=(ivs[0].a, ivs[0].b) if ivs else None,
            alphas=tuple(cfg.alphas) or None,
            rs=tuple(cfg.rs) or SWEEP_RS,
            h=hs[0] if hs else None,
            r_form=cfg.r_form,
        )
        try:
            outcome = falsify(fc, spec, plan)
        except FracIneqError as exc:
            errors.append(str(exc))
            outcome = None
        cases = [] if outcome is None else [r.to_record() for r in outcome.reports]
        if outcome is not None:
            summary = {"cases_evaluated": outcome.cases_evaluated,
                       "in_class_cases": outcome.in_class_cases,
                       "findings": outcome.findings,
                       "expected_violations": outcome.expected,
                       "ok": outcome.ok}
            status = EXIT_OK if outcome.ok else EXIT_VIOLATION

    if errors:
        status = EXIT_EVAL
        for line in errors:
            print(f"fracineq: error: {line}", file=sys.stderr)

    meta = {
        "version": __version__,
        "mode": cfg.mode,
        "theorem": cfg.theorem,
        "seed": cfg.seed,
        "quadrature": spec.as_dict(),
        "strict_preconditions": cfg.strict_preconditions,
        "summary": summary,
        "errors": errors,
        "exit_status": status,
        "elapsed_ms": round((time.perf_counter() - start) * 1000.0, 3),
    }
    text = write_report(cfg.out, meta, cases, cfg.format)
    return status, text


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except FracIneqError as exc:
        print(f"fracineq: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    status, text = run(cfg)
    if cfg.out is None:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
