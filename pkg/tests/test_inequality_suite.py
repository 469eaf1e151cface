import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracineq.errors import ConfigError, DomainError, PreconditionError
from fracineq.function_classes import HFunction, parse_function
from fracineq.inequality_suite import (
    CHAIN_TOL,
    FRACTIONAL,
    FalsifyConfig,
    check_reductions,
    eval_classical_baselines,
    eval_h_fractional,
    eval_hh_fractional,
    eval_p_fractional,
    eval_q_fractional,
    eval_r_fractional,
    evaluate,
    falsify,
    h_identity_vs_hadamard,
    h_moment,
    r_bound,
    sweep,
)
from fracineq.special_fn import beta_fn

SQ = parse_function("square")
EXP = parse_function("exp")
E = math.e
ALPHAS = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0)


def const(c):
    return parse_function(f"const:c={c}")


class TestHadamardFractional:
    @pytest.mark.parametrize("alpha", [1.0, 2.0])
    def test_square(self, alpha):
        rep = eval_hh_fractional(SQ, (0, 1), alpha)
        assert rep.values == pytest.approx((0.25, 1 / 3, 0.5), abs=1e-12)
        assert rep.satisfied and rep.preconditions_met

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_constant_equality(self, alpha):
        rep = eval_hh_fractional(const(2.5), (0, 1), alpha)
        assert rep.values == pytest.approx((2.5, 2.5, 2.5), abs=1e-12)
        assert max(abs(m) for m in rep.margins) < 1e-12

    def test_concave_control_violates_left_side(self):
        rep = eval_hh_fractional(parse_function("sqrt"), (0, 1), 1.0)
        assert not rep.satisfied and not rep.preconditions_met
        assert rep.margins[0] == pytest.approx(2 / 3 - math.sqrt(0.5), abs=1e-10)

    def test_negative_a_rejected_by_default(self):
        with pytest.raises(DomainError):
            eval_hh_fractional(SQ, (-1, 1), 1.0)
        rep = eval_hh_fractional(SQ, (-1, 1), 1.0, allow_negative_a=True)
        assert rep.satisfied and not rep.preconditions["a_nonnegative"]

    def test_strict_raises_on_precondition(self):
        with pytest.raises(PreconditionError):
            eval_hh_fractional(parse_function("sqrt"), (0, 1), 1.0, strict=True)


class TestQFractional:
    def test_square_alpha_one(self):
        rep = eval_q_fractional(SQ, (0, 1), 1.0)
        assert rep.values == pytest.approx((0.25, 4 / 3), abs=1e-12)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_constant(self, alpha):
        assert eval_q_fractional(const(3), (0, 1), alpha).values == pytest.approx((3, 12), abs=1e-11)

    def test_reciprocal(self):
        rep = eval_q_fractional(parse_function("recip"), (1, 2), 0.5)
        assert rep.satisfied and rep.min_margin > 0

    def test_factor_is_four_hadamard_means(self):
        hh = eval_hh_fractional(EXP, (0, 2), 0.75, check=False)
        q = eval_q_fractional(EXP, (0, 2), 0.75, check=False)
        assert q.values[1] == pytest.approx(4 * hh.values[1], rel=1e-14)


class TestPFractional:
    def test_square_alpha_one(self):
        assert eval_p_fractional(SQ, (0, 1), 1.0).values == pytest.approx((0.25, 2 / 3, 2), abs=1e-12)

    def test_constant_one(self):
        assert eval_p_fractional(const(1), (0, 1), 1.7).values == pytest.approx((1, 2, 4), abs=1e-12)

    def test_square_alpha_three(self):
        # J_{0+}^3 x^2 (1) = Gamma(3)/Gamma(6), J_{1-}^3 x^2 (0) = (1/2) int_0^1 t^2 t^2 dt
        rep = eval_p_fractional(SQ, (0, 1), 3.0)
        left = math.gamma(3) / math.gamma(6)
        right = 0.5 / 5
        assert rep.values[1] == pytest.approx(math.gamma(4) * (left + right), rel=1e-12)
        assert rep.values[1] == pytest.approx(0.7, rel=1e-12)
        assert rep.satisfied

    def test_negative_function_flags_membership(self):
        rep = eval_p_fractional(parse_function("affine:m=1,c=-5"), (0, 1), 1.0)
        assert not rep.preconditions_met


class TestRFractional:
    def test_exp_r_one(self):
        rep = eval_r_fractional(EXP, (0, 1), 1.0, 1.0)
        assert rep.values == pytest.approx((2 * (E - 1), 1 + E), rel=1e-12)
        assert rep.satisfied

    def test_exp_r_half(self):
        assert eval_r_fractional(EXP, (0, 1), 1.0, 0.5).satisfied

    @pytest.mark.parametrize("alpha", ALPHAS)
    @pytest.mark.parametrize("r", [0.25, 0.5, 1.0])
    def test_constant_closed_form(self, alpha, r):
        c = 1.7
        rep = eval_r_fractional(const(c), (0, 1), alpha, r)
        coeff = (1 / (alpha + 1 / r)) ** r + beta_fn(alpha, (r + 1) / r) ** r
        assert rep.values[0] == pytest.approx(2 * c / alpha, rel=1e-12)
        assert rep.values[1] == pytest.approx(2 * c * coeff ** (1 / r), rel=1e-12)
        assert rep.satisfied

    @pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0])
    def test_printed_scaling_fails_for_constants_above_one(self, alpha):
        # Gamma(alpha+1) scaling gives 2c on the left but the bound is 2c/alpha-ish
        rep = eval_r_fractional(const(1), (0, 1), alpha, 1.0, r_form="printed")
        assert rep.values[0] == pytest.approx(2.0, rel=1e-12)
        assert not rep.satisfied

    def test_printed_equals_proved_at_alpha_one(self):
        a = eval_r_fractional(EXP, (0, 1), 1.0, 0.5)
        b = eval_r_fractional(EXP, (0, 1), 1.0, 0.5, r_form="printed")
        assert a.values == pytest.approx(b.values, rel=1e-15)

    def test_bad_r_form(self):
        with pytest.raises(ConfigError):
            eval_r_fractional(EXP, (0, 1), 1.0, 0.5, r_form="other")

    def test_r_bound_domain(self):
        with pytest.raises(DomainError):
            r_bound(1.0, 1.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            r_bound(-1.0, 1.0, 1.0, 0.5)

    def test_r_bound_alpha_one_coefficient(self):
        # beta(1, (r+1)/r) = r/(r+1) and 1/(1+1/r) = r/(r+1)
        r = 0.5
        assert r_bound(1.0, 1.0, 1.0, r) == pytest.approx(2 * (2 * (r / (r + 1)) ** r) ** (1 / r))


class TestHFractional:
    def test_identity(self):
        rep = eval_h_fractional(SQ, HFunction("identity"), (0, 1), 1.0)
        assert rep.values == pytest.approx((0.5, 2 / 3, 1.0), abs=1e-12)

    def test_constant(self):
        rep = eval_h_fractional(SQ, HFunction("constant"), (0, 1), 1.0)
        assert rep.values == pytest.approx((0.25, 2 / 3, 2.0), abs=1e-12)

    def test_power_half(self):
        h = HFunction("power", 0.5)
        rep = eval_h_fractional(SQ, h, (0, 1), 1.0)
        assert rep.values[2] == pytest.approx(2 / 1.5, rel=1e-10)
        assert rep.satisfied

    @pytest.mark.parametrize("alpha", ALPHAS)
    @pytest.mark.parametrize("s", [0.25, 0.5, 0.75])
    def test_power_moment_closed_form(self, alpha, s):
        expected = 1 / (alpha + s) + beta_fn(alpha, s + 1)
        assert h_moment(HFunction("power", s), alpha) == pytest.approx(expected, rel=1e-9)

    def test_reciprocal_drops_upper_side(self):
        rep = eval_h_fractional(parse_function("sqrt", (0.5, 2)), HFunction("reciprocal"), (0.5, 2), 0.5)
        assert len(rep.values) == 2 and "upper side infinite" in rep.notes[0]
        assert h_moment(HFunction("reciprocal"), 1.0) == math.inf

    def test_requires_hfunction(self):
        with pytest.raises(ConfigError):
            eval_h_fractional(SQ, lambda t: t, (0, 1), 1.0)


class TestClassical:
    def test_hadamard(self):
        rep = eval_classical_baselines(SQ, (0, 1), "HH_classical")
        assert rep.values == pytest.approx((0.25, 1 / 3, 0.5), abs=1e-12)

    def test_r_classical_exp(self):
        rep = eval_classical_baselines(EXP, (0, 1), "R_classical", r=1.0)
        assert rep.values == pytest.approx((E - 1, 0.5 * (1 + E)), rel=1e-12)

    def test_h_identity(self):
        rep = eval_classical_baselines(SQ, (0, 1), "H_classical", h=HFunction("identity"))
        assert rep.values == pytest.approx((0.25, 1 / 3, 0.5), abs=1e-12)

    def test_q_and_p(self):
        assert eval_classical_baselines(SQ, (0, 1), "Q_classical").values == pytest.approx((0.25, 4 / 3))
        assert eval_classical_baselines(SQ, (0, 1), "P_classical").values == pytest.approx((0.25, 2 / 3, 2))

    def test_unknown_variant(self):
        with pytest.raises(ConfigError):
            eval_classical_baselines(SQ, (0, 1), "X_classical")

    def test_r_classical_needs_r(self):
        with pytest.raises(DomainError):
            eval_classical_baselines(EXP, (0, 1), "R_classical")


class TestReductions:
    def test_corpus_consistent(self, corpus):
        for f in corpus:
            rep = check_reductions(f, f.domain)
            bad = [c.to_record() for c in rep.cases if not c.consistent]
            assert rep.all_consistent, bad

    def test_q_identity_square(self):
        rep = check_reductions(SQ, (0, 1))
        q = next(c for c in rep.cases if c.fractional.theorem_id == "Q_fractional")
        assert q.kind == "identity" and q.max_abs_diff <= 1e-10

    def test_r_is_comparison_with_documented_gap(self):
        rep = check_reductions(EXP, (0, 1), rs=(0.5,))
        case = next(c for c in rep.cases if c.fractional.theorem_id == "R_fractional")
        assert case.kind == "comparison"
        rec = case.to_record()
        # per-bracket coefficient 1/3 versus 1/9
        assert rec["fractional_side_2"] > rec["classical_side_2"]
        expected = 0.5 * r_bound(1.0, E, 1.0, 0.5)
        assert rec["fractional_side_2"] == pytest.approx(expected, rel=1e-14)
        assert rec["classical_side_2"] == pytest.approx((1 / 9) * (1 + math.sqrt(E)) ** 2, rel=1e-12)

    @pytest.mark.parametrize("r", [0.25, 0.5, 0.75])
    def test_tightness_ordering(self, r, corpus):
        for f in corpus:
            a, b = f.domain.a, f.domain.b
            fa, fb = f(a), f(b)
            if fa < 0 or fb < 0:
                continue
            frac = eval_r_fractional(f, f.domain, 1.0, r, check=False)
            cls = eval_classical_baselines(f, f.domain, "R_classical", r=r, check=False)
            assert 0.5 * frac.values[1] >= cls.values[1] - 1e-12

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_h_identity_vs_hadamard(self, alpha, corpus):
        for f in corpus:
            case = h_identity_vs_hadamard(f, f.domain, alpha)
            assert case.consistent, case.to_record()


class TestProperties:
    @settings(max_examples=40, deadline=None)
    @given(st.floats(0.01, 100.0), st.sampled_from(ALPHAS),
           st.sampled_from(["square", "exp", "abspow:p=1.5", "monomial:k=3"]))
    def test_scale_equivariance(self, c, alpha, name):
        f = parse_function(name)
        for ev in (eval_hh_fractional, eval_q_fractional, eval_p_fractional):
            base = ev(f, (0, 1), alpha, check=False)
            scaled = ev(f.scaled(c), (0, 1), alpha, check=False)
            np.testing.assert_allclose(scaled.values, [c * v for v in base.values], rtol=1e-12, atol=0)
            assert scaled.satisfied == base.satisfied

    @settings(max_examples=40, deadline=None)
    @given(st.floats(-3.0, 3.0), st.sampled_from(ALPHAS), st.sampled_from(["square", "exp", "abspow:p=1.5"]))
    def test_translation_invariance(self, d, alpha, name):
        f = parse_function(name, (0.5, 2.0))
        base = eval_hh_fractional(f, (0.5, 2.0), alpha, check=False)
        moved = eval_hh_fractional(f.translated(d), (0.5 + d, 2.0 + d), alpha, check=False,
                                   allow_negative_a=True)
        np.testing.assert_allclose(moved.values, base.values, rtol=0, atol=1e-10)

    def test_chain_transitivity(self, corpus):
        for theorem in FRACTIONAL:
            for rep in sweep(theorem, corpus, intervals=((0.0, 1.0), (1.0, 2.0)), alphas=(0.5, 2.0),
                             in_class_only=False):
                if rep.satisfied:
                    vals = rep.values
                    assert all(vals[i + 1] >= vals[i] - rep.tolerance for i in range(len(vals) - 1))

    def test_tolerance_scales_with_last_side(self):
        rep = eval_p_fractional(const(1e6), (0, 1), 1.0)
        assert rep.tolerance == pytest.approx(CHAIN_TOL * 4e6)

    def test_record_is_flat(self):
        rec = eval_h_fractional(SQ, HFunction("identity"), (0, 1), 0.5).to_record()
        assert rec["h"] == "identity" and rec["side_3_name"] == "h_bound"
        assert all(not isinstance(v, (dict, list, tuple)) for v in rec.values())


class TestSweep:
    @pytest.mark.parametrize("theorem", FRACTIONAL)
    def test_in_class_corpus_satisfied(self, theorem, corpus):
        reports = sweep(theorem, corpus)
        assert reports
        assert all(rep.min_margin >= -1e-9 for rep in reports)

    def test_sorted_and_deterministic(self, corpus):
        a = [r.to_record() for r in sweep("P_fractional", corpus)]
        b = [r.to_record() for r in sweep("P_fractional", list(reversed(corpus)))]
        assert a == b

    def test_printed_r_form_violated_only_above_one(self, corpus):
        bad = [r for r in sweep("R_fractional", corpus, r_form="printed") if not r.satisfied]
        assert bad
        assert {r.inputs["alpha"] for r in bad} <= {1.5, 2.0, 3.0}


class TestFalsify:
    def test_concave_hadamard(self):
        out = falsify(FalsifyConfig("HH_fractional", "concave", cases=20))
        assert out.expected >= 1 and out.findings == 0 and out.ok

    def test_sqrt_fixed_alpha_one(self):
        out = falsify(FalsifyConfig("HH_fractional", "sqrt", cases=1, interval=(0, 1), alphas=(1.0,)))
        assert out.expected == 1
        assert out.reports[0].margins[0] <= -0.04

    def test_convex_quadratics_under_q(self):
        out = falsify(FalsifyConfig("Q_fractional", "convex-quadratic", cases=30))
        assert out.in_class_cases == 30 and out.findings == 0 and out.ok

    def test_negative_affine_under_p(self):
        out = falsify(FalsifyConfig("P_fractional", "affine:m=1,c=-5", cases=5, interval=(0, 1)))
        assert out.in_class_cases == 0
        assert out.expected >= 1

    def test_printed_form_is_a_finding(self):
        out = falsify(FalsifyConfig("R_fractional", "exp", cases=30, alphas=(2.0, 3.0), r_form="printed"))
        assert out.findings >= 1 and not out.ok

    def test_deterministic(self):
        cfg = FalsifyConfig("HH_fractional", "concave", cases=10, seed=3)
        a, b = falsify(cfg), falsify(cfg)
        assert [r.to_record() for r in a.reports] == [r.to_record() for r in b.reports]

    @pytest.mark.parametrize("cfg", [FalsifyConfig("nope", "concave"), FalsifyConfig("HH_fractional", "concave", cases=0)])
    def test_config_errors(self, cfg):
        with pytest.raises(ConfigError):
            falsify(cfg)


def test_evaluate_dispatch_matches_direct():
    assert evaluate("HH_fractional", SQ, (0, 1), 2.0).values == eval_hh_fractional(SQ, (0, 1), 2.0).values
    with pytest.raises(ConfigError):
        evaluate("R_fractional", EXP, (0, 1), 1.0)
