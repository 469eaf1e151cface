import math

import numpy as np
import pytest
from scipy import integrate

from fracineq.errors import DomainError
from fracineq.fractional_integral import (
    FracOrder,
    Interval,
    bracket,
    midpoint_form,
    rl_left,
    rl_right,
)
from fracineq.function_classes import parse_function

ALPHAS = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0)
INTERVALS = ((0.0, 1.0), (1.0, 2.0), (0.5, 3.0))


def _square(x):
    return np.asarray(x) ** 2


def qaws_left(f, a, b, alpha):
    """Independent oracle: QUADPACK QAWS with weight (b-t)^(alpha-1)."""
    val, _ = integrate.quad(f, a, b, weight="alg", wvar=(0.0, alpha - 1.0), epsabs=1e-14, epsrel=1e-13)
    return val / math.gamma(alpha)


def qaws_right(f, a, b, alpha):
    val, _ = integrate.quad(f, a, b, weight="alg", wvar=(alpha - 1.0, 0.0), epsabs=1e-14, epsrel=1e-13)
    return val / math.gamma(alpha)


class TestTypes:
    def test_interval_invariants(self):
        with pytest.raises(DomainError):
            Interval(1.0, 1.0)
        with pytest.raises(DomainError):
            Interval(0.0, float("inf"))
        iv = Interval(-2, 3)
        assert iv.length == 5.0 and iv.midpoint == 0.5

    def test_frac_order(self):
        assert float(FracOrder(2)) == 2.0
        for bad in (0.0, -1.0, float("nan")):
            with pytest.raises(DomainError):
                FracOrder(bad)


class TestExamples:
    def test_left_constant(self):
        # (b-a)^alpha / Gamma(alpha+1) with alpha = 1/2 -> 2/sqrt(pi)
        v = rl_left(lambda x: np.ones_like(x), (0, 1), 0.5)
        assert v == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-12)
        assert v == pytest.approx(1.1283791671, abs=1e-10)

    def test_right_constant(self):
        v = rl_right(lambda x: np.ones_like(x), (0, 1), 0.5)
        assert v == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-12)

    def test_alpha_one_linear(self):
        assert rl_left(lambda x: x, (0, 1), 1.0) == pytest.approx(0.5, rel=1e-14)
        assert rl_right(lambda x: x, (0, 1), 1.0) == pytest.approx(0.5, rel=1e-14)

    def test_square_alpha_two(self):
        # Gamma(3)/Gamma(5) and int_0^1 t * t^2 dt
        assert rl_left(_square, (0, 1), 2.0) == pytest.approx(1.0 / 12.0, rel=1e-12)
        assert rl_right(_square, (0, 1), 2.0) == pytest.approx(0.25, rel=1e-12)

    def test_bracket_examples(self):
        br = bracket(_square, (0, 1), 1.0)
        assert br.bracket == pytest.approx(2.0 / 3.0, rel=1e-13)
        assert br.normalized_mean == pytest.approx(1.0 / 3.0, rel=1e-13)
        br2 = bracket(_square, (0, 1), 2.0)
        assert br2.left == pytest.approx(1.0 / 12.0, rel=1e-12)
        assert br2.right == pytest.approx(0.25, rel=1e-12)
        assert br2.bracket == br2.left + br2.right
        assert br2.normalized_mean == pytest.approx(1.0 / 3.0, rel=1e-12)

    def test_midpoint_form_examples(self):
        for alpha in (0.3, 1.0, 2.5):
            assert midpoint_form(lambda x: np.ones_like(x), (0, 1), alpha) == pytest.approx(2.0 / alpha, rel=1e-12)
        assert midpoint_form(_square, (0, 1), 1.0) == pytest.approx(2.0 / 3.0, rel=1e-13)
        v = midpoint_form(np.exp, (0, 2), 0.5)
        br = bracket(np.exp, (0, 2), 0.5)
        assert abs(v * 2.0**0.5 / math.gamma(0.5) - br.bracket) <= 1e-8 * abs(br.bracket)


class TestAgainstIndependentOracles:
    @pytest.mark.parametrize("alpha", ALPHAS)
    @pytest.mark.parametrize("iv", INTERVALS)
    @pytest.mark.parametrize("fname", ["exp", "recip", "abspow:p=1.5", "sqrt"])
    def test_qaws(self, fname, iv, alpha):
        f = parse_function(fname)
        if not f.admits(iv):
            pytest.skip("function undefined on interval")
        g = lambda x: float(f(x))
        assert rl_left(f, iv, alpha) == pytest.approx(qaws_left(g, *iv, alpha), rel=1e-9, abs=1e-12)
        assert rl_right(f, iv, alpha) == pytest.approx(qaws_right(g, *iv, alpha), rel=1e-9, abs=1e-12)

    def test_mpmath_high_precision(self):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 40
        a, b, alpha = mpmath.mpf("0.5"), mpmath.mpf(3), mpmath.mpf("0.35")
        m = (a + b) / 2
        exact = mpmath.quad(lambda t: (b - t) ** (alpha - 1) * mpmath.sqrt(t), [a, m, b]) / mpmath.gamma(alpha)
        assert rl_left(np.sqrt, (0.5, 3.0), 0.35) == pytest.approx(float(exact), rel=1e-12)


class TestProperties:
    @pytest.mark.parametrize("alpha", ALPHAS)
    @pytest.mark.parametrize("iv", INTERVALS)
    def test_dual_path_identity(self, corpus, iv, alpha):
        for f in corpus:
            if not f.admits(iv):
                continue
            br = bracket(f, iv, alpha)
            mp = midpoint_form(f, iv, alpha)
            length = iv[1] - iv[0]
            assert abs(mp * length**alpha / math.gamma(alpha) - br.bracket) <= 1e-8 * max(1.0, abs(br.bracket))

    def test_alpha_one_is_classical_integral(self, corpus):
        for f in corpus:
            iv = f.domain
            exact, _ = integrate.quad(lambda x: float(f(x)), iv.a, iv.b, epsabs=1e-14, epsrel=1e-13)
            assert rl_left(f, iv, 1.0) == pytest.approx(exact, rel=1e-10)
            assert rl_right(f, iv, 1.0) == pytest.approx(exact, rel=1e-10)

    @pytest.mark.parametrize("alpha", [0.25, 1.0, 2.5])
    def test_reflection(self, corpus, alpha):
        for f in corpus:
            iv = f.domain
            reflected = lambda x, f=f, s=iv.a + iv.b: f(s - x)
            assert rl_left(f, iv, alpha) == pytest.approx(rl_right(reflected, iv, alpha), rel=1e-10, abs=1e-14)

    @pytest.mark.parametrize("alpha", ALPHAS + (10.0, 40.0))
    @pytest.mark.parametrize("iv", INTERVALS + ((-3.0, -1.0),))
    @pytest.mark.parametrize("c", [1.0, 0.3, 7.5])
    def test_constant_exactness(self, c, iv, alpha):
        br = bracket(lambda x: np.full_like(x, c), iv, alpha)
        assert abs(br.normalized_mean - c) <= 1e-12 * max(1.0, c)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_linearity(self, corpus, alpha):
        iv = (1.0, 2.0)
        fs = [f for f in corpus if f.admits(iv)]
        for f, g in zip(fs, fs[1:]):
            both = bracket(lambda x: f(x) + g(x), iv, alpha).bracket
            sep = bracket(f, iv, alpha).bracket + bracket(g, iv, alpha).bracket
            assert both == pytest.approx(sep, rel=1e-10)

    def test_nonnegative_f_gives_nonnegative_fields(self, corpus):
        for f in corpus:
            br = bracket(f, f.domain, 0.4)
            assert min(br.left, br.right, br.bracket, br.normalized_mean) >= 0

    def test_negative_left_endpoint_is_allowed(self):
        # the operators themselves need no sign restriction on a
        v = rl_left(lambda x: np.ones_like(x), (-2.0, -1.0), 0.5)
        assert v == pytest.approx(1.0 / math.gamma(1.5), rel=1e-12)
