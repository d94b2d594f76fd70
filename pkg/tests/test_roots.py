"""Unit tests: univariate real-root location (exact Sturm route and float
route)."""

import random
from fractions import Fraction

import sympy

from extremal_moments import _roots


def F(*args):
    return Fraction(*args)


class TestExactIsolation:
    def test_exact_dyadic_roots_found_exactly(self):
        # p(x) = x (x + 1/2)(x - 1)(x - 2): all roots dyadic.
        p = [F(0), F(1), F(1, 2), F(-5, 2), F(1)]
        roots, multiple = _roots.real_roots_exact(p)
        assert [r.value for r in roots] == [F(-1, 2), F(0), F(1), F(2)]
        assert all(r.exact for r in roots)
        assert not multiple

    def test_irrational_roots_isolated_to_width(self):
        width = F(1, 10**15)
        roots, _ = _roots.real_roots_exact([F(-2), F(0), F(1)], width=width)
        assert len(roots) == 2
        for r in roots:
            assert r.high - r.low <= width
            assert not r.exact
        assert abs(float(roots[1].value) - 2 ** 0.5) < 1e-14

    def test_multiple_root_flagged(self):
        roots, multiple = _roots.real_roots_exact([F(1), F(-2), F(1)])
        assert [r.value for r in roots] == [F(1)]
        assert multiple

    def test_no_real_roots(self):
        roots, _ = _roots.real_roots_exact([F(1), F(0), F(1)])
        assert roots == []

    def test_non_dyadic_rational_root_still_tight(self):
        # 3x - 1: linear case is solved exactly even off the dyadic grid.
        roots, _ = _roots.real_roots_exact([F(-1), F(0), F(-3), F(9)])
        # 9x^3 - 3x^2 - 1 has one real root (irrational)
        assert len(roots) == 1 and not roots[0].exact

    def test_randomized_against_sympy(self):
        rng = random.Random(3)
        x = sympy.symbols("x")
        for _ in range(30):
            deg = rng.randint(1, 5)
            coeffs = [F(rng.randint(-5, 5)) for _ in range(deg)] + [F(1)]
            roots, _ = _roots.real_roots_exact(coeffs, width=F(1, 10**20))
            expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i
                       for i, c in enumerate(coeffs))
            expected = sorted(
                float(r) for r in sympy.Poly(expr, x).real_roots())
            got = sorted(float(r.value) for r in roots)
            assert len(got) == len(expected)
            for a, b in zip(got, expected):
                assert abs(a - b) < 1e-12


class TestFloatRoute:
    def test_real_roots_float_filters_complex(self):
        # (x^2 + 1)(x - 2)
        coeffs = [-2.0, 1.0, -2.0, 1.0]
        roots, isolated = _roots.real_roots_float(coeffs, merge_tol=1e-8)
        assert len(roots) == 1
        assert abs(roots[0] - 2.0) < 1e-9
        assert isolated

    def test_close_roots_merge_and_flag(self):
        # (x - 1)(x - (1 + 1e-12)): below the merge tolerance
        eps = 1e-12
        coeffs = [1.0 + eps, -(2.0 + eps), 1.0]
        roots, isolated = _roots.real_roots_float(coeffs, merge_tol=1e-8)
        assert len(roots) == 1
        assert not isolated


class TestHelpers:
    def test_sturm_sign_count_interval(self):
        chain = _roots.sturm_chain([F(-2), F(0), F(1)])  # x^2 - 2
        assert (_roots.sign_variations(chain, F(0))
                - _roots.sign_variations(chain, F(2))) == 1

    def test_cauchy_bound_is_power_of_two(self):
        bound = _roots.cauchy_bound([F(-2), F(0), F(1)])
        assert bound >= 2
        assert bound.denominator == 1
        n = int(bound)
        assert n & (n - 1) == 0

    def test_squarefree_part(self):
        # (x - 1)^2 (x + 2) = x^3 - 3x + 2
        sf, had = _roots.squarefree_part([F(2), F(-3), F(0), F(1)])
        assert had
        assert _roots.degree(sf) == 2

    def test_poly_divmod_round_trip(self):
        num = [F(2), F(-3), F(0), F(1)]
        den = [F(-1), F(1)]
        quot, rem = _roots.poly_divmod(num, den)
        # num = quot * den + rem
        back = [F(0)] * (len(quot) + len(den) - 1)
        for i, q in enumerate(quot):
            for j, d in enumerate(den):
                back[i + j] += q * d
        for i, r in enumerate(rem):
            back[i] += r
        assert _roots.strip(back) == _roots.strip(num)
