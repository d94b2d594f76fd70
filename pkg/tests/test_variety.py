"""Variety computation, evaluation matrices, and Vandermonde reports."""

import math
from fractions import Fraction as F

import pytest

import extremal_moments as em
from extremal_moments.polycore import InputError, Polynomial


SQRT6 = math.sqrt(6.0)
SQRT15 = math.sqrt(15.0)


def kernel_of(beta):
    return em.rank_kernel(em.build_moment_matrix(beta)).kernel


class TestComputeVariety:
    def test_parabola_circle_points(self, ex15):
        report = em.compute_variety(kernel_of(ex15))
        assert report.status == "Finite"
        assert report.v == 4
        xs = sorted(float(w[0]) for w in report.points)
        assert xs == pytest.approx(
            [-2.0 - SQRT6, -0.5, -0.5, -2.0 + SQRT6], abs=1e-9)
        ys = sorted(float(w[1]) for w in report.points)
        assert ys == pytest.approx(
            [-SQRT15 / 2.0, 0.0, 0.0, SQRT15 / 2.0], abs=1e-9)

    def test_points_satisfy_kernel(self, ex15):
        kernel = kernel_of(ex15)
        report = em.compute_variety(kernel)
        for p in kernel:
            for w in report.points:
                assert abs(float(p.evaluate(w))) < 1e-9

    def test_hyperbola_is_infinite(self, ex42):
        report = em.compute_variety(kernel_of(ex42))
        assert report.status == "Infinite"
        assert report.v == math.inf
        assert report.witness is not None
        assert report.witness.terms == {(0, 0): F(-1), (1, 1): F(1)}

    def test_cubic_curve_seven_points(self, ex44):
        report = em.compute_variety(kernel_of(ex44))
        assert report.status == "Finite"
        assert report.v == 7
        xs = sorted(float(w[0]) for w in report.points)
        expected = [-8.367479063712, -1.729903459921, -0.996357434703,
                    0.0, 0.996357434703, 1.729903459921, 8.367479063712]
        assert xs == pytest.approx(expected, abs=1e-9)
        # Zero is hit exactly during isolation; the surds are refined.
        by_x = dict(zip((float(w[0]) for w in report.points),
                        report.exact_mask))
        assert by_x[0.0] is True
        assert sum(1 for flag in report.exact_mask if flag) == 1

    def test_coprime_univariate_kernel_is_empty(self):
        kernel = [Polynomial(1, {(1,): F(1), (0,): F(-1)}),
                  Polynomial(1, {(1,): F(1), (0,): F(-2)})]
        report = em.compute_variety(kernel)
        assert report.status == "Finite"
        assert report.points == ()
        assert report.v == 0

    def test_vertical_line_atoms_exact(self):
        # Atoms on the line x = 0: the lowest-degree kernel pair (x, x^2) is
        # y-free, so Res_y degenerates to a constant; the gcd fallback must
        # still recover both points.
        beta = em.beta_from_atoms([(F(0), F(0)), (F(0), F(-2))],
                                  [F(2), F(1, 8)], degree=6)
        report = em.compute_variety(kernel_of(beta))
        assert report.status == "Finite"
        assert sorted(report.points) == [(F(0), F(-2)), (F(0), F(0))]
        assert all(report.exact_mask)

    def test_vertical_line_atoms_float(self):
        beta = em.beta_from_atoms([(F(0), F(0)), (F(0), F(-2))],
                                  [F(2), F(1, 8)], degree=6)
        beta_f = em.Multisequence(2, 6, {k: float(v)
                                         for k, v in beta.values.items()})
        report = em.compute_variety(kernel_of(beta_f))
        assert report.status == "Finite"
        got = sorted((round(x, 9), round(y, 9)) for x, y in report.points)
        assert got == [(0.0, -2.0), (0.0, 0.0)]

    def test_coprime_y_free_pair_is_empty(self):
        kernel = [Polynomial(2, {(1, 0): F(1)}),
                  Polynomial(2, {(1, 0): F(1), (0, 0): F(-1)})]
        report = em.compute_variety(kernel)
        assert report.status == "Finite"
        assert report.points == ()

    def test_float_near_multiple_root_is_unknown(self):
        # (x - 1)^2 in float mode: the isolator cannot certify simplicity.
        kernel = [Polynomial(1, {(0,): 1.0, (1,): -2.0, (2,): 1.0})]
        report = em.compute_variety(kernel)
        assert report.status == "Unknown"
        assert report.reason is not None

    def test_rejects_unsupported_dimension(self):
        kernel = [Polynomial(3, {(1, 0, 0): F(1)})]
        with pytest.raises(InputError):
            em.compute_variety(kernel)

    def test_rejects_empty_and_zero(self):
        with pytest.raises(ValueError):
            em.compute_variety([])
        with pytest.raises(ValueError):
            em.compute_variety([Polynomial(2, {})])


class TestBivariateElimination:
    def test_gcd_extracts_common_factor(self):
        common = Polynomial(2, {(1, 1): F(1), (0, 0): F(-1)})  # xy - 1
        a = common * Polynomial(2, {(1, 0): F(1), (0, 1): F(1)})
        b = common * Polynomial(2, {(1, 0): F(1), (0, 1): F(-1)})
        g = em.bivariate_gcd(a, b)
        # Normalized up to a rational scale: proportional to xy - 1.
        lead = g.coefficient((1, 1))
        assert lead != 0
        scaled = g.scale(F(1) / lead)
        assert scaled.terms == common.terms

    def test_gcd_of_coprime_is_constant(self):
        a = Polynomial(2, {(1, 0): F(1)})       # x
        b = Polynomial(2, {(0, 1): F(1), (0, 0): F(-1)})  # y - 1
        g = em.bivariate_gcd(a, b)
        assert g.degree == 0

    def test_resultant_eliminates_y(self):
        p = Polynomial(2, {(0, 1): F(1), (2, 0): F(-1)})  # y - x^2
        q = Polynomial(2, {(0, 2): F(1), (1, 0): F(-1)})  # y^2 - x
        coeffs = em.resultant_eliminate_y(p, q)
        assert len(coeffs) - 1 == 4

        def ev(x):
            return sum(c * x**i for i, c in enumerate(coeffs))

        assert ev(F(0)) == 0
        assert ev(F(1)) == 0
        assert ev(F(2)) != 0


class TestEvalMatrices:
    def test_build_w_rows_and_columns(self):
        w = em.build_W([(F(1), F(2)), (F(3), F(4))], 2)
        assert w.monomials == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
        assert w.rows[0] == (1, 1, 2, 1, 2, 4)
        assert w.rows[1] == (1, 3, 4, 9, 12, 16)
        assert w.is_exact

    def test_build_w_validations(self):
        with pytest.raises(ValueError):
            em.build_W([], 2)
        with pytest.raises(ValueError):
            em.build_W([(F(1), F(2)), (F(3),)], 2)

    def test_hilbert_function_square_grid(self):
        pts = [(F(0), F(0)), (F(1), F(0)), (F(0), F(1)), (F(1), F(1))]
        assert em.hilbert_function(pts, 0) == 1
        assert em.hilbert_function(pts, 1) == 3
        assert em.hilbert_function(pts, 2) == 4
        assert em.hilbert_function(pts, 3) == 4

    def test_rank_w_equals_point_count_when_separated(self, ex15):
        report = em.compute_variety(kernel_of(ex15))
        w = em.build_W(report.points, 2)
        assert em.eval_matrix_rank(w) == 4
        # Degree-4 evaluations cannot exceed the number of points.
        assert em.hilbert_function(report.points, 4) == 4

    def test_injectivity_holds_on_recovered_variety(self, ex15):
        report = em.rank_kernel(em.build_moment_matrix(ex15))
        variety = em.compute_variety(report.kernel)
        verdict = em.injectivity_check(report, variety.points)
        assert verdict.injective
        assert verdict.rank_m == 4
        assert verdict.rank_w == 4
        assert verdict.witness is None

    def test_injectivity_fails_with_too_few_points(self):
        beta = em.beta_from_atoms([(F(0),), (F(1),), (F(2),)],
                                  [F(1), F(1), F(1)], degree=4)
        report = em.rank_kernel(em.build_moment_matrix(beta))
        assert report.rank == 3
        verdict = em.injectivity_check(report, [(F(0),), (F(1),)])
        assert not verdict.injective
        assert verdict.rank_w == 2
        assert verdict.witness is not None
        assert verdict.witness.evaluate((F(0),)) == 0
        assert verdict.witness.evaluate((F(1),)) == 0


class TestVandermonde:
    def test_two_by_two_exact(self):
        report = em.vandermonde_VB([(0,), (1,)], [(F(2),), (F(3),)])
        assert report.rows == ((1, 1), (2, 3))
        assert report.det == 1
        assert report.invertible

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValueError):
            em.vandermonde_VB([(0,)], [(F(2),), (F(3),)])

    def test_curve_scenario_determinant(self):
        s13 = math.sqrt(13.0)
        points = [(-2.0, -8.0), (0.0, 0.0), (2.0, 8.0), (1.0, 1.0),
                  (-0.5 + s13 / 2, -5.0 + 2 * s13),
                  (-0.5 - s13 / 2, -5.0 - 2 * s13),
                  (-1.0, -1.0), (0.5, 0.125)]
        basis = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1),
                 (1, 2))
        report = em.vandermonde_VB(basis, points)
        expected = 98415.0 / 4.0 * s13
        assert abs(abs(float(report.det)) - expected) <= 1e-9 * expected
        assert report.invertible


class TestPointsIO:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "pts.json"
        points = [(F(1, 2), F(-3)), (F(0), F(7, 5))]
        em.dump_points(points, path)
        back = em.load_points(path, mode="exact")
        assert back == [tuple(w) for w in points]

    def test_float_round_trip(self, tmp_path):
        path = tmp_path / "pts.json"
        em.dump_points([(0.5, -1.25)], path)
        back = em.load_points(path)
        assert back[0][0] == pytest.approx(0.5)
        assert back[0][1] == pytest.approx(-1.25)

    def test_load_rejects_malformed(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(InputError):
            em.load_points(bad)
        missing = tmp_path / "missing_key.json"
        missing.write_text('{"points": [["1"]]}')
        with pytest.raises(InputError):
            em.load_points(missing)
        arity = tmp_path / "arity.json"
        arity.write_text('{"d": 2, "points": [["1"]]}')
        with pytest.raises(InputError):
            em.load_points(arity)
