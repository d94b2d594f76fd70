"""Consistency checks, signed representations, and the curve-scenario test."""

import math
from fractions import Fraction as F

import pytest

import extremal_moments as em
from extremal_moments.polycore import Polynomial


#: Exact correction polynomial of the curve scenario (vanishes on the eight
#: scenario points; annihilated by a functional iff a measure exists).
H_TERMS = {
    (2, 2): F(1),
    (1, 0): F(6),
    (2, 0): F(-14),
    (0, 1): F(-11, 2),
    (1, 1): F(43, 2),
    (2, 1): F(-1),
    (0, 2): F(-17, 2),
    (1, 2): F(1, 2),
}


def scenario_points_float():
    s13 = math.sqrt(13.0)
    return [(-2.0, -8.0), (0.0, 0.0), (2.0, 8.0), (1.0, 1.0),
            (-0.5 + s13 / 2, -5.0 + 2 * s13),
            (-0.5 - s13 / 2, -5.0 - 2 * s13),
            (-1.0, -1.0), (0.5, 0.125)]


def variety_of(beta):
    report = em.rank_kernel(em.build_moment_matrix(beta))
    return em.compute_variety(report.kernel)


class TestConsistencyCheck:
    def test_consistent_data(self, ex15):
        verdict = em.consistency_check(ex15, variety_of(ex15))
        assert verdict.ok
        assert verdict.status == "Consistent"

    def test_infinite_variety_is_unknown(self, ex42):
        verdict = em.consistency_check(ex42, variety_of(ex42))
        assert verdict.status == "Unknown"
        assert "Infinite" in verdict.reason

    def test_corrupted_data_is_inconsistent(self):
        beta = em.Multisequence(1, 4, {(0,): F(3), (1,): F(3), (2,): F(5),
                                       (3,): F(9), (4,): F(18)})
        points = [(F(0),), (F(1),), (F(2),)]
        verdict = em.consistency_check(beta, points)
        assert verdict.status == "Inconsistent"
        assert verdict.value != 0
        for w in points:
            assert verdict.witness.evaluate(w) == 0

    def test_scenario_measure_data_is_consistent(self, prop61):
        verdict = em.consistency_check(prop61, variety_of(prop61))
        assert verdict.ok

    def test_derivation_data_is_inconsistent(self, thm62_a8_8):
        verdict = em.consistency_check(thm62_a8_8, variety_of(thm62_a8_8))
        assert verdict.status == "Inconsistent"
        assert abs(float(verdict.value)) > 1e-6
        for w in variety_of(thm62_a8_8).points:
            assert abs(float(verdict.witness.evaluate(w))) < 1e-6

    def test_no_points_is_unknown(self):
        beta = em.Multisequence(1, 2, {(0,): F(1), (1,): F(0), (2,): F(1)})
        verdict = em.consistency_check(beta, [])
        assert verdict.status == "Unknown"


class TestSignedRepresentation:
    def test_exact_two_atoms(self):
        beta = em.beta_from_atoms([(F(0),), (F(1),)], [F(2), F(3)], degree=2)
        rep = em.signed_representation(beta, [(F(0),), (F(1),)])
        assert rep.valid
        assert rep.residual == 0.0
        weights = dict(zip(rep.atoms, rep.weights))
        assert weights[(F(0),)] == 2
        assert weights[(F(1),)] == 3

    def test_unit_weights_on_scenario(self, prop61):
        variety = variety_of(prop61)
        rep = em.signed_representation(prop61, variety)
        assert rep.valid
        assert len(rep.weights) == 8
        for wt in rep.weights:
            assert abs(float(wt) - 1.0) < 1e-6

    def test_derivation_part_is_unrepresentable(self, thm62_a8_8):
        rep = em.signed_representation(thm62_a8_8, variety_of(thm62_a8_8))
        assert not rep.valid
        assert rep.residual > 1e-3

    def test_requires_points(self, prop61):
        with pytest.raises(ValueError):
            em.signed_representation(prop61, [])


class TestComputeH:
    def test_matches_known_coefficients(self):
        h = em.compute_h(scenario_points_float())
        for idx in set(h.terms) | set(H_TERMS):
            expected = float(H_TERMS.get(idx, 0))
            assert abs(float(h.coefficient(idx)) - expected) < 1e-9

    def test_vanishes_on_the_points(self):
        points = scenario_points_float()
        h = em.compute_h(points)
        for w in points:
            assert abs(float(h.evaluate(w))) < 1e-6

    def test_point_count_enforced(self):
        with pytest.raises(ValueError):
            em.compute_h(scenario_points_float()[:5])


class TestComputeK:
    def test_measure_data_reproduces_h_exactly(self, prop61):
        k = em.compute_k_from_extension(prop61)
        assert k.terms == H_TERMS
        assert em.riesz(prop61, k) == 0

    def test_derivation_data_gives_different_k(self, thm62_a8_8):
        k = em.compute_k_from_extension(thm62_a8_8)
        assert k.terms != H_TERMS
        # The first equation of the defining system forces a zero value.
        assert em.riesz(thm62_a8_8, k) == 0

    def test_needs_degree_six_planar_data(self, ex15):
        with pytest.raises(ValueError):
            em.compute_k_from_extension(ex15)


class TestReducedTest:
    def test_measure_exists(self, prop61):
        verdict = em.reduced_consistency_test(prop61)
        assert verdict.status == "MeasureExists"
        assert verdict.value == 0
        assert verdict.witness.terms == H_TERMS

    def test_no_measure(self, thm62_a8_8):
        verdict = em.reduced_consistency_test(thm62_a8_8)
        assert verdict.status == "NoMeasure"
        assert abs(float(verdict.value) - (-405.0 / 128.0)) < 1e-12
        assert verdict.reason is not None

    def test_wrong_shape_not_applicable(self, ex15):
        verdict = em.reduced_consistency_test(ex15)
        assert verdict.status == "NotApplicable"
        assert "degree-6" in verdict.reason

    def test_not_psd_not_applicable(self):
        beta = em.beta_from_atoms([(F(0), F(0))], [F(-1)], degree=6)
        verdict = em.reduced_consistency_test(beta)
        assert verdict.status == "NotApplicable"
        assert "PSD" in verdict.reason

    def test_wrong_rank_not_applicable(self):
        atoms = [(F(0), F(0)), (F(1), F(1)), (F(-1), F(-1)), (F(2), F(8))]
        beta = em.beta_from_atoms(atoms, [F(1)] * 4, degree=6)
        verdict = em.reduced_consistency_test(beta)
        assert verdict.status == "NotApplicable"
        assert "rank" in verdict.reason


class TestSimpleZeroCertificate:
    def test_transversal_circle_line(self):
        r1 = Polynomial(2, {(2, 0): F(1), (0, 2): F(1), (0, 0): F(-1)})
        r2 = Polynomial(2, {(0, 1): F(1), (1, 0): F(-1)})
        s = math.sqrt(0.5)
        verdict = em.simple_zero_certificate(r1, r2, [(s, s), (-s, -s)])
        assert verdict.certified
        assert verdict.reasons == ()

    def test_wrong_point_count(self):
        r1 = Polynomial(2, {(2, 0): F(1), (0, 2): F(1), (0, 0): F(-1)})
        r2 = Polynomial(2, {(0, 1): F(1), (1, 0): F(-1)})
        s = math.sqrt(0.5)
        verdict = em.simple_zero_certificate(r1, r2, [(s, s)])
        assert not verdict.certified
        assert any("count" in r for r in verdict.reasons)

    def test_tangential_meeting_rejected(self):
        r1 = Polynomial(2, {(0, 1): F(1), (2, 0): F(-1)})  # y - x^2
        r2 = Polynomial(2, {(0, 1): F(1)})                 # y
        verdict = em.simple_zero_certificate(r1, r2, [(0.0, 0.0)])
        assert not verdict.certified
        assert any("Jacobian" in r for r in verdict.reasons)

    def test_shared_leading_zero_rejected(self):
        r1 = Polynomial(2, {(2, 0): F(1), (0, 2): F(-1)})  # x^2 - y^2
        r2 = Polynomial(2, {(2, 0): F(1), (0, 2): F(-1), (0, 0): F(1)})
        verdict = em.simple_zero_certificate(r1, r2, [])
        assert not verdict.certified
        assert any("infinity" in r for r in verdict.reasons)
