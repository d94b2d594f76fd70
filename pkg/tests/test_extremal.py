"""End-to-end solve: decide existence and recover the atomic measure."""

import math
from fractions import Fraction as F

import pytest

import extremal_moments as em
from extremal_moments.polycore import InputError


SQRT6 = math.sqrt(6.0)
SQRT15 = math.sqrt(15.0)


def sorted_measure(report):
    pairs = sorted(zip(report.measure.atoms, report.measure.densities),
                   key=lambda ar: tuple(float(x) for x in ar[0]))
    atoms = [tuple(float(x) for x in w) for w, _ in pairs]
    densities = [float(r) for _, r in pairs]
    return atoms, densities


class TestSolveMeasure:
    def test_parabola_circle_data(self, ex15):
        report = em.solve_extremal(ex15)
        assert report.status == "Measure"
        assert report.rank == 4
        assert report.v == 4
        atoms, densities = sorted_measure(report)
        expected_atoms = [(-2.0 - SQRT6, 0.0), (-0.5, -SQRT15 / 2),
                          (-0.5, SQRT15 / 2), (-2.0 + SQRT6, 0.0)]
        for got, want in zip(atoms, expected_atoms):
            assert got == pytest.approx(want, abs=1e-9)
        assert densities == pytest.approx(
            [0.014226196675295889, 0.2, 0.2, 0.5857738033247041], abs=1e-9)
        assert report.residual <= 1e-9
        assert len(report.basis) == 4

    def test_cubic_curve_tiny_density(self, ex44):
        report = em.solve_extremal(ex44)
        assert report.status == "Measure"
        assert report.rank == 7
        atoms, densities = sorted_measure(report)
        xs = [w[0] for w in atoms]
        assert xs == pytest.approx(
            [-8.367479063712, -1.729903459921, -0.996357434703, 0.0,
             0.996357434703, 1.729903459921, 8.367479063712], abs=1e-9)
        expected = [3.3378228919111246e-10, 0.0841543943607385,
                    0.2499802206900946, 0.3317307692307692,
                    0.2499802206900946, 0.0841543943607385,
                    3.3378228919111246e-10]
        for got, want in zip(densities, expected):
            assert got == pytest.approx(want, rel=1e-6)
        # The outermost atoms carry a positive but minuscule density.
        assert 0 < densities[0] < 1e-8
        assert 0 < densities[-1] < 1e-8

    def test_curve_scenario_unit_measure(self, prop61):
        report = em.solve_extremal(prop61)
        assert report.status == "Measure"
        assert report.rank == 8
        assert report.v == 8
        for rho in report.measure.densities:
            assert abs(float(rho) - 1.0) < 1e-6

    def test_derivation_data_has_no_measure(self, thm62_a8_8):
        report = em.solve_extremal(thm62_a8_8)
        assert report.status == "NoMeasure"
        assert report.reason == "Inconsistent"
        assert abs(float(report.value) - (-405.0 / 128.0)) < 1e-9
        assert report.witness is not None

    def test_infinite_variety_not_extremal(self, ex42):
        report = em.solve_extremal(ex42)
        assert report.status == "NotExtremal"
        assert report.v == math.inf
        assert report.reason == "infinite variety"
        assert report.witness.terms == {(0, 0): F(-1), (1, 1): F(1)}

    def test_not_psd_is_no_measure(self):
        beta = em.beta_from_atoms([(F(0), F(0))], [F(-1)], degree=2)
        report = em.solve_extremal(beta)
        assert report.status == "NoMeasure"
        assert report.reason == "NotPSD"

    def test_invertible_matrix_not_extremal(self):
        beta = em.beta_from_atoms([(F(0),), (F(1),), (F(2),)],
                                  [F(1), F(1), F(1)], degree=4)
        report = em.solve_extremal(beta)
        assert report.status == "NotExtremal"
        assert report.v == math.inf
        assert "invertible" in report.reason


class TestSolveVariants:
    def test_user_supplied_points(self, ex15):
        points = [(-2.0 - SQRT6, 0.0), (-0.5, -SQRT15 / 2),
                  (-0.5, SQRT15 / 2), (-2.0 + SQRT6, 0.0)]
        report = em.solve_extremal(ex15, points=points)
        assert report.status == "Measure"
        _, densities = sorted_measure(report)
        assert densities == pytest.approx(
            [0.014226196675295889, 0.2, 0.2, 0.5857738033247041], abs=1e-6)

    def test_bogus_point_rejected(self, ex15):
        with pytest.raises(InputError):
            em.solve_extremal(ex15, points=[(1.0, 1.0), (-0.5, -SQRT15 / 2),
                                            (-0.5, SQRT15 / 2),
                                            (-2.0 + SQRT6, 0.0)])

    def test_alternate_basis_gives_same_measure(self, ex15):
        default = em.solve_extremal(ex15)
        other = em.solve_extremal(ex15, basis=((0, 0), (1, 0), (0, 1), (0, 2)))
        assert other.status == "Measure"
        for (wa, ra), (wb, rb) in zip(
                sorted(zip(default.measure.atoms, default.measure.densities),
                       key=lambda ar: tuple(map(float, ar[0]))),
                sorted(zip(other.measure.atoms, other.measure.densities),
                       key=lambda ar: tuple(map(float, ar[0])))):
            assert tuple(map(float, wa)) == pytest.approx(
                tuple(map(float, wb)), abs=1e-12)
            assert float(ra) == pytest.approx(float(rb), abs=1e-9)

    def test_basis_size_enforced(self, ex15):
        with pytest.raises(ValueError):
            em.solve_extremal(ex15, basis=((0, 0), (1, 0)))


class TestVerifyMeasure:
    def test_exact_match(self):
        measure = em.AtomicMeasure(1, ((F(1, 2),),), (F(2),))
        beta = em.beta_from_atoms(measure.atoms, measure.densities, degree=4)
        report = em.verify_measure(beta, measure)
        assert report.ok
        assert report.exact
        assert report.residual == 0.0

    def test_mismatch_reported(self):
        measure = em.AtomicMeasure(1, ((F(1, 2),),), (F(2),))
        beta = em.beta_from_atoms(measure.atoms, (F(3),), degree=4)
        report = em.verify_measure(beta, measure)
        assert not report.ok
        assert not report.exact
        assert report.worst_index is not None

    def test_dimension_mismatch(self, ex15):
        measure = em.AtomicMeasure(1, ((F(0),),), (F(1),))
        with pytest.raises(ValueError):
            em.verify_measure(ex15, measure)


class TestMeasureIO:
    def test_exact_round_trip(self, tmp_path):
        path = tmp_path / "measure.json"
        measure = em.AtomicMeasure(2, ((F(1, 2), F(-3)), (F(0), F(7, 5))),
                                   (F(1, 3), F(2)))
        em.dump_measure(measure, path)
        back = em.load_measure(path, mode="exact")
        assert back == measure

    def test_solver_output_round_trip(self, ex15, tmp_path):
        path = tmp_path / "measure.json"
        report = em.solve_extremal(ex15)
        em.dump_measure(report.measure, path)
        back = em.load_measure(path)
        verification = em.verify_measure(ex15, back)
        assert verification.ok

    def test_load_rejects_malformed(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("[")
        with pytest.raises(InputError):
            em.load_measure(bad)
        missing = tmp_path / "missing.json"
        missing.write_text('{"d": 1}')
        with pytest.raises(InputError):
            em.load_measure(missing)
        arity = tmp_path / "arity.json"
        arity.write_text(
            '{"d": 2, "atoms": [{"point": ["1"], "density": "1"}]}')
        with pytest.raises(InputError):
            em.load_measure(arity)
