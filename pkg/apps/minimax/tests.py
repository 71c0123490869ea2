import numpy as np
from django.test import SimpleTestCase, override_settings, tag

from Potentia.exceptions import DomainError, ExchangeCyclingError, MonotonicityError
from apps.intervals.sets import normalize
from apps.minimax.remez import PowerTarget, Reference, RemezEngine
from apps.minimax.services import (
    MinimaxProblem, check_monotone, en_sequence, remez, remez_sweep,
)
from apps.minimax.tasks import remez_degree_task, run_sweep

SEGMENT = normalize([(-1, 1)])
TWO_BANDS = normalize([(-1, -0.5), (0.5, 1)])
THREE_BANDS = normalize([(-1, -0.3), (0, 0.2), (0.5, 1)])


class RemezExamplesTests(SimpleTestCase):

    def test_abs_degree_one(self):
        problem = MinimaxProblem(SEGMENT, 0.0, 1.0, 1)
        result = remez(problem)
        self.assertAlmostEqual(result.error, 0.5, delta=1e-9)
        np.testing.assert_allclose(result.coefficients(np.array([-0.7, 0.0, 0.4])), 0.5, atol=1e-9)
        np.testing.assert_allclose(result.alternation_points, [-1.0, 0.0, 1.0], atol=1e-9)

    def test_abs_degree_two(self):
        problem = MinimaxProblem(SEGMENT, 0.0, 1.0, 2)
        result = remez(problem)
        self.assertAlmostEqual(result.error, 0.125, delta=1e-9)
        xs = np.linspace(-1, 1, 11)
        np.testing.assert_allclose(result.coefficients(xs), xs ** 2 + 0.125, atol=1e-8)
        self.assertEqual(len(result.alternation_points), 4)
        for x in result.alternation_points:
            self.assertLess(min(abs(x - c) for c in (-1, -0.5, 0, 0.5, 1)), 1e-6)

    def test_even_integer_alpha(self):
        result = remez(MinimaxProblem(SEGMENT, 0.0, 2.0, 2))
        self.assertEqual(result.error, 0.0)
        self.assertEqual(result.iterations, 0)
        np.testing.assert_allclose(result.coefficients(np.array([-0.5, 0.3])), [0.25, 0.09], atol=1e-15)

    def test_bracket(self):
        result = remez(MinimaxProblem(TWO_BANDS, 0.75, 0.5, 6))
        low, high = result.bracket
        self.assertLessEqual(low, high)
        self.assertLess(high / low - 1, 1e-9)

    def test_preconditions(self):
        with self.assertRaises(DomainError):
            MinimaxProblem(TWO_BANDS, 0.0, 1.0, 2)
        with self.assertRaises(DomainError):
            MinimaxProblem(SEGMENT, 0.0, 0.0, 2)
        with self.assertRaises(DomainError):
            remez(MinimaxProblem(SEGMENT, 0.0, 1.0, 2), tol=1e-15)
        with self.assertRaises(DomainError):
            remez(MinimaxProblem(SEGMENT, 0.0, 1.0, 20), grid_points_per_band=50)


class RemezPropertyTests(SimpleTestCase):

    def test_equioscillation_certificate(self):
        for E, x0, alpha, n in ((TWO_BANDS, 0.75, 1.0, 8), (THREE_BANDS, 0.1, 0.5, 7), (SEGMENT, 0.3, 3.0, 10)):
            problem = MinimaxProblem(E, x0, alpha, n)
            result = remez(problem)
            pts = np.array(result.alternation_points)
            self.assertEqual(len(pts), n + 2)
            self.assertTrue(np.all(np.diff(pts) > 0))
            self.assertTrue(all(E.contains(x) for x in pts))
            r = result.residual(problem, pts)
            self.assertTrue(np.all(np.sign(r[1:]) == -np.sign(r[:-1])))
            np.testing.assert_allclose(np.abs(r), result.error, rtol=1e-6)
            self.assertGreaterEqual(np.min(np.abs(r)), (1 - 1e-6) * result.error)

    def test_set_monotonicity(self):
        for n in (2, 5, 8):
            small = remez(MinimaxProblem(TWO_BANDS, 0.75, 1.0, n)).error
            big = remez(MinimaxProblem(SEGMENT, 0.75, 1.0, n)).error
            self.assertLessEqual(small, big + 1e-10)

    def test_scaling_covariance(self):
        s, t, alpha = 2.0, 1.0, 1.5
        base = remez(MinimaxProblem(TWO_BANDS, 0.75, alpha, 6)).error
        scaled = remez(MinimaxProblem(TWO_BANDS.affine(s, t), s * 0.75 + t, alpha, 6)).error
        self.assertAlmostEqual(scaled / (s ** alpha * base), 1.0, delta=1e-8)

    def test_symmetric_residual_is_even(self):
        xs = np.linspace(0.01, 1, 200)
        for n in (2, 6):
            problem = MinimaxProblem(SEGMENT, 0.0, 1.0, n)
            result = remez(problem, tol=1e-13)
            np.testing.assert_allclose(result.residual(problem, xs), result.residual(problem, -xs), atol=1e-10)

    def test_symmetric_even_degrees(self):
        # парна f на симетричній E: наївна симетрична опора дає h = 0
        for n in (10, 20, 40, 56):
            problem = MinimaxProblem(SEGMENT, 0.0, 1.0, n)
            result = remez(problem)
            pts = np.array(result.alternation_points)
            self.assertEqual(len(pts), n + 2)
            r = result.residual(problem, pts)
            self.assertTrue(np.all(np.sign(r[1:]) == -np.sign(r[:-1])))
            np.testing.assert_allclose(np.abs(r), result.error, rtol=1e-6)
            if n == 10:
                self.assertAlmostEqual(result.error, 0.027845118553731063, delta=1e-9)

    def test_single_point_exchange_keeps_alternation(self):
        engine = RemezEngine(PowerTarget(0.0, 1.0), 1, (-1.0, 1.0), 1e-10, 10, 60)
        ref = Reference(np.array([-1.0, 0.0, 1.0]), np.zeros(2), 0.0)
        grid = np.linspace(-1.0, 1.0, 9)
        r = np.zeros(9)
        r[2] = -0.3
        new = engine.single_exchange(grid, r, ref)
        np.testing.assert_allclose(new, [-1.0, -0.5, 1.0])
        r[2] = 0.3
        np.testing.assert_allclose(engine.single_exchange(grid, r, ref), [-0.5, 0.0, 1.0])
        r[:] = 0.0
        r[0] = 0.5
        with self.assertRaises(ExchangeCyclingError):
            engine.single_exchange(grid, r, ref)


class SequenceTests(SimpleTestCase):

    def test_first_degrees(self):
        seq = en_sequence(SEGMENT, 0.0, 1.0, [1, 2])
        self.assertEqual([n for n, _ in seq], [1, 2])
        self.assertAlmostEqual(seq[0][1], 0.5, delta=1e-9)
        self.assertAlmostEqual(seq[1][1], 0.125, delta=1e-9)

    def test_odd_degree_stagnation(self):
        seq = en_sequence(SEGMENT, 0.0, 1.0, [2, 3])
        self.assertAlmostEqual(seq[0][1], 0.125, delta=1e-9)
        self.assertAlmostEqual(seq[1][1], 0.125, delta=1e-9)

    def test_even_alpha_zeros(self):
        seq = en_sequence(SEGMENT, 0.2, 4.0, [4, 5, 6])
        self.assertEqual([e for _, e in seq], [0.0, 0.0, 0.0])

    def test_monotone(self):
        seq = en_sequence(THREE_BANDS, 0.1, 1.0, [2, 3, 4, 5, 6, 7, 8])
        for (_, a), (_, b) in zip(seq, seq[1:]):
            self.assertLessEqual(b, a + 1e-12)

    def test_monotone_check_raises(self):
        with self.assertRaises(MonotonicityError):
            check_monotone([{"n": 2, "error": 0.1}, {"n": 3, "error": 0.2}])

    def test_monotone_check_uses_bracket(self):
        # E_3 = E_2 для |x|: незалежні прогони можуть розійтися на точність вирівнювання
        rows = [
            {"n": 2, "error": 0.125 + 1e-13, "levelled": 0.125 - 1e-11},
            {"n": 3, "error": 0.125 + 5e-12, "levelled": 0.125 - 1e-11},
        ]
        check_monotone(rows)
        rows[1]["levelled"] = 0.125 + 2e-12
        with self.assertRaises(MonotonicityError):
            check_monotone(rows)

    def test_degrees_must_increase(self):
        with self.assertRaises(DomainError):
            remez_sweep(SEGMENT, 0.0, 1.0, [4, 2])


class SweepTests(SimpleTestCase):

    def test_task_payload(self):
        row = remez_degree_task("-1,1", 0.0, 1.0, 2)
        self.assertEqual(row["n"], 2)
        self.assertAlmostEqual(row["error"], 0.125, delta=1e-9)
        self.assertIn("iterations", row)
        self.assertLessEqual(row["levelled"], row["error"] * (1 + 1e-12))

    @override_settings(POTENTIA={"SWEEP_BACKEND": "local"})
    def test_local_sweep_keeps_order(self):
        jobs = [{"spec": "-1,1", "x0": 0.0, "alpha": 1.0, "degree": n} for n in (2, 1)]
        rows = run_sweep(remez_degree_task, jobs)
        self.assertEqual([row["n"] for row in rows], [2, 1])


@tag("slow")
class HighDegreeTests(SimpleTestCase):

    def test_equioscillation_up_to_120(self):
        for n in (10, 21, 40, 61, 80, 100, 120):
            problem = MinimaxProblem(SEGMENT, 0.0, 1.0, n)
            result = remez(problem)
            pts = np.array(result.alternation_points)
            self.assertEqual(len(pts), n + 2)
            r = result.residual(problem, pts)
            self.assertTrue(np.all(np.sign(r[1:]) == -np.sign(r[:-1])))
            np.testing.assert_allclose(np.abs(r), result.error, rtol=1e-6)

    def test_default_ladder(self):
        degrees = [20, 28, 40, 56, 80, 112]
        seq = en_sequence(SEGMENT, 0.0, 1.0, degrees)
        self.assertEqual([n for n, _ in seq], degrees)
        rates = [n * e for n, e in seq]
        self.assertTrue(all(0.27 < v < 0.2802 for v in rates))
