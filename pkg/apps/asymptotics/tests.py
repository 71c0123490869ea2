import math

import numpy as np
from django.test import SimpleTestCase, tag

from Potentia.exceptions import DomainError, ExtrapolationError
from apps.asymptotics.services import extrapolate_rate, sigma_alpha, vt_check
from apps.intervals.sets import normalize

SEGMENT = normalize([(-1, 1)])
TWO_BANDS = normalize([(-1, -0.5), (0.5, 1)])


class ExtrapolationTests(SimpleTestCase):

    def test_exact_model(self):
        samples = [(n, 0.3 + 1.0 / n) for n in (10, 20, 40, 80)]
        limit, residual = extrapolate_rate(samples)
        self.assertAlmostEqual(limit, 0.3, delta=1e-12)
        self.assertLess(residual, 1e-12)

    def test_constant(self):
        limit, _ = extrapolate_rate([(n, 0.7) for n in (4, 8, 12, 16, 20)])
        self.assertAlmostEqual(limit, 0.7, delta=1e-12)

    def test_noisy_synthetic(self):
        rng = np.random.default_rng(7)
        ns = [20, 28, 40, 56, 80, 112]
        samples = [(n, 0.28 + 0.1 / n + 0.5 / n ** 2 + 1e-4 * rng.standard_normal()) for n in ns]
        limit, _ = extrapolate_rate(samples)
        self.assertAlmostEqual(limit, 0.28, delta=2e-3)

    def test_degenerate(self):
        with self.assertRaises(ExtrapolationError):
            extrapolate_rate([(10, 0.1)] * 5)
        with self.assertRaises(ExtrapolationError):
            extrapolate_rate([(10, 0.1), (20, 0.2), (30, 0.3)])


class SigmaTests(SimpleTestCase):

    def test_single_sample(self):
        report = sigma_alpha(1.0, [2])
        self.assertEqual(report.samples[0][0], 2)
        self.assertAlmostEqual(report.samples[0][1], 0.25, delta=1e-9)
        self.assertFalse(report.extrapolated)

    def test_rejects_even_alpha_and_odd_degrees(self):
        with self.assertRaises(DomainError):
            sigma_alpha(2.0, [4, 6, 8, 10])
        with self.assertRaises(DomainError):
            sigma_alpha(1.0, [4, 5, 6, 8])

    def test_vt_rejects_endpoint_pole(self):
        with self.assertRaises(DomainError):
            vt_check(SEGMENT, 1.0, 1.0, [4, 6, 8, 10])


@tag("slow")
class BernsteinConstantTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.sigma1 = sigma_alpha(1.0)

    def test_sigma_one(self):
        self.assertAlmostEqual(self.sigma1.extrapolated_limit, 0.28017, delta=1e-3)

    def test_nested_windows_agree(self):
        low = sigma_alpha(1.0, list(range(20, 81, 2)))
        high = sigma_alpha(1.0, list(range(40, 121, 2)))
        self.assertLess(abs(low.extrapolated_limit - high.extrapolated_limit), 1e-3)

    def test_rate_increases_toward_limit(self):
        values = [v for _, v in self.sigma1.samples]
        self.assertTrue(all(b >= a - 1e-10 for a, b in zip(values, values[1:])))
        self.assertLessEqual(max(values), self.sigma1.extrapolated_limit + 1e-3)

    def test_sigma_three(self):
        report = sigma_alpha(3.0)
        self.assertGreater(report.extrapolated_limit, 0.0)
        self.assertLess(report.fit_residual, 1e-3 * report.extrapolated_limit)

    def test_vt_identity_case(self):
        report = vt_check(SEGMENT, 0.0, 1.0, sigma=self.sigma1)
        self.assertAlmostEqual(report.h, 1.0, delta=1e-12)
        self.assertLess(report.relative_gap, 1e-2)

    def test_vt_off_center(self):
        report = vt_check(SEGMENT, 0.6, 1.0, sigma=self.sigma1)
        self.assertAlmostEqual(report.rhs, self.sigma1.extrapolated_limit / 1.25, delta=1e-12)
        self.assertLess(abs(report.lhs_limit / report.rhs - 1), 1e-2)

    def test_vt_two_bands(self):
        report = vt_check(TWO_BANDS, 0.75, 1.0, sigma=self.sigma1)
        self.assertAlmostEqual(report.h, math.pi * 0.645648, delta=1e-5)
        self.assertLess(abs(report.lhs_limit / report.rhs - 1), 2e-2)

    def test_vt_gap_shrinks_with_ladder(self):
        short = vt_check(SEGMENT, 0.6, 1.0, [10, 14, 20, 28], sigma=self.sigma1)
        long = vt_check(SEGMENT, 0.6, 1.0, sigma=self.sigma1)
        self.assertLessEqual(long.relative_gap, short.relative_gap + 1e-3)

    def test_vt_affine_rescaling(self):
        s, t = 2.0, 1.0
        base = vt_check(TWO_BANDS, 0.75, 1.0, [20, 28, 40, 56], sigma=self.sigma1)
        moved = vt_check(TWO_BANDS.affine(s, t), s * 0.75 + t, 1.0, [20, 28, 40, 56], sigma=self.sigma1)
        self.assertAlmostEqual(moved.lhs_limit / (s * base.lhs_limit), 1.0, delta=1e-6)
        self.assertAlmostEqual(moved.relative_gap, base.relative_gap, delta=1e-6)
