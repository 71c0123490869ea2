import cmath
import math

import numpy as np
from django.test import SimpleTestCase
from scipy import integrate

from Potentia.exceptions import DomainError, QuadratureError
from apps.equilibrium.services import (
    capacity_of, density_at, green_at, green_on_ray, mass_of, potential_at,
    _check_gap_residuals, solve_equilibrium,
)
from apps.intervals.conf import potentia_setting
from apps.intervals.sets import normalize

SEGMENT = normalize([(-1, 1)])
TWO_BANDS = normalize([(-1, -0.5), (0.5, 1)])
THREE_BANDS = normalize([(-1, -0.3), (0, 0.2), (0.5, 1)])


def green_segment(z):
    """g для [-1, 1]: log|z + sqrt(z^2 - 1)| з гілкою |.| >= 1."""
    root = cmath.sqrt(z * z - 1)
    return math.log(max(abs(z + root), abs(z - root)))


def green_two_bands(z, a=0.5):
    """g для [-1,-a] U [a,1] = g_{[a^2, 1]}(z^2) / 2."""
    u = (2 * z * z - a * a - 1) / (1 - a * a)
    root = cmath.sqrt(u * u - 1)
    return 0.5 * math.log(max(abs(u + root), abs(u - root)))


class SolveTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.seg = solve_equilibrium(SEGMENT)
        cls.two = solve_equilibrium(TWO_BANDS)
        cls.three = solve_equilibrium(THREE_BANDS)

    def test_single_band_is_arcsine(self):
        np.testing.assert_allclose(self.seg.q_coeffs, [1.0])
        self.assertEqual(self.seg.gap_zeros, ())

    def test_symmetric_two_bands_gap_poly(self):
        np.testing.assert_allclose(self.two.q_coeffs, [0.0, 1.0], atol=1e-12)
        self.assertAlmostEqual(self.two.gap_zeros[0], 0.0, delta=1e-13)

    def test_three_bands_gap_conditions(self):
        eq = self.three
        coeffs = eq.q_coeffs
        self.assertEqual(len(coeffs), 3)
        self.assertAlmostEqual(coeffs[-1], 1.0, delta=1e-12)
        endpoints = THREE_BANDS.endpoints
        for j, (b, a_next) in enumerate(THREE_BANDS.gaps):
            self.assertTrue(b < eq.gap_zeros[j] < a_next)
            other = np.delete(endpoints, [2 * j + 1, 2 * j + 2])

            def smooth(t):
                return float(eq.q(t)) / math.sqrt(abs(np.prod(t - other)))

            value, _ = integrate.quad(smooth, b, a_next, weight="alg", wvar=(-0.5, -0.5),
                                      epsabs=1e-14, epsrel=1e-13)
            self.assertLess(abs(value), 1e-10)

    def test_total_mass_is_one(self):
        for eq in (self.seg, self.two, self.three):
            self.assertAlmostEqual(float(np.sum(eq.weights)), 1.0, delta=1e-10)
            self.assertAlmostEqual(mass_of(eq, -10, 10), 1.0, delta=1e-10)

    def test_solve_tolerances(self):
        self.assertLessEqual(potentia_setting("GAP_RESIDUAL_TOL"), 1e-10)
        self.assertLessEqual(potentia_setting("MASS_TOL"), 1e-10)
        for eq in (self.two, self.three):
            self.assertLess(_check_gap_residuals(eq.set, eq.gap_poly, eq.quad_points), 1e-10)

    def test_capacity_bound(self):
        self.assertAlmostEqual(self.seg.capacity, SEGMENT.diameter / 4, delta=1e-12)
        for eq in (self.two, self.three):
            self.assertLess(eq.capacity, eq.set.diameter / 4)

    def test_rejects_few_quad_points(self):
        with self.assertRaises(DomainError):
            solve_equilibrium(SEGMENT, quad_points=16)


class DensityAndMassTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.seg = solve_equilibrium(SEGMENT)
        cls.two = solve_equilibrium(TWO_BANDS)

    def test_arcsine_density(self):
        self.assertAlmostEqual(density_at(self.seg, 0.0), 1 / math.pi, delta=1e-12)
        self.assertAlmostEqual(density_at(self.seg, 0.6), 1 / (0.8 * math.pi), delta=1e-12)

    def test_two_band_density(self):
        x = 0.75
        expected = x / (math.pi * math.sqrt((x * x - 0.25) * (1 - x * x)))
        self.assertAlmostEqual(density_at(self.two, x), expected, delta=1e-12)
        self.assertAlmostEqual(expected, 0.645648, delta=1e-6)

    def test_density_closed_forms_on_samples(self):
        rng = np.random.default_rng(1)
        for x in rng.uniform(-0.999, 0.999, 100):
            self.assertAlmostEqual(density_at(self.seg, x), 1 / (math.pi * math.sqrt(1 - x * x)), delta=1e-7)
        for x in rng.uniform(0.501, 0.999, 100) * rng.choice([-1, 1], 100):
            expected = abs(x) / (math.pi * math.sqrt((x * x - 0.25) * (1 - x * x)))
            self.assertAlmostEqual(density_at(self.two, x), expected, delta=1e-7 * max(1.0, expected))

    def test_density_outside_interior(self):
        with self.assertRaises(DomainError):
            density_at(self.seg, 1.0)
        with self.assertRaises(DomainError):
            density_at(self.two, 0.0)

    def test_mass_examples(self):
        self.assertAlmostEqual(mass_of(self.seg, -1, 0), 0.5, delta=1e-12)
        self.assertAlmostEqual(mass_of(self.seg, -1, 0.5), 2 / 3, delta=1e-12)
        self.assertEqual(mass_of(self.two, -0.4, 0.4), 0.0)
        self.assertEqual(mass_of(self.seg, 2, 3), 0.0)

    def test_mass_rejects_reversed(self):
        with self.assertRaises(DomainError):
            mass_of(self.seg, 1, 0)


class CapacityTests(SimpleTestCase):

    def test_segment(self):
        self.assertAlmostEqual(capacity_of(solve_equilibrium(SEGMENT)), 0.5, delta=1e-9)

    def test_unit_segment(self):
        self.assertAlmostEqual(capacity_of(solve_equilibrium(normalize([(0, 1)]))), 0.25, delta=1e-9)

    def test_two_bands(self):
        self.assertAlmostEqual(capacity_of(solve_equilibrium(TWO_BANDS)), math.sqrt(0.75) / 2, delta=1e-8)

    def test_ray_green_matches_closed_form(self):
        eq = solve_equilibrium(SEGMENT)
        self.assertAlmostEqual(green_on_ray(eq, 2.0), math.log(2 + math.sqrt(3)), delta=1e-11)

    def test_scaling_covariance(self):
        s, t = 2.5, 0.3
        eq = solve_equilibrium(THREE_BANDS)
        scaled = solve_equilibrium(THREE_BANDS.affine(s, t))
        self.assertAlmostEqual(capacity_of(scaled), s * capacity_of(eq), delta=1e-9)
        for z in (0.1 + 0.4j, -1.3 + 0.01j, 0.35 + 0.0j, 3 + 2j):
            self.assertAlmostEqual(green_at(scaled, s * z + t), green_at(eq, z), delta=1e-8)


class GreenTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.seg = solve_equilibrium(SEGMENT)
        cls.two = solve_equilibrium(TWO_BANDS)
        cls.three = solve_equilibrium(THREE_BANDS)

    def test_segment_examples(self):
        self.assertAlmostEqual(green_at(self.seg, 1j), math.log(1 + math.sqrt(2)), delta=1e-10)
        self.assertAlmostEqual(green_at(self.seg, 2), math.log(2 + math.sqrt(3)), delta=1e-10)
        self.assertEqual(green_at(self.seg, 0.3), 0.0)

    def test_closed_forms_on_samples(self):
        rng = np.random.default_rng(2)
        zs = rng.uniform(-2, 2, 100) + 1j * rng.uniform(1e-3, 2, 100)
        for z in zs:
            self.assertAlmostEqual(green_at(self.seg, z), green_segment(z), delta=1e-7)
            self.assertAlmostEqual(green_at(self.two, z), green_two_bands(z), delta=1e-7)

    def test_small_heights_above_band(self):
        for y in (1e-8, 1e-6, 1e-4):
            self.assertAlmostEqual(green_at(self.seg, 1j * y) / y, math.asinh(y) / y, delta=1e-6)

    def test_zero_on_set(self):
        for eq in (self.seg, self.two, self.three):
            for x in np.linspace(eq.set.left, eq.set.right, 1000):
                if eq.set.contains(x):
                    self.assertLessEqual(green_at(eq, x), 1e-8)

    def test_positive_in_gaps(self):
        self.assertGreater(green_at(self.two, 0.0), 0.0)
        self.assertAlmostEqual(green_at(self.two, 0.0), green_two_bands(0.0), delta=1e-9)

    def test_harmonic_mean_value(self):
        rng = np.random.default_rng(3)
        angles = 2 * np.pi * np.arange(64) / 64
        for eq in (self.two, self.three):
            for _ in range(20):
                z = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.05, 1.0))
                circle = z + 1e-3 * np.exp(1j * angles)
                mean = np.mean([green_at(eq, w) for w in circle])
                self.assertAlmostEqual(mean, green_at(eq, z), delta=1e-6)

    def test_asymptotics(self):
        eq = self.three
        diffs = []
        for r in (1e3, 1e4):
            z = r * cmath.exp(0.7j)
            diffs.append(abs(green_at(eq, z) - math.log(abs(z)) + eq.log_capacity))
        self.assertLess(diffs[0], 1e-3)
        self.assertLess(diffs[1], diffs[0])

    def test_potential_far_away(self):
        z = 1e6 + 0j
        self.assertAlmostEqual(potential_at(self.seg, z), math.log(1e6), delta=1e-9)

    def test_domain_monotonicity(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            z = complex(rng.uniform(-2, 2), rng.uniform(0.01, 2))
            self.assertGreaterEqual(green_at(self.two, z) - green_at(self.seg, z), -1e-10)
            self.assertGreaterEqual(green_at(self.three, z) - green_at(self.seg, z), -1e-10)


class EndpointGreenTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.seg = solve_equilibrium(SEGMENT)
        cls.two = solve_equilibrium(TWO_BANDS)

    def assertRelative(self, value, expected, rtol):
        self.assertLess(abs(value / expected - 1.0), rtol, f"{value!r} vs {expected!r}")

    def test_segment_above_endpoint(self):
        for y in (1e-10, 1e-11, 1e-12):
            z = complex(1.0, y)
            self.assertRelative(green_at(self.seg, z), cmath.acosh(z).real, 1e-8)
            self.assertRelative(green_at(self.seg, -z.conjugate()), cmath.acosh(z).real, 1e-8)

    def test_segment_real_axis_outside(self):
        for x in (1.000000000001, 1.0000000001, 1.00000001):
            self.assertRelative(green_at(self.seg, x), math.acosh(x), 1e-9)
            self.assertRelative(green_at(self.seg, -x), math.acosh(x), 1e-9)

    def test_two_bands_inner_endpoint(self):
        y = 1e-12
        # u = (2z^2 - a^2 - 1)/(1 - a^2) при z = 0.5 + iy, a = 0.5: -u = 1 + 8y^2/3 - 8iy/3
        expected = 0.5 * cmath.acosh(complex(1.0, -8.0 * y / 3.0)).real
        self.assertRelative(green_at(self.two, complex(0.5, y)), expected, 1e-6)
        self.assertAlmostEqual(expected, 8.165e-7, delta=1e-9)

    def test_matches_potential_away_from_endpoint(self):
        for r in (0.15, 0.19, 0.21, 0.3):
            for angle in (0.3, 1.2, 2.5):
                z = 1.0 + r * cmath.exp(1j * angle)
                self.assertAlmostEqual(green_at(self.seg, z), green_segment(z), delta=1e-9)

    def test_too_close_raises(self):
        with self.assertRaises(QuadratureError):
            green_at(self.seg, complex(1.0, 1e-14))
        with self.assertRaises(QuadratureError):
            green_at(self.two, 0.5 - 5e-14)
        self.assertEqual(green_at(self.seg, 1.0), 0.0)
