import math

import numpy as np
from django.test import SimpleTestCase
from scipy.optimize import minimize_scalar

from Potentia.exceptions import DomainError, PathError
from apps.comb.services import (
    F_at, build_path, check_comb_identities, comb_geometry, h_at, numeric_derivative,
)
from apps.equilibrium.services import green_at, mass_of, solve_equilibrium
from apps.intervals.sets import chebyshev_grid, normalize

SEGMENT = normalize([(-1, 1)])
TWO_BANDS = normalize([(-1, -0.5), (0.5, 1)])
THREE_BANDS = normalize([(-1, -0.3), (0, 0.2), (0.5, 1)])


class GeometryTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.seg = solve_equilibrium(SEGMENT)
        cls.two = solve_equilibrium(TWO_BANDS)
        cls.three = solve_equilibrium(THREE_BANDS)

    def test_single_band(self):
        geom = comb_geometry(self.seg, 0.0)
        self.assertEqual(geom.u[0], 0.0)
        self.assertAlmostEqual(geom.u[1], math.pi, delta=1e-9)
        self.assertEqual(geom.v, ())
        self.assertAlmostEqual(geom.eta0, math.pi / 2, delta=1e-12)

    def test_two_bands(self):
        geom = comb_geometry(self.two, 0.75)
        self.assertAlmostEqual(geom.u[1], math.pi / 2, delta=1e-9)
        self.assertAlmostEqual(geom.u[2], math.pi, delta=1e-9)
        self.assertAlmostEqual(geom.v[0], green_at(self.two, 0.0), delta=1e-14)
        self.assertAlmostEqual(geom.v[0], 0.5 * math.log(3.0), delta=1e-9)
        self.assertAlmostEqual(geom.eta0, math.pi * (0.5 + mass_of(self.two, 0.5, 0.75)), delta=1e-9)

    def test_base_and_teeth_invariants(self):
        geom = comb_geometry(self.three, 0.1)
        self.assertTrue(all(b > a for a, b in zip(geom.u, geom.u[1:])))
        self.assertAlmostEqual(geom.u[-1], math.pi, delta=1e-9)
        self.assertTrue(all(v > 0 for v in geom.v))
        self.assertTrue(geom.u[1] < geom.eta0 < geom.u[2])

    def test_tooth_height_is_gap_maximum(self):
        for eq in (self.two, self.three):
            geom = comb_geometry(eq, eq.set.bands[0][0] + 0.1)
            for j, (b, a_next) in enumerate(eq.set.gaps):
                grid = np.linspace(b, a_next, 201)
                top = max(green_at(eq, x) for x in grid)
                self.assertLessEqual(top, geom.v[j] + 1e-9)
                best = minimize_scalar(lambda x: -green_at(eq, x), bounds=(b, a_next),
                                       method="bounded", options={"xatol": 1e-10})
                self.assertAlmostEqual(-best.fun, geom.v[j], delta=1e-7)

    def test_rejects_gap_point(self):
        with self.assertRaises(DomainError):
            comb_geometry(self.two, 0.0)
        with self.assertRaises(DomainError):
            comb_geometry(self.seg, 1.0)


class HTests(SimpleTestCase):

    def test_examples(self):
        seg = solve_equilibrium(SEGMENT)
        self.assertAlmostEqual(h_at(seg, 0.0), 1.0, delta=1e-12)
        self.assertAlmostEqual(h_at(seg, 0.6), 1.25, delta=1e-12)
        two = solve_equilibrium(TWO_BANDS)
        self.assertAlmostEqual(h_at(two, 0.75), math.pi * 0.645648, delta=1e-5)


class FTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.seg = solve_equilibrium(SEGMENT)
        cls.seg_geom = comb_geometry(cls.seg, 0.0)
        cls.two = solve_equilibrium(TWO_BANDS)
        cls.two_geom = comb_geometry(cls.two, 0.75)
        cls.three = solve_equilibrium(THREE_BANDS)
        cls.three_geom = comb_geometry(cls.three, 0.1)

    def test_base_point(self):
        self.assertEqual(F_at(self.seg, self.seg_geom, 0.0), complex(self.seg_geom.eta0))
        self.assertAlmostEqual(self.seg_geom.eta0, math.pi / 2, delta=1e-12)

    def test_segment_examples(self):
        self.assertAlmostEqual(F_at(self.seg, self.seg_geom, 1j).imag, math.log(1 + math.sqrt(2)), delta=1e-8)
        w = F_at(self.seg, self.seg_geom, 0.5)
        self.assertAlmostEqual(w.imag, 0.0, delta=1e-8)
        self.assertAlmostEqual(w.real, 2 * math.pi / 3, delta=1e-8)

    def test_imag_part_is_green(self):
        rng = np.random.default_rng(5)
        for eq, geom in ((self.two, self.two_geom), (self.three, self.three_geom)):
            for _ in range(100):
                z = complex(rng.uniform(-1.5, 1.5), rng.uniform(1e-3, 1.5))
                self.assertAlmostEqual(F_at(eq, geom, z).imag, green_at(eq, z), delta=1e-7)

    def test_real_and_nondecreasing_on_set(self):
        eq, geom = self.three, self.three_geom
        values = [F_at(eq, geom, x) for x in chebyshev_grid(eq.set, 40)]
        self.assertLess(max(abs(w.imag) for w in values), 1e-8)
        reals = np.array([w.real for w in values])
        self.assertTrue(np.all(np.diff(reals) >= -1e-10))

    def test_band_ends_map_to_base(self):
        eq, geom = self.two, self.two_geom
        self.assertAlmostEqual(abs(F_at(eq, geom, -0.5) - geom.u[1]), 0.0, delta=1e-8)
        self.assertAlmostEqual(abs(F_at(eq, geom, 0.5) - geom.u[1]), 0.0, delta=1e-8)
        self.assertAlmostEqual(abs(F_at(eq, geom, -1.0)), 0.0, delta=1e-8)

    def test_gap_maps_to_tooth(self):
        eq, geom = self.two, self.two_geom
        w = F_at(eq, geom, 0.0)
        self.assertAlmostEqual(w.real, geom.u[1], delta=1e-8)
        self.assertAlmostEqual(w.imag, geom.v[0], delta=1e-8)

    def test_derivative_at_base_point(self):
        for eq, geom in ((self.seg, self.seg_geom), (self.two, self.two_geom), (self.three, self.three_geom)):
            h = h_at(eq, geom.x0)
            self.assertLess(abs(numeric_derivative(eq, geom) - h) / h, 1e-5)

    def test_far_point(self):
        z = 1e6j
        w = F_at(self.seg, self.seg_geom, z)
        self.assertAlmostEqual(w.imag, green_at(self.seg, z), delta=1e-8)

    def test_lower_half_plane_rejected(self):
        with self.assertRaises(DomainError):
            F_at(self.seg, self.seg_geom, 0.3 - 0.1j)

    def test_path_too_close_to_endpoint(self):
        with self.assertRaises(PathError):
            F_at(self.seg, self.seg_geom, complex(1.0, 1e-14))

    def test_path_shapes(self):
        self.assertEqual(len(build_path(self.seg, 0.0, 0.1 + 0.1j)), 1)
        legs = build_path(self.seg, 0.0, 0.9 + 0.01j)
        self.assertEqual(len(legs), 3)
        self.assertTrue(legs[-1].squeeze)
        self.assertTrue(all(min(leg.p0.imag, leg.p1.imag) >= 0 for leg in legs))


class IdentityReportTests(SimpleTestCase):

    def test_segment(self):
        eq = solve_equilibrium(SEGMENT)
        report = check_comb_identities(eq, comb_geometry(eq, 0.0), 100)
        self.assertLess(report.green_deviation, 1e-7)
        self.assertLess(report.imag_on_set, 1e-8)
        self.assertLess(report.derivative_deviation, 1e-5)

    def test_two_bands(self):
        eq = solve_equilibrium(TWO_BANDS)
        report = check_comb_identities(eq, comb_geometry(eq, 0.75), 40)
        self.assertLess(report.tooth_base_deviation, 1e-8)
        self.assertLess(report.derivative_deviation, 1e-5)
