import math

import mpmath
import numpy as np
from django.test import SimpleTestCase, tag

from Potentia.exceptions import DomainError
from apps.comb.services import CombGeometry, comb_geometry, h_at
from apps.equilibrium.services import solve_equilibrium
from apps.intervals.sets import cantor_exhaustion, constant_exhaustion, normalize
from apps.verification.checks import (
    dichotomy_report, exhaustion_green_check, exhaustion_profile, farfield_check, lemma22_check,
    lemma23_check, lipschitz_sup, tooth_bounds,
)
from apps.verification.ledger import build_constants, derive_constants, log_c4, within_c4
from apps.verification.suite import (
    draw_trial, proved_bound_suite, random_band_set, trial_rng, verify_point,
)

SEGMENT = normalize([(-1, 1)])
TWO_BANDS = normalize([(-1, -0.5), (0.5, 1)])
THREE_BANDS = normalize([(-1, -0.3), (0, 0.2), (0.5, 1)])


def ledger_for(E, x0):
    eq = solve_equilibrium(E)
    geom = comb_geometry(eq, x0)
    return eq, geom, build_constants(eq, geom, x0)


class LedgerTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.segment = ledger_for(SEGMENT, 0.0)
        cls.two = ledger_for(TWO_BANDS, 0.75)

    def test_segment_constants(self):
        ledger = self.segment[2]
        self.assertAlmostEqual(float(ledger.c), 2.0002, delta=1e-9)
        self.assertAlmostEqual(float(ledger.c1), 4 * math.pi + math.log(4.0004), delta=1e-9)
        self.assertAlmostEqual(float(ledger.c1), 13.953, delta=1e-3)
        self.assertTrue(ledger.ok)

    def test_two_band_constants(self):
        ledger = self.two[2]
        self.assertAlmostEqual(float(ledger.c), 1.0001 / (math.sqrt(0.75) / 2), delta=1e-7)
        self.assertAlmostEqual(float(ledger.c), 2.3096, delta=1e-4)
        self.assertTrue(all(ledger.checks().values()))

    def test_formulas_reproduce(self):
        ledger = self.two[2]
        with mpmath.workdps(ledger.dps):
            again = derive_constants(ledger.c)
        for name in ("c1", "c2", "c3", "c4", "c5"):
            self.assertEqual(again[name], getattr(ledger, name))

    def test_sandwich(self):
        for _eq, _geom, ledger in (self.segment, self.two):
            self.assertLess(ledger.c1, ledger.w0_im)
            self.assertLess(ledger.w0_im, 2 * ledger.c1)
            self.assertGreaterEqual(ledger.R0, ledger.w0_im)

    def test_huge_constants_serialized(self):
        data = self.segment[2].to_dict()
        self.assertIsInstance(data["c4"]["value"], str)
        self.assertGreater(data["c4"]["log10"], 308)
        self.assertAlmostEqual(data["c"], 2.0002, delta=1e-9)

    def test_c4_comparisons_in_logs(self):
        ledger = self.segment[2]
        log10 = float(log_c4(ledger)) / math.log(10)
        self.assertAlmostEqual(log10 / ledger.to_dict()["c4"]["log10"], 1.0, delta=1e-12)
        self.assertTrue(within_c4(ledger, 1e300, 1e-6))
        self.assertFalse(within_c4(ledger, 1.0, 0.0))
        self.assertTrue(within_c4(ledger, 0.0, 0.0))

    def test_unit_frame_mapping(self):
        s, t = 3.0, -2.0
        moved = TWO_BANDS.affine(s, t)
        eq = solve_equilibrium(moved)
        x0 = s * 0.75 + t
        ledger = build_constants(eq, comb_geometry(eq, x0), x0)
        self.assertAlmostEqual(float(ledger.c), float(self.two[2].c), delta=1e-8)
        self.assertAlmostEqual(ledger.x0, 0.75, delta=1e-12)

    def test_endpoint_rejected(self):
        eq = solve_equilibrium(SEGMENT)
        geom = comb_geometry(eq, 0.0)
        with self.assertRaises(DomainError):
            build_constants(eq, geom, 1.0)

    def test_tooth_bounds(self):
        report = tooth_bounds(*self.two)
        self.assertEqual(len(report.heights), 1)
        self.assertAlmostEqual(report.heights[0], 0.5 * math.log(3), delta=1e-8)
        self.assertTrue(report.ok)
        self.assertLess(report.heights[0], report.by_capacity + 1e-9)
        self.assertLess(report.by_c, report.log_2c)
        self.assertTrue(tooth_bounds(*self.segment).ok)

    def test_lemma22(self):
        report = lemma22_check(self.two[1], self.two[2])
        self.assertEqual(len(report.ratios), 1)
        self.assertTrue(report.ok)
        self.assertLess(report.slopes[0], report.ratios[0])
        self.assertGreater(report.margin_log10, 0)
        empty = lemma22_check(self.segment[1], self.segment[2])
        self.assertEqual(empty.ratios, ())
        self.assertTrue(empty.ok)

    def test_lemma22_rejects_degenerate_and_steep_teeth(self):
        ledger = self.two[2]
        flat = CombGeometry(u=(0.0, 1.0, math.pi), v=(0.0,), eta0=2.0, x0=0.75)
        on_base = CombGeometry(u=(0.0, 1.0, math.pi), v=(0.4,), eta0=1.0, x0=0.75)
        for geom in (flat, on_base):
            report = lemma22_check(geom, ledger)
            self.assertFalse(report.ok)
            self.assertEqual(report.degenerate, (1,))
        # R/r = 1e30 > c3 ~ 1e28
        steep = lemma22_check(CombGeometry(u=(0.0, 1e-30, math.pi), v=(1.0,), eta0=0.0, x0=0.75), ledger)
        self.assertFalse(steep.ok)
        self.assertLess(steep.margin_log10, 0)


class Lemma23Tests(SimpleTestCase):

    def test_segment_slopes(self):
        eq, geom, ledger = ledger_for(SEGMENT, 0.0)
        report = lemma23_check(eq, geom, ledger, 48)
        self.assertTrue(report.ok)
        # F - eta0 = arcsin z: |arcsin z| / |z| тягнеться від 1 біля нуля до pi/2 на |z| = 1
        self.assertGreater(report.max_slope, 0.99)
        self.assertLessEqual(report.max_slope, math.pi / 2 + 1e-6)
        self.assertLessEqual(report.max_distance_ratio, 1.0)

    def test_two_bands_200_samples(self):
        eq, geom, ledger = ledger_for(TWO_BANDS, 0.75)
        report = lemma23_check(eq, geom, ledger, 200)
        self.assertGreaterEqual(report.sample_count, 200)
        self.assertEqual(report.failures, ())
        self.assertTrue(report.comb_ok and report.radius_ok and report.green_ok)


class LipschitzTests(SimpleTestCase):

    def test_segment_sup(self):
        eq = solve_equilibrium(SEGMENT)
        self.assertAlmostEqual(lipschitz_sup(eq, 0.0, 1e-8, 10.0), 1.0, delta=1e-6)
        self.assertAlmostEqual(lipschitz_sup(eq, 0.0, 1.0, 10.0), math.asinh(1.0), delta=1e-8)

    def test_lower_bound_by_density(self):
        for E, x0 in ((TWO_BANDS, 0.75), (THREE_BANDS, 0.1)):
            eq = solve_equilibrium(E)
            sup = lipschitz_sup(eq, x0, 1e-8, E.diameter)
            self.assertGreaterEqual(sup, h_at(eq, x0) * (1 - 1e-4))

    def test_refinement(self):
        eq = solve_equilibrium(TWO_BANDS)
        coarse = lipschitz_sup(eq, 0.75, 1e-6, 2.0, 10)
        fine = lipschitz_sup(eq, 0.75, 1e-6, 2.0, 40)
        self.assertGreaterEqual(fine, coarse)

    def test_lowering_floor(self):
        eq = solve_equilibrium(THREE_BANDS)
        sups = [lipschitz_sup(eq, 0.1, y, 2.0) for y in (1e-2, 1e-4, 1e-6, 1e-8)]
        for a, b in zip(sups, sups[1:]):
            self.assertGreaterEqual(b, a - 1e-12)

    def test_bad_range(self):
        eq = solve_equilibrium(SEGMENT)
        with self.assertRaises(DomainError):
            lipschitz_sup(eq, 0.0, 1.0, 1.0)
        with self.assertRaises(DomainError):
            lipschitz_sup(eq, 0.0, 0.0, 1.0)


class FarfieldTests(SimpleTestCase):

    def test_segment(self):
        eq, _geom, ledger = ledger_for(SEGMENT, 0.0)
        c = float(ledger.c)
        report = farfield_check(eq, ledger, 0.0, [2 * c, 100.0])
        self.assertTrue(report.ok)
        # g(z) ~ log 2|z| на великих колах, запас близький до log c
        self.assertGreater(report.margin, 0.5)

    def test_short_radius(self):
        eq, _geom, ledger = ledger_for(SEGMENT, 0.0)
        with self.assertRaises(DomainError):
            farfield_check(eq, ledger, 0.0, [1.0])


class ExhaustionTests(SimpleTestCase):

    def test_constant_sequence(self):
        report = exhaustion_green_check(constant_exhaustion(TWO_BANDS, 2), [1j, 0.1 + 0.2j])
        for diffs in report.differences:
            for d in diffs:
                self.assertAlmostEqual(d, 0.0, delta=1e-12)

    def test_middle_third_at_i(self):
        report = exhaustion_green_check(cantor_exhaustion(1 / 3, 4, (-1.0, 1.0)), [1j])
        self.assertTrue(report.strictly_increasing)
        for factor in report.shrink_factors[0]:
            self.assertGreaterEqual(factor, 1.2)

    def test_points_of_every_level(self):
        report = exhaustion_green_check(cantor_exhaustion(1 / 3, 3, (-1.0, 1.0)), [-1.0, 1.0])
        for row in report.values:
            self.assertEqual(row, (0.0,) * 4)

    def test_single_level(self):
        with self.assertRaises(DomainError):
            exhaustion_green_check(constant_exhaustion(SEGMENT, 0), [1j])

    def test_profile(self):
        exh = cantor_exhaustion(1 / 3, 3, (-1.0, 1.0))
        a, b = exh[3].bands[0]
        profile = exhaustion_profile(exh, 0.5 * (a + b))
        self.assertTrue(profile.h_nondecreasing)
        self.assertTrue(profile.capacity_nonincreasing)
        self.assertAlmostEqual(profile.rows[0].capacity, 0.5, delta=1e-9)

    def test_dichotomy_rejects_gap_point(self):
        with self.assertRaises(DomainError):
            dichotomy_report(cantor_exhaustion(1 / 3, 2, (-1.0, 1.0)), 0.0, 1.0)


class SuiteTests(SimpleTestCase):

    def test_random_sets(self):
        rng = np.random.default_rng(5)
        for m in (2, 3, 4, 4, 3, 2):
            E = random_band_set(rng, m)
            self.assertEqual(E.m, m)
            self.assertEqual(E.carrier, (-1.0, 1.0))
            self.assertGreaterEqual(min(b - a for a, b in E.bands), 0.05 - 1e-12)
            self.assertGreaterEqual(min(b - a for a, b in E.gaps), 0.05 - 1e-12)

    def test_trial_streams_match_spawn(self):
        children = np.random.SeedSequence(0).spawn(5)
        self.assertEqual(np.random.default_rng(children[3]).random(), trial_rng(0, 3).random())
        self.assertEqual(draw_trial(0, 3), draw_trial(0, 3))

    def test_trial_point_is_band_midpoint(self):
        E, x0 = draw_trial(0, 1)
        self.assertIn(2 * x0, [a + b for a, b in E.bands])

    def test_verify_point(self):
        report = verify_point(TWO_BANDS, 0.75, 24)
        self.assertTrue(report["ok"], report.get("error"))
        self.assertIn("c4", report["ledger"])


@tag("slow")
class ProvedBoundSuiteTests(SimpleTestCase):

    def test_hundred_trials(self):
        report = proved_bound_suite(100, 0)
        self.assertEqual(report.failed, ())
        margins = report.margins()
        self.assertGreater(margins["tooth"], 0)
        self.assertGreater(margins["farfield"], 0)
        self.assertGreater(margins["lemma22_log10"], 0)
        self.assertGreater(margins["lemma23_log10"], 0)


@tag("slow")
class DichotomyTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        from apps.asymptotics.services import sigma_alpha
        cls.sigma1 = sigma_alpha(1.0)

    def test_segment_exhibit(self):
        report = dichotomy_report(constant_exhaustion(SEGMENT, 1), 0.0, 1.0,
                                  y_floors=[1e-6, 1e-8], sigma=self.sigma1)
        sigma = self.sigma1.extrapolated_limit
        for level in report.levels:
            for n, value in level.rates.samples:
                if n >= 40:
                    self.assertGreaterEqual(value, 0.9 * sigma)
                    self.assertLessEqual(value, 1.1 * sigma)
            (_, s6), (_, s8) = level.sups
            self.assertLess(abs(s8 - s6), 1e-3)
        self.assertAlmostEqual(report.h_bound, 1.0, delta=2e-2)

    def test_cantor_level_four(self):
        exh = cantor_exhaustion(1 / 3, 4, (-1.0, 1.0))
        a, b = exh[4].bands[0]
        report = dichotomy_report(exh, 0.5 * (a + b), 1.0, [20, 28, 40, 56], sigma=self.sigma1)
        self.assertEqual(len(report.levels), 5)
        for level in report.levels:
            self.assertTrue(level.sup_growth)
        self.assertTrue(report.profile.h_nondecreasing)
