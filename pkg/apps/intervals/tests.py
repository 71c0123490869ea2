from django.test import SimpleTestCase

import numpy as np

from Potentia.exceptions import DomainError, InputError, SetSpecError
from apps.intervals.parser import parse_degrees, parse_set_spec
from apps.intervals.sets import (
    IntervalSet, cantor_exhaustion, chebyshev_grid, constant_exhaustion,
    contains, interior_contains, normalize, to_unit,
)


class NormalizeTests(SimpleTestCase):

    def test_merges_overlaps(self):
        E = normalize([(-1, -0.2), (-0.5, 0.1), (0.4, 1)])
        self.assertEqual(E.bands, ((-1.0, 0.1), (0.4, 1.0)))

    def test_identity(self):
        self.assertEqual(normalize([(0, 1)]).bands, ((0.0, 1.0),))

    def test_sorts(self):
        E = normalize([(0.4, 1), (-1, -0.5)])
        self.assertEqual(E.bands, ((-1.0, -0.5), (0.4, 1.0)))

    def test_touching_bands_merge(self):
        self.assertEqual(normalize([(0, 1), (1, 2)]).bands, ((0.0, 2.0),))

    def test_idempotent(self):
        E = normalize([(3, 4), (-1, 0.5), (0.2, 1), (5, 6)])
        self.assertEqual(normalize(E.bands), E)

    def test_rejects_empty_and_reversed(self):
        with self.assertRaises(InputError):
            normalize([])
        with self.assertRaises(InputError):
            normalize([(1, 1)])
        with self.assertRaises(InputError):
            normalize([(2, 1)])


class MembershipTests(SimpleTestCase):

    def test_endpoint(self):
        E = normalize([(-1, 1)])
        self.assertTrue(contains(E, 1))
        self.assertFalse(interior_contains(E, 1))

    def test_gap_point(self):
        E = normalize([(-1, -0.5), (0.5, 1)])
        self.assertFalse(contains(E, 0))
        self.assertFalse(interior_contains(E, 0))

    def test_interior(self):
        E = normalize([(-1, 1)])
        self.assertTrue(contains(E, 0))
        self.assertTrue(interior_contains(E, 0))

    def test_band_of(self):
        E = normalize([(-1, -0.5), (0.5, 1)])
        self.assertEqual(E.band_of(0.75), 1)
        with self.assertRaises(DomainError):
            E.band_of(0.0)


class GridTests(SimpleTestCase):

    def test_three_nodes(self):
        x = chebyshev_grid(normalize([(-1, 1)]), 3)
        np.testing.assert_allclose(x, [-1.0, 0.0, 1.0], atol=1e-15)

    def test_two_nodes(self):
        np.testing.assert_array_equal(chebyshev_grid(normalize([(0, 1)]), 2), [0.0, 1.0])

    def test_two_bands(self):
        E = normalize([(-1, 0), (0.5, 1)])
        x = chebyshev_grid(E, 3)
        self.assertEqual(len(x), 6)
        np.testing.assert_allclose(x, [-1.0, -0.5, 0.0, 0.5, 0.75, 1.0], atol=1e-15)

    def test_increasing_and_inside(self):
        E = normalize([(-1, -0.3), (0, 0.2), (0.5, 1)])
        x = chebyshev_grid(E, 101)
        self.assertTrue(np.all(np.diff(x) > 0))
        self.assertTrue(all(E.contains(t) for t in x))

    def test_clusters_toward_endpoints(self):
        x = chebyshev_grid(normalize([(0, 1)]), 50)
        steps = np.diff(x)
        self.assertLess(steps[0], steps[len(steps) // 2])


class CantorTests(SimpleTestCase):

    def test_middle_third_level_two(self):
        seq = cantor_exhaustion(1 / 3, 2, (0, 1))
        expected = [(0, 1 / 9), (2 / 9, 1 / 3), (2 / 3, 7 / 9), (8 / 9, 1)]
        np.testing.assert_allclose(np.array(seq[2].bands), np.array(expected), atol=1e-15)

    def test_level_zero(self):
        seq = cantor_exhaustion(1 / 3, 0, (0, 1))
        self.assertEqual(len(seq), 1)
        self.assertEqual(seq[0].bands, ((0.0, 1.0),))

    def test_half_ratio(self):
        seq = cantor_exhaustion(0.5, 1, (-1, 1))
        self.assertEqual(seq[1].bands, ((-1.0, -0.5), (0.5, 1.0)))

    def test_nesting_and_length(self):
        ratio = 0.3
        seq = cantor_exhaustion(ratio, 5, (-1, 1))
        for k, level in enumerate(seq):
            self.assertEqual(level.m, 2 ** k)
            self.assertAlmostEqual(level.total_length, (1 - ratio) ** k * 2.0, delta=1e-14)
            if k:
                self.assertTrue(level.is_subset_of(seq[k - 1]))

    def test_bad_ratio(self):
        for ratio in (0.0, 1.0, -0.2, 1.5):
            with self.assertRaises(DomainError):
                cantor_exhaustion(ratio, 2)

    def test_constant_exhaustion(self):
        E = normalize([(-1, 1)])
        seq = constant_exhaustion(E, 3)
        self.assertEqual(len(seq), 4)
        self.assertTrue(all(level == E for level in seq))


class AffineTests(SimpleTestCase):

    def test_to_unit(self):
        E = normalize([(2, 3), (4, 6)])
        unit, s, t = to_unit(E)
        self.assertEqual(unit.carrier, (-1.0, 1.0))
        self.assertAlmostEqual(s, 0.5)
        self.assertAlmostEqual(unit.bands[0][1], 3 * s + t)

    def test_unit_is_fixed(self):
        E = normalize([(-1, -0.5), (0.5, 1)])
        unit, s, t = to_unit(E)
        self.assertIs(unit, E)
        self.assertEqual((s, t), (1.0, 0.0))


class ParserTests(SimpleTestCase):

    def test_set_spec(self):
        E = parse_set_spec("-1,-0.5; 0.5,1")
        self.assertEqual(E, IntervalSet(((-1.0, -0.5), (0.5, 1.0))))

    def test_bad_set_spec(self):
        for text in ("", "1", "a,b", "1,0", "0,1,2"):
            with self.assertRaises(SetSpecError):
                parse_set_spec(text)

    def test_degree_ranges(self):
        self.assertEqual(parse_degrees("20:26:even"), [20, 22, 24, 26])
        self.assertEqual(parse_degrees("1:3"), [1, 2, 3])
        self.assertEqual(parse_degrees("1:3:all"), [1, 2, 3])
        self.assertEqual(parse_degrees("20,28,40"), [20, 28, 40])

    def test_bad_degrees(self):
        for text in ("", "5:1", "3,2", "x"):
            with self.assertRaises(SetSpecError):
                parse_degrees(text)
