import unittest
import sys
import os
sys.path.append(os.getcwd())

from TauLibrary.core.algebra import LaurentSeries, Poly, Window
from TauLibrary.core.shifts import (ShiftSpec, compose_fields, is_window_interior, partial_shift,
                                    restrict_to_window, shift_field_apply, shift_power, source_window)
from TauLibrary.errors import ConfigError


def c(i):
    return Poly.variable('c', i)


def d(i):
    return Poly.variable('d', i)


class TestShiftPower(unittest.TestCase):
    """Index shifts of a single family."""

    def test_shift_moves_indices(self):
        """Verify S^1 moves every c index up by one"""
        self.assertEqual(shift_power(c(0) * c(2) - c(1) ** 2, 'c', 1), c(1) * c(3) - c(2) ** 2)

    def test_shift_respects_window(self):
        """Verify monomials leaving the window are dropped"""
        self.assertEqual(shift_power(c(0) + c(2), 'c', 1, Window(-2, 2)), c(1))

    def test_other_families_untouched(self):
        """Verify a shift of c leaves d indices alone"""
        self.assertEqual(shift_power(c(0) * d(3), 'c', -1), c(-1) * d(3))

    def test_window_interior(self):
        """Verify interior checks include the shifted image"""
        self.assertTrue(is_window_interior(c(0) * c(1), Window(-2, 2), 1))
        self.assertFalse(is_window_interior(c(0) * c(2), Window(-2, 2), 1))

    def test_restrict_to_window(self):
        """Verify variables outside the window are set to zero"""
        self.assertEqual(restrict_to_window(c(0) + c(5) * c(1), Window(-2, 2)), c(0))

    def test_source_window(self):
        """Verify the source window reaches down by the field truncation"""
        self.assertEqual(source_window(Window(-3, 3), 4), Window(-7, 3))
        self.assertEqual(source_window((-3, 3), 0), Window(-4, 3))

    def test_shift_reads_below_window(self):
        """Verify S+ carries the coordinate just below the window into it"""
        series = shift_field_apply(c(-3), ShiftSpec('c', '+', 1, Window(-2, 2)))
        self.assertEqual(series.coefficient(-1), -c(-2))
        self.assertEqual(series.coefficient(0), 0)


class TestShiftFields(unittest.TestCase):
    """Shift fields as series in z^-1."""

    def test_bad_family(self):
        """Verify an unknown family is rejected"""
        with self.assertRaises(ConfigError):
            ShiftSpec('x', '+', 1, Window(-2, 2))

    def test_bad_sign(self):
        """Verify the sign must be + or -"""
        with self.assertRaises(ConfigError):
            ShiftSpec('c', '*', 1, Window(-2, 2))

    def test_plus_field_on_generator(self):
        """Verify S+(z) c_0 = c_0 - c_1/z"""
        spec = ShiftSpec('c', '+', 2, Window(-2, 2))
        self.assertEqual(shift_field_apply(c(0), spec), LaurentSeries({0: c(0), -1: -c(1)}))

    def test_minus_field_is_truncated(self):
        """Verify S-(z) c_0 lists c_0, c_1, c_2, c_3 and stays truncated inside a wide window"""
        series = shift_field_apply(c(0), ShiftSpec('c', '-', 3, Window(-5, 5)))
        self.assertEqual(series.trunc, 3)
        self.assertEqual([series.coefficient(-j) for j in range(4)], [c(0), c(1), c(2), c(3)])

    def test_minus_field_exact_at_window_edge(self):
        """Verify S-(z) is exact once the window ends"""
        series = shift_field_apply(c(1), ShiftSpec('c', '-', 3, Window(-2, 2)))
        self.assertIsNone(series.trunc)
        self.assertEqual(series, LaurentSeries({0: c(1), -1: c(2)}))

    def test_partial_shift_of_product(self):
        """Verify the z^-1 coefficient of S+(z) applied to c_0 c_1"""
        spec = ShiftSpec('c', '+', 2, Window(-3, 3))
        self.assertEqual(partial_shift(c(0) * c(1), spec, 1), -(c(0) * c(2) + c(1) ** 2))

    def test_compose_needs_distinct_families(self):
        """Verify composing two fields on one family is refused"""
        spec = ShiftSpec('c', '+', 1, Window(-2, 2))
        with self.assertRaises(ConfigError):
            compose_fields(c(0), [spec, spec])

    def test_compose_two_families(self):
        """Verify fields on c and d act independently"""
        series = compose_fields(c(0) * d(0), [ShiftSpec('c', '+', 2, Window(-2, 2)),
                                              ShiftSpec('d', '+', 2, Window(-2, 2))])
        self.assertEqual(series.coefficient(-2), c(1) * d(1))
        self.assertEqual(series.coefficient(-1), -(c(1) * d(0) + c(0) * d(1)))


if __name__ == '__main__':
    unittest.main()
