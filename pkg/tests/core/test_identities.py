import unittest
import sys
import os
sys.path.append(os.getcwd())
from fractions import Fraction

from TauLibrary.core import identities
from TauLibrary.errors import CapExceededError, ConfigError


class TestPolynomialIdentities(unittest.TestCase):
    """Vandermonde and Heine identities."""

    def test_vandermonde_square(self):
        """Verify det(V)^2 equals the permutation sum for k = 1..3"""
        for k in range(1, 4):
            lhs, rhs = identities.vandermonde_square_sides(k)
            self.assertEqual(lhs, rhs, k)

    def test_heine(self):
        """Verify the Hankel determinant is the moment image of det(V)^2 / k!"""
        for k in range(1, 4):
            lhs, rhs = identities.heine_sides(k, 0, (-3, 3))
            self.assertEqual(lhs, rhs, k)

    def test_caps(self):
        """Verify the polynomial identities are capped"""
        with self.assertRaises(CapExceededError):
            identities.vandermonde_square_sides(identities.VANDERMONDE_CAP + 1)
        with self.assertRaises(CapExceededError):
            identities.heine_sides(identities.HEINE_CAP + 1, 0, (-3, 3))


class TestCauchyDeterminants(unittest.TestCase):
    """Cauchy-type determinants at rational points."""

    def test_classic_cauchy(self):
        """Verify the square Cauchy determinant at integer points"""
        lhs, rhs = identities.cauchy_rows_first([Fraction(3), Fraction(5)], [Fraction(1), Fraction(2)])
        self.assertEqual(lhs, rhs)

    def test_shape_checks(self):
        """Verify each form checks its shape"""
        with self.assertRaises(ConfigError):
            identities.cauchy_rows_first([1, 2], [3])
        with self.assertRaises(ConfigError):
            identities.cauchy_powers_first([1], [2])
        with self.assertRaises(ConfigError):
            identities.cauchy_with_pole(9, [1], [2])
        with self.assertRaises(ConfigError):
            identities.cauchy_with_pole_column(9, [1, 2], [3])

    def test_every_case_up_to_three(self):
        """Verify every Cauchy-type case up to size 3 at seeded points"""
        for name, m, n in identities.cauchy_cases(3):
            lhs, rhs = identities.cauchy_sides(name, m, n, 7000)
            self.assertEqual(lhs, rhs, (name, m, n))

    def test_unknown_name(self):
        """Verify an unknown identity name is refused"""
        with self.assertRaises(ConfigError):
            identities.cauchy_sides('cauchy-other', 1, 1, 0)


class TestDeterminantReport(unittest.TestCase):
    """The determinant identity report."""

    def test_report_passes_and_is_sorted(self):
        """Verify a small report passes with records in key order"""
        report = identities.determinant_identity_report(max_size=2, seed=11, samples=1)
        self.assertTrue(report.passed, report.failures)
        keys = [record.key for record in report.records]
        self.assertIn(('heine', 2, 1), keys)
        self.assertIn(('vandermonde-square', 2), keys)

    def test_limits(self):
        """Verify the size cap and the minimum sample count"""
        with self.assertRaises(CapExceededError):
            identities.determinant_identity_checks(max_size=identities.DET_CAP + 1)
        with self.assertRaises(ConfigError):
            identities.determinant_identity_checks(max_size=2, samples=0)


if __name__ == '__main__':
    unittest.main()
