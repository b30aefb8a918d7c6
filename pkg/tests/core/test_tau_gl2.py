import unittest
import sys
import os
sys.path.append(os.getcwd())

from TauLibrary.core import tau_gl2
from TauLibrary.core.algebra import ONE, ZERO, Poly, Window
from TauLibrary.core.lattice import random_assignment
from TauLibrary.core.tau_gl2 import TauTable2, tau2
from TauLibrary.errors import CapExceededError, ConfigError


def c(i):
    return Poly.variable('c', i)


class TestTau2(unittest.TestCase):
    """Hankel tau functions."""

    def test_small_values(self):
        """Verify tau_-1 = 0, tau_0 = 1, tau_1 = c_alpha and tau_2 = c0 c2 - c1^2"""
        window = (-3, 3)
        self.assertEqual(tau2(-1, 0, window), ZERO)
        self.assertEqual(tau2(0, 5, window), ONE)
        self.assertEqual(tau2(1, -2, window), c(-2))
        self.assertEqual(tau2(2, 0, window), c(0) * c(2) - c(1) ** 2)

    def test_empty_window(self):
        """Verify every positive tau vanishes on an empty window"""
        self.assertEqual(tau2(2, 0, (1, 0)), ZERO)

    def test_window_edge(self):
        """Verify coordinates outside the window are zero"""
        self.assertEqual(tau2(2, 0, (0, 1)), -c(1) ** 2)

    def test_limits(self):
        """Verify k below -1 and k above the cap are refused"""
        with self.assertRaises(ConfigError):
            tau2(-2, 0, (-3, 3))
        with self.assertRaises(CapExceededError):
            tau2(tau_gl2.K_CAP + 1, 0, (-3, 3))

    def test_table_memoizes(self):
        """Verify the table stores each lattice point once"""
        table = TauTable2(Window(-3, 3))
        first = table.tau(2, 0)
        self.assertIs(table.tau(2, 0), first)
        self.assertEqual(len(table), 1)
        table.clear()
        self.assertEqual(len(table), 0)

    def test_rows_in_canonical_text(self):
        """Verify table rows are ordered by k then alpha"""
        rows = TauTable2(Window(-3, 3)).rows(1, [0, 1])
        self.assertEqual(rows[0], (-1, 0, '0'))
        self.assertEqual(rows[3], (0, 1, '+1/1'))
        self.assertEqual(rows[-1], (1, 1, '+1/1*c[1]'))


class TestIdentities2(unittest.TestCase):
    """Q-system, Desnanot-Jacobi and connection matrices."""

    def setUp(self):
        self.table = TauTable2(Window(-4, 4))

    def test_q_system(self):
        """Verify the Q-system for k = 0..3 and alpha = -1..1"""
        for k in range(0, 4):
            for alpha in range(-1, 2):
                self.assertFalse(tau_gl2.qsystem_residual(k, alpha, self.table), (k, alpha))

    def test_desnanot_jacobi(self):
        """Verify Desnanot-Jacobi for k = 2, 3"""
        for k in (2, 3):
            self.assertFalse(tau_gl2.desnanot_jacobi_residual(k, 0, self.table))
        with self.assertRaises(ConfigError):
            tau_gl2.desnanot_jacobi_residual(1, 0, self.table)

    def test_rearranged_q_system(self):
        """Verify the quadratic rearrangement of the Q-system"""
        self.assertFalse(tau_gl2.rearranged_qsystem_residual(1, 0, self.table))

    def test_shift_consistency(self):
        """Verify tau_k^(alpha+1) is the index shift of tau_k^(alpha)"""
        self.assertFalse(tau_gl2.shift_consistency_residual(2, -1, 1, self.table))
        self.assertIsNone(tau_gl2.shift_consistency_residual(0, 0, 1, self.table))

    def test_determinants(self):
        """Verify det U = 1, det V = z and det W = z"""
        residuals = tau_gl2.determinant_residuals(1, 0, self.table)
        self.assertEqual(sorted(residuals), ['U', 'V', 'W'])
        for name, value in residuals.items():
            self.assertFalse(value, name)

    def test_u_factorization(self):
        """Verify U_k = V_k W_(k+1)^-1"""
        self.assertIsNone(tau_gl2.u_factorization_residual(1, 0, self.table).first_nonzero())

    def test_h_quantities(self):
        """Verify h_0 = c_0, beta_0 = c_1/c_0 and b_0 = beta_0 since alpha_-1 vanishes"""
        q = tau_gl2.h_quantities(0, 0, self.table)
        self.assertEqual(q.h, c(0))
        self.assertEqual(q.beta_k * c(0), c(1))
        self.assertEqual(q.alpha_k * c(0) * c(1), c(0) * c(2) - c(1) ** 2)
        self.assertEqual(q.b_k, q.beta_k)

    def test_w_needs_positive_k(self):
        """Verify W_0 is undefined"""
        self.assertIsNone(tau_gl2.connection_matrices(0, 0, self.table)[2])
        with self.assertRaises(ConfigError):
            tau_gl2.matrix_w(0, 0, self.table)


class TestBirkhoff2(unittest.TestCase):
    """Birkhoff factor from tau functions."""

    def test_symbolic_factorization(self):
        """Verify the symbolic factorization at k = 1"""
        report = tau_gl2.verify_birkhoff2(1, 0, (-2, 2), 3)
        self.assertTrue(report.passed, report.failures)
        self.assertIn((1, 0, 'negative-part'), [record.key for record in report.records])

    def test_numeric_factorization(self):
        """Verify the tau formula against the numeric solver at a random point"""
        window = Window(-2, 2)
        point = random_assignment(window, ('c',), seed=3)
        report = tau_gl2.verify_birkhoff2(1, 0, window, 2, assignment=point)
        self.assertTrue(report.passed, report.failures)
        self.assertIn((1, 0, 'numeric-solver'), [record.key for record in report.records])

    def test_negative_k(self):
        """Verify k >= 0 is required"""
        with self.assertRaises(ConfigError):
            tau_gl2.verify_birkhoff2(-1, 0, (-2, 2), 3)

    def test_unipotent_at_k_zero(self):
        """Verify g_minus of the untranslated element starts with the identity"""
        g_minus = tau_gl2.g_minus_from_tau(0, 0, TauTable2(Window(-2, 2)), 2)
        self.assertEqual(g_minus.coefficient_matrix(0), ((1, 0), (0, 1)))

    def test_baker_at_origin(self):
        """Verify Psi = g_minus when k = alpha = 0"""
        table = TauTable2(Window(-2, 2))
        psi = tau_gl2.baker2(0, 0, table, 2)
        self.assertTrue(psi.agrees_with(tau_gl2.g_minus_from_tau(0, 0, table, 2)))


if __name__ == '__main__':
    unittest.main()
