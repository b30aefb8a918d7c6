import unittest
import sys
import os
sys.path.append(os.getcwd())

from TauLibrary.core import fock_oracle
from TauLibrary.core.algebra import Poly, Window
from TauLibrary.core.fock_oracle import MINUS, PLUS, FockVector, WedgeState, apply_psi, apply_Q
from TauLibrary.core.tau_gl2 import tau2
from TauLibrary.core.tau_gl3 import tau3
from TauLibrary.errors import CapExceededError, ConfigError


class TestWedges(unittest.TestCase):
    """Elementary wedges and charged fermions."""

    def test_from_sets(self):
        """Verify particles and holes are read back with their charges"""
        state = WedgeState.from_sets({0: [-1]}, {1: [0, 2]})
        self.assertEqual(state.particles(0), {-1})
        self.assertEqual(state.holes(1), {0, 2})
        self.assertEqual(state.charges(2), (1, -2))
        self.assertEqual(state.degree, -1)

    def test_bad_levels(self):
        """Verify particles must sit below zero"""
        with self.assertRaises(ConfigError):
            WedgeState.from_sets({0: [0]})

    def test_create_then_annihilate(self):
        """Verify psi-_(0) undoes psi+_(-1) on the vacuum"""
        vacuum = FockVector.vacuum()
        excited = apply_psi(0, PLUS, -1, vacuum)
        self.assertEqual(excited.charge_sets(1), {(1,)})
        self.assertEqual(apply_psi(0, MINUS, 0, excited), vacuum)

    def test_pauli_exclusion(self):
        """Verify the same mode cannot be filled twice"""
        excited = apply_psi(1, PLUS, -2, FockVector.vacuum())
        self.assertFalse(apply_psi(1, PLUS, -2, excited))

    def test_annihilates_vacuum(self):
        """Verify nonnegative modes of psi+ kill the vacuum"""
        self.assertFalse(apply_psi(0, PLUS, 0, FockVector.vacuum()))

    def test_bad_sign(self):
        """Verify the fermion sign is checked"""
        with self.assertRaises(ConfigError):
            apply_psi(0, '*', 0, FockVector.vacuum())

    def test_q_is_unitary(self):
        """Verify Q_a^-1 Q_a is the identity and Q_a shifts the charge"""
        state = FockVector.basis(WedgeState.from_sets({0: [-2]}, {1: [0]}))
        self.assertEqual(apply_Q(1, -1, apply_Q(1, 1, state)), state)
        self.assertEqual(apply_Q(1, 1, state).charge_sets(2), {(1, 0)})

    def test_pairing(self):
        """Verify the pairing is orthonormal on wedges"""
        a = FockVector.basis(WedgeState.from_sets({0: [-1]}), 3)
        b = FockVector.basis(WedgeState.from_sets({0: [-1]}), 2) + FockVector.vacuum(5)
        self.assertEqual(a.pair(b), 6)
        self.assertEqual(b.pair(a), 6)


class TestMatrixElements(unittest.TestCase):
    """Tau functions as fermionic matrix elements."""

    def test_gl2_tau(self):
        """Verify the Fock value equals the Hankel determinant for k = 1, 2"""
        window = Window(-2, 2)
        for k in (1, 2):
            self.assertEqual(fock_oracle.tau_via_fock(2, k, alpha=0, window=window), tau2(k, 0, window))

    def test_gl2_negative_k(self):
        """Verify negative k gives zero"""
        self.assertFalse(fock_oracle.tau_via_fock(2, -1))

    def test_gl3_tau(self):
        """Verify the Fock value equals the residue formula at (1, 1)"""
        window = Window(-2, 2)
        self.assertEqual(fock_oracle.tau_via_fock(3, 1, 1, 0, 0, window), tau3(1, 1, 0, 0, window))

    def test_cap(self):
        """Verify the Fock cap on k + l"""
        with self.assertRaises(CapExceededError):
            fock_oracle.tau_via_fock(3, 3, 2, window=(-1, 1))

    def test_unsupported_rank(self):
        """Verify only n = 2 and n = 3 have tau functions"""
        with self.assertRaises(ConfigError):
            fock_oracle.tau_via_fock(4, 1)


class TestOperatorIdentities(unittest.TestCase):
    """Fermion and translation identities on small bases."""

    def test_one_component(self):
        """Verify every identity for one component"""
        for name, residual in fock_oracle.operator_identity_checks(1, 2):
            self.assertTrue(residual.passed, '%s: %s' % (name, residual.witness))

    def test_two_components(self):
        """Verify every identity for two components"""
        checks = dict(fock_oracle.operator_identity_checks(2, 1))
        self.assertIn('gl2-translations', checks)
        for name, residual in checks.items():
            self.assertTrue(residual.passed, '%s: %s' % (name, residual.witness))

    def test_three_components(self):
        """Verify every identity for three components with one excitation"""
        for name, residual in fock_oracle.operator_identity_checks(3, 1):
            self.assertTrue(residual.passed, '%s: %s' % (name, residual.witness))

    def test_unsupported_rank(self):
        """Verify only 1 to 3 components are checked"""
        with self.assertRaises(ConfigError):
            fock_oracle.operator_identity_checks(4)


class TestCorrelations(unittest.TestCase):
    """One-component correlation functions."""

    def test_vandermonde(self):
        """Verify <Q^2 v0, psi+(z_2) psi+(z_1) v0> = z_2 - z_1"""
        expected = Poly.variable('z', 2) - Poly.variable('z', 1)
        self.assertEqual(fock_oracle.correlation_pp(2), expected)
        self.assertEqual(fock_oracle.vandermonde_product(2), expected)

    def test_correlation_cap(self):
        """Verify correlation sizes are capped"""
        with self.assertRaises(CapExceededError):
            fock_oracle.correlation_pp(fock_oracle.CORRELATION_CAP + 1)

    def test_factorization(self):
        """Verify multi-component elements factor into one-component pieces"""
        for monomials in fock_oracle.FACTORIZATION_EXAMPLES:
            self.assertTrue(fock_oracle.factorization_check(monomials), monomials)

    def test_report(self):
        """Verify the small correlation report passes"""
        report = fock_oracle.correlation_report(max_size=1, order=3)
        self.assertEqual(report.suite, 'correlations')
        self.assertTrue(report.passed, report.failures)


if __name__ == '__main__':
    unittest.main()
