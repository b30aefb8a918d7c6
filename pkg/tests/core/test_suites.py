import unittest
import sys
import os
sys.path.append(os.getcwd())

from TauLibrary import suites
from TauLibrary.config import RunConfig
from TauLibrary.errors import CapExceededError, ConfigError, TauVanishesError


def vanishing_case():
    raise TauVanishesError('tau_2 vanishes at the sample point')


def small_config(suite, **options):
    values = {'window': (-2, 2), 'k_max': 2, 'alpha': (0, 0), 'workers': 1}
    values.update(options)
    return RunConfig(suite=suite, **values)


class TestRegistry(unittest.TestCase):

    def test_list_suites(self):
        """Verify every suite is listed once in registry order"""
        names = [name for name, _ in suites.list_suites()]
        self.assertEqual(names[0], 'q-system')
        self.assertEqual(names[-1], 'det-identities')
        self.assertEqual(len(names), len(set(names)))
        self.assertIn('fock-cross', names)

    def test_unknown_suite(self):
        """Verify an unknown suite name is a configuration error"""
        with self.assertRaises(ConfigError):
            suites.get_suite('painleve')

    def test_connection_kinds(self):
        """Verify W matrices need a positive step"""
        self.assertNotIn('W_alpha', suites.connection_kinds(0, 1))
        self.assertIn('W_beta', suites.connection_kinds(0, 1))
        self.assertEqual(len(suites.connection_kinds(1, 1)), len(suites.CONNECTION_KINDS))


class TestPlans(unittest.TestCase):

    def test_q_system_plan(self):
        """Verify the Q-system plan walks k then alpha"""
        keys = [case.key for case in suites.plan_suite(small_config('q-system', alpha=(-1, 0)))]
        self.assertEqual(keys, [(0, -1), (0, 0), (1, -1), (1, 0), (2, -1), (2, 0)])

    def test_desnanot_jacobi_starts_at_two(self):
        """Verify the Desnanot-Jacobi plan starts at k = 2"""
        keys = [case.key for case in suites.plan_suite(small_config('desnanot-jacobi', k_max=3))]
        self.assertEqual(keys, [(2, 0), (3, 0)])

    def test_zero_curvature_plan_clips_k(self):
        """Verify neighbour taus stay inside the cap"""
        cases = suites.plan_suite(small_config('zero-curvature-2', k_max=6))
        self.assertEqual(max(case.key[0] for case in cases), 4)

    def test_fock_plan(self):
        """Verify the Fock plan covers both ranks and the operator checks"""
        keys = [case.key for case in suites.plan_suite(small_config('fock-cross', k_max=1, l_max=1))]
        self.assertIn(('gl2', 1, 0), keys)
        self.assertIn(('gl3', 1, 1, 0, 0), keys)
        self.assertIn(('operators', 3), keys)

    def test_correlation_defaults(self):
        """Verify the correlation plan uses the default size and order"""
        case, = suites.plan_suite(small_config('correlations'))
        self.assertEqual(case.parameters, {'max': suites.CORRELATION_DEFAULT, 'order': suites.CORRELATION_ORDER})

    def test_acceptance_sizes_validate(self):
        """Verify the documented acceptance sizes stay inside the caps"""
        case, = suites.plan_suite(small_config('correlations', max_size=3, order=6).validate())
        self.assertEqual(case.parameters, {'max': 3, 'order': 6})
        case, = suites.plan_suite(small_config('det-identities', max_size=5).validate())
        self.assertEqual(case.parameters['max'], 5)


class TestRuns(unittest.TestCase):

    def test_evaluate_turns_errors_into_records(self):
        """Verify a raising case becomes one failing error record"""
        case = suites.Case((1, 0), vanishing_case, (), {'k': 1})
        record, = suites.evaluate(case)
        self.assertEqual(record.key, (1, 0, 'error'))
        self.assertFalse(record.passed)
        self.assertTrue(record.witness.startswith('TauVanishesError'))

    def test_run_q_system(self):
        """Verify a small Q-system run passes"""
        report = suites.run_suite(small_config('q-system'))
        self.assertEqual(report.suite, 'q-system')
        self.assertTrue(report.passed, report.failures)
        self.assertIn((2, 0, 'q-system'), [record.key for record in report.records])

    def test_run_desnanot_jacobi(self):
        """Verify a small Desnanot-Jacobi run passes"""
        report = suites.run_suite(small_config('desnanot-jacobi', alpha=(-1, 1)))
        self.assertEqual(len(report.records), 3)
        self.assertTrue(report.passed, report.failures)

    def test_run_zero_curvature3(self):
        """Verify a small GL3 zero-curvature run passes with unit determinants for U"""
        report = suites.run_suite(small_config('zero-curvature-3', k_max=1, l_max=1, truncation=2, samples=1))
        self.assertTrue(report.passed, report.failures)
        keys = [record.key for record in report.records]
        self.assertIn((1, 1, 0, 0, 'determinant-U_k'), keys)
        self.assertIn((0, 1, 0, 0, 'determinant-U_l'), keys)

    def test_run_birkhoff3(self):
        """Verify a small GL3 Birkhoff run passes off the k axis"""
        report = suites.run_suite(small_config('birkhoff-3', window=(-3, 3), k_max=1, l_max=1,
                                               truncation=3, samples=1))
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(sorted({record.key[:2] for record in report.records}), [(0, 0), (0, 1), (1, 0), (1, 1)])

    def test_run_validates(self):
        """Verify the run refuses a configuration over the cap"""
        with self.assertRaises(CapExceededError):
            suites.run_suite(small_config('gl3-four', k_max=4))


if __name__ == '__main__':
    unittest.main()
