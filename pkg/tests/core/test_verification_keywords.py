import unittest
import sys
import os
import json
import tempfile
sys.path.append(os.getcwd())
from unittest.mock import patch

from TauLibrary import TauLibrary
from TauLibrary.errors import ConfigError
from TauLibrary.report import CaseRecord, Residual, VerificationReport


def failing_report():
    report = VerificationReport('q-system')
    report.add(CaseRecord.from_residual((1, 0, 'q-system'), {'k': 1}, Residual(2, '+1/1*c[0]')))
    report.add(CaseRecord.from_residual((0, 0, 'q-system'), {'k': 0}, Residual(0)))
    return report


class TestSuiteKeywords(unittest.TestCase):

    def setUp(self):
        self.lib = TauLibrary(run_on_failure='Nothing')

    def test_list_suites(self):
        """Verify every suite name is returned"""
        names = self.lib.list_verification_suites()
        self.assertIn('q-system', names)
        self.assertIn('birkhoff-3', names)

    def test_run_suite_from_text_options(self):
        """Verify text options reach the suite and the report is returned"""
        report = self.lib.run_verification_suite('q-system', k_max='1', window='-2..2', alpha='0..0',
                                                 workers='1')
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.records[0].parameters['window'], '-2..2')

    @patch('TauLibrary.keywords._verification.run_suite')
    def test_should_pass_names_failures(self, run_suite):
        """Verify the failure message names the failing case and its witness"""
        run_suite.return_value = failing_report()
        with self.assertRaises(AssertionError) as context:
            self.lib.verification_suite_should_pass('q-system', workers=1)
        message = str(context.exception)
        self.assertIn('suite q-system: 2 cases, 1 failed', message)
        self.assertIn('1 0 q-system: +1/1*c[0]', message)

    @patch('TauLibrary.keywords._verification.run_suite')
    def test_run_does_not_fail(self, run_suite):
        """Verify Run Verification Suite returns a failing report without raising"""
        run_suite.return_value = failing_report()
        report = self.lib.run_verification_suite('q-system', workers=1)
        self.assertFalse(report.passed)

    def test_write_report(self):
        """Verify the report is written as JSON without timings by default"""
        with tempfile.TemporaryDirectory() as root:
            path = self.lib.write_verification_report(failing_report(), os.path.join(root, 'q.json'))
            with open(path, encoding='utf-8') as f:
                document = json.load(f)
        self.assertEqual(document['suite'], 'q-system')
        self.assertFalse(document['passed'])
        self.assertNotIn('wall_time', document['cases'][0])

    def test_write_report_format(self):
        """Verify an unknown report format is refused"""
        with self.assertRaises(ConfigError):
            self.lib.write_verification_report(failing_report(), 'q.xml', format='xml')


class TestIdentityKeywords(unittest.TestCase):

    def setUp(self):
        self.lib = TauLibrary(run_on_failure='Nothing')

    def tearDown(self):
        self.lib.close_all_tau_tables()

    def test_q_system(self):
        """Verify the Q-system holds on a GL2 table"""
        self.lib.open_tau_table(2, '-3..3')
        self.lib.q_system_should_hold('2', alpha='1')

    def test_q_system_needs_gl2(self):
        """Verify the Q-system keyword refuses a GL3 table"""
        self.lib.open_tau_table(3, '-2..2')
        with self.assertRaises(RuntimeError):
            self.lib.q_system_should_hold(1)

    def test_birkhoff_gl2(self):
        """Verify the GL2 Birkhoff factor on a small window"""
        self.lib.open_tau_table(2, '-2..2')
        self.lib.birkhoff_factorization_should_hold(1, truncation=3)

    def test_fock_oracle(self):
        """Verify the Fock oracle agrees on GL2 and GL3 tables"""
        self.lib.open_tau_table(2, '-2..2')
        self.lib.tau_should_match_fock_oracle(2)
        self.lib.open_tau_table(3, '-2..2')
        self.lib.tau_should_match_fock_oracle(1, l=1)


if __name__ == '__main__':
    unittest.main()
