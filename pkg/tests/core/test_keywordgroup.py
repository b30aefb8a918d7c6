import unittest
import sys
import os
sys.path.append(os.getcwd())

from TauLibrary.errors import TauVanishesError
from TauLibrary.keywords.keywordgroup import KeywordGroup, ignore_on_fail


class FakeTauKeywords(KeywordGroup):
    def __init__(self):
        self.failure_hooks = 0

    def _run_on_failure(self):
        self.failure_hooks += 1

    def get_tau(self, k):
        return 'tau_%s' % k

    def q_system_should_hold(self, k):
        raise AssertionError('Q-system at k=%s does not hold' % k)

    def divide_by_tau(self):
        raise TauVanishesError('tau vanishes at this point')

    @ignore_on_fail
    def get_keyword_names(self):
        raise RuntimeError('not a keyword failure')

    def _current_table(self):
        raise RuntimeError('No tau table is open')

    def verification_suite_should_pass(self):
        self.q_system_should_hold(2)


class TestKeywordGroup(unittest.TestCase):

    def setUp(self):
        self.keywords = FakeTauKeywords()

    def test_passing_keyword_runs_no_hook(self):
        """Verify a passing keyword returns its value and leaves the hook alone"""
        self.assertEqual(self.keywords.get_tau(2), 'tau_2')
        self.assertEqual(self.keywords.failure_hooks, 0)

    def test_failing_keyword_runs_hook(self):
        """Verify an assertion failure runs the failure hook once"""
        with self.assertRaises(AssertionError):
            self.keywords.q_system_should_hold(3)
        self.assertEqual(self.keywords.failure_hooks, 1)

    def test_library_errors_run_hook(self):
        """Verify library errors also run the failure hook"""
        with self.assertRaises(TauVanishesError):
            self.keywords.divide_by_tau()
        self.assertEqual(self.keywords.failure_hooks, 1)

    def test_ignored_keyword(self):
        """Verify @ignore_on_fail keeps a method out of the hook"""
        with self.assertRaises(RuntimeError):
            self.keywords.get_keyword_names()
        self.assertEqual(self.keywords.failure_hooks, 0)

    def test_private_method_not_wrapped(self):
        """Verify private helpers are not wrapped"""
        with self.assertRaises(RuntimeError):
            self.keywords._current_table()
        self.assertEqual(self.keywords.failure_hooks, 0)

    def test_nested_keywords_run_hook_once(self):
        """Verify a failure raised through two keywords runs the hook once"""
        with self.assertRaises(AssertionError) as context:
            self.keywords.verification_suite_should_pass()
        self.assertEqual(self.keywords.failure_hooks, 1)
        self.assertTrue(context.exception._tau_failure_handled)

    def test_invoke_original_by_name(self):
        """Verify _invoke_original skips the hook"""
        with self.assertRaises(AssertionError):
            self.keywords._invoke_original('q_system_should_hold', 1)
        self.assertEqual(self.keywords.failure_hooks, 0)

    def test_invoke_original_passes_arguments(self):
        """Verify _invoke_original forwards arguments and accepts a bound keyword"""
        self.assertEqual(self.keywords._invoke_original(self.keywords.get_tau, 4), 'tau_4')
        self.assertIsNone(self.keywords._invoke_original('no_such_keyword'))


if __name__ == '__main__':
    unittest.main()
