import unittest
import sys
import os
sys.path.append(os.getcwd())
from unittest.mock import patch

from TauLibrary.config import RunConfig, default_workers
from TauLibrary.errors import CapExceededError, ConfigError


class TestRunConfig(unittest.TestCase):
    """Run configuration parsing and caps."""

    def test_defaults(self):
        """Verify the defaults validate"""
        config = RunConfig(workers=1).validate()
        self.assertEqual(config.window, (-4, 4))
        self.assertEqual(list(config.alphas), [-1, 0, 1])
        self.assertEqual(config.window_width, 9)

    def test_from_options_parses_text(self):
        """Verify text options become ranges, integers and booleans"""
        config = RunConfig.from_options(window='-3..3', alpha='0..2', k_max='3', timings='false',
                                        workers=1, output=None)
        self.assertEqual(config.window, (-3, 3))
        self.assertEqual(config.alpha, (0, 2))
        self.assertEqual(config.k_max, 3)
        self.assertFalse(config.timings)
        self.assertIsNone(config.output)

    def test_unknown_option(self):
        """Verify unknown options are configuration errors"""
        with self.assertRaises(ConfigError):
            RunConfig.from_options(colour='red')

    def test_bad_integer(self):
        """Verify integers are checked"""
        with self.assertRaises(ConfigError):
            RunConfig.from_options(k_max='two')

    def test_minimums(self):
        """Verify lower bounds on counts"""
        for options in ({'truncation': 0}, {'samples': 0}, {'k_max': -1}, {'max_size': 0}, {'order': 0}):
            with self.assertRaises(ConfigError, msg=repr(options)):
                RunConfig(workers=1, **options).validate()

    def test_window_cap(self):
        """Verify the window width cap"""
        with self.assertRaises(CapExceededError):
            RunConfig(window=(-11, 10), workers=1).validate()
        RunConfig(window=(-10, 10), workers=1).validate()

    def test_k_cap_follows_rank(self):
        """Verify GL3 suites use the GL3 cap on k"""
        RunConfig(suite='q-system', k_max=5, workers=1).validate()
        with self.assertRaises(CapExceededError):
            RunConfig(suite='gl3-four', k_max=4, workers=1).validate()
        with self.assertRaises(CapExceededError):
            RunConfig(n=3, l_max=4, workers=1).validate()

    def test_fock_cap(self):
        """Verify the Fock suite caps k + l"""
        with self.assertRaises(CapExceededError):
            RunConfig(suite='fock-cross', k_max=3, l_max=2, workers=1).validate()

    def test_size_caps(self):
        """Verify the correlation and determinant size caps"""
        with self.assertRaises(CapExceededError):
            RunConfig(suite='correlations', max_size=5, workers=1).validate()
        with self.assertRaises(CapExceededError):
            RunConfig(suite='det-identities', max_size=7, workers=1).validate()
        self.assertEqual(RunConfig(workers=1).size_limit(2), 2)
        self.assertEqual(RunConfig(max_size=3, workers=1).size_limit(2), 3)

    def test_to_dict(self):
        """Verify ranges are written back as text"""
        data = RunConfig(workers=1).to_dict()
        self.assertEqual(data['window'], '-4..4')
        self.assertEqual(data['beta'], '0..0')

    @patch.dict(os.environ, {'TAU_WORKERS': '3'})
    def test_workers_from_environment(self):
        """Verify TAU_WORKERS sets the default worker count"""
        self.assertEqual(default_workers(), 3)
        self.assertEqual(RunConfig().workers, 3)

    @patch.dict(os.environ, {'TAU_WORKERS': 'many'})
    def test_bad_workers_environment(self):
        """Verify a non-integer TAU_WORKERS is a configuration error"""
        with self.assertRaises(ConfigError):
            default_workers()


if __name__ == '__main__':
    unittest.main()
