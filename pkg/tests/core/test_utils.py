import unittest
import sys
import os
import pathlib
import tempfile
sys.path.append(os.getcwd())

from TauLibrary.core.tau_gl2 import TauTable2
from TauLibrary.errors import ConfigError
from TauLibrary.utils import TableCache, _normalize_path, format_range, parse_range, read_file, write_text


class TestRanges(unittest.TestCase):

    def test_01_range_text(self):
        """Should parse lo..hi including negative bounds and spaces"""
        self.assertEqual(parse_range('-1..1'), (-1, 1))
        self.assertEqual(parse_range(' -4 .. -2 '), (-4, -2))

    def test_02_single_integer(self):
        """Should read a single integer as a one-point range"""
        self.assertEqual(parse_range('3'), (3, 3))
        self.assertEqual(parse_range(-2), (-2, -2))

    def test_03_pairs_pass_through(self):
        """Should accept tuples and lists of two bounds"""
        self.assertEqual(parse_range((2, 5)), (2, 5))
        self.assertEqual(parse_range(['0', '1']), (0, 1))

    def test_04_empty_range_allowed(self):
        """Should accept lo > hi as an empty range"""
        self.assertEqual(parse_range('1..0'), (1, 0))

    def test_05_bad_values(self):
        """Should reject text that is not a range"""
        for value in ('a..b', '1..', '1,2', (1, 2, 3), True):
            with self.assertRaises(ConfigError, msg=repr(value)):
                parse_range(value)

    def test_06_format_range(self):
        """Should format bounds back to lo..hi"""
        self.assertEqual(format_range((-3, 3)), '-3..3')


class TestFiles(unittest.TestCase):

    def test_01_write_creates_directories(self):
        """Should create missing directories and return the absolute path"""
        with tempfile.TemporaryDirectory() as root:
            path = write_text(os.path.join(root, 'out', 'tau.csv'), 'k,alpha,tau\n')
            self.assertTrue(os.path.isabs(path))
            self.assertEqual(read_file(path), 'k,alpha,tau\n')

    def test_02_write_uses_unix_newlines(self):
        """Should write \\n line endings on every platform"""
        with tempfile.TemporaryDirectory() as root:
            path = write_text(os.path.join(root, 'report.json'), '{}\n{}\n')
            with open(path, 'rb') as f:
                self.assertEqual(f.read(), b'{}\n{}\n')

    def test_03_normalize_path(self):
        """Should collapse up-level references and accept pathlib paths"""
        self.assertEqual(_normalize_path('reports/../tau.json'), 'tau.json')
        self.assertEqual(_normalize_path(pathlib.Path('a') / 'b'), os.path.join('a', 'b'))
        self.assertEqual(_normalize_path(''), '.')


class TestTableCache(unittest.TestCase):

    def setUp(self):
        self.cache = TableCache()

    def test_01_register_and_switch(self):
        """Should register tables by alias and switch between them"""
        first = TauTable2((-2, 2))
        second = TauTable2((-3, 3))
        self.assertEqual(self.cache.register(first, 'small'), 1)
        self.assertEqual(self.cache.register(second), 2)
        self.cache.switch('small')
        self.assertIs(self.cache.current, first)
        self.assertEqual(len(self.cache.tables), 2)

    def test_02_close_clears_entries(self):
        """Should drop memoized entries of the closed table"""
        table = TauTable2((-2, 2))
        table.tau(2, 0)
        self.cache.register(table)
        self.cache.close()
        self.assertEqual(len(table), 0)
        self.assertEqual(self.cache.get_open_tables(), [])
        self.assertIsNone(self.cache.current_index)

    def test_03_close_empty_table(self):
        """Should close a current table that has no entries yet"""
        table = TauTable2((-2, 2))
        self.cache.register(table)
        self.cache.close()
        self.assertIn(table, self.cache._closed)

    def test_04_close_without_current(self):
        """Should do nothing when no table is current"""
        self.cache.close()
        self.assertEqual(self.cache.get_open_tables(), [])

    def test_05_close_all(self):
        """Should clear every table and empty the cache"""
        tables = [TauTable2((-2, 2)), TauTable2((-1, 1))]
        for table in tables:
            table.tau(1, 0)
            self.cache.register(table)
        self.cache.close_all()
        self.assertEqual([len(table) for table in tables], [0, 0])
        self.assertEqual(len(self.cache.tables), 0)


if __name__ == '__main__':
    unittest.main()
