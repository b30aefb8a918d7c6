import unittest
import sys
import os
import json
sys.path.append(os.getcwd())

from TauLibrary.core.tau_gl2 import TauTable2
from TauLibrary.core.tau_gl3 import TauTable3
from TauLibrary.errors import ConfigError
from TauLibrary.tables import new_table, render_rows, table_rank, table_rows


class TestTables(unittest.TestCase):

    def test_new_table_by_rank(self):
        """Verify n selects the GL2 or GL3 table"""
        self.assertIsInstance(new_table(2, (-2, 2)), TauTable2)
        self.assertIsInstance(new_table(3, (-2, 2)), TauTable3)
        self.assertEqual(table_rank(new_table(3, (-2, 2))), 3)
        with self.assertRaises(ConfigError):
            new_table(4, (-2, 2))

    def test_gl2_rows_start_below_zero(self):
        """Verify GL2 rows start at k = -1"""
        rows = table_rows(new_table(2, (-2, 2)), 1, 0, [0], [0])
        self.assertEqual([row[0] for row in rows], [-1, 0, 1])

    def test_gl3_rows_start_at_origin(self):
        """Verify GL3 rows start at k = l = 0 with a trivial tau"""
        rows = table_rows(new_table(3, (-1, 1)), 1, 1, [0], [0])
        self.assertEqual(len(rows), 4)
        self.assertEqual(rows[0], (0, 0, 0, 0, '+1/1'))

    def test_render_csv(self):
        """Verify CSV output has the header and one line per row"""
        text = render_rows([(-1, 0, '0'), (0, 0, '+1/1')], 2, (-2, 2), 'csv')
        self.assertEqual(text, 'k,alpha,tau\n-1,0,0\n0,0,+1/1\n')

    def test_render_json(self):
        """Verify JSON output names the window and each column"""
        document = json.loads(render_rows([(0, 0, 1, 0, '+1/1')], 3, (-1, 1), 'json'))
        self.assertEqual(document['n'], 3)
        self.assertEqual(document['window'], '-1..1')
        self.assertEqual(document['rows'], [{'k': 0, 'l': 0, 'alpha': 1, 'beta': 0, 'tau': '+1/1'}])

    def test_unknown_format(self):
        """Verify an unknown format is refused"""
        with self.assertRaises(ConfigError):
            render_rows([], 2, (0, 0), 'xml')


if __name__ == '__main__':
    unittest.main()
