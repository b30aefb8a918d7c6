import unittest
import sys
import os
sys.path.append(os.getcwd())
import json

from TauLibrary.core.algebra import LaurentSeries, LoopMatrix, Poly
from TauLibrary.report import SCHEMA, CaseRecord, Residual, VerificationReport


class TestResidual(unittest.TestCase):
    """Residual construction."""

    def test_zero_polynomial_passes(self):
        """Verify a zero residual passes without a witness"""
        residual = Residual.of_value(Poly.constant(0))
        self.assertTrue(residual.passed)
        self.assertIsNone(residual.witness)

    def test_nonzero_polynomial_fails(self):
        """Verify a nonzero residual counts terms and keeps a witness"""
        residual = Residual.of_value(Poly.variable('c', 0) - Poly.variable('c', 1))
        self.assertEqual(residual.terms, 2)
        self.assertIn('c[1]', residual.witness)

    def test_matrix_witness(self):
        """Verify the first nonzero matrix entry is named"""
        matrix = LoopMatrix([[0, 0], [LaurentSeries({-1: 7}), 0]])
        residual = Residual.of_matrix(matrix)
        self.assertFalse(residual.passed)
        self.assertEqual(residual.witness, 'entry (1,0) z^-1: 7')

    def test_long_witness_is_clipped(self):
        """Verify witnesses are clipped"""
        residual = Residual.of_check(False, 'x' * 1000)
        self.assertTrue(residual.witness.endswith('...'))
        self.assertLessEqual(len(residual.witness), 240)

    def test_combine_names_first_failure(self):
        """Verify combined residuals add terms and report the first failing name"""
        combined = Residual.combine([('a', Residual(0)), ('b', Residual(2, 'w', 3)), ('c', Residual(1, 'v'))])
        self.assertEqual(combined.terms, 3)
        self.assertEqual(combined.witness, 'b: w')
        self.assertEqual(combined.truncation, 3)

    def test_error(self):
        """Verify errors become failing residuals"""
        residual = Residual.of_error(ZeroDivisionError('tau vanishes'))
        self.assertFalse(residual.passed)
        self.assertEqual(residual.witness, 'ZeroDivisionError: tau vanishes')


class TestVerificationReport(unittest.TestCase):
    """Reports and their rendering."""

    def _report(self):
        report = VerificationReport('q-system')
        report.add(CaseRecord.from_residual((2, 0, 'q'), {'k': 2}, Residual(0), wall_time=0.5))
        report.add(CaseRecord.from_residual((1, -1, 'q'), {'k': 1}, Residual(1, 'bad'), wall_time=0.25))
        return report

    def test_records_sorted_by_key(self):
        """Verify records are kept in key order"""
        self.assertEqual([record.key for record in self._report().records], [(1, -1, 'q'), (2, 0, 'q')])

    def test_summary_and_failures(self):
        """Verify pass state, failures and summary"""
        report = self._report()
        self.assertFalse(report.passed)
        self.assertEqual(len(report.failures), 1)
        self.assertEqual(report.summary(), 'suite q-system: 2 cases, 1 failed')

    def test_json_without_timings(self):
        """Verify JSON reports carry the schema and omit wall times by default"""
        data = json.loads(self._report().to_json())
        self.assertEqual(data['schema'], SCHEMA)
        self.assertEqual(data['cases'][0]['key'], [1, -1, 'q'])
        self.assertNotIn('wall_time', data['cases'][0])
        self.assertIn('wall_time', json.loads(self._report().to_json(timings=True))['cases'][0])

    def test_rendering_is_deterministic(self):
        """Verify equal reports render to identical text"""
        self.assertEqual(self._report().render('json'), self._report().render('json'))

    def test_csv(self):
        """Verify the CSV header and one line per case"""
        lines = self._report().render('csv').splitlines()
        self.assertEqual(lines[0], 'suite,key,parameters,residual_terms,passed,truncation,witness')
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].startswith('q-system,1 -1 q,'))

    def test_from_checks(self):
        """Verify named checks become records with the name appended to the key"""
        report = VerificationReport.from_checks('birkhoff-2', (1, 0), {}, [('unipotent', Residual(0))])
        self.assertEqual(report.records[0].key, (1, 0, 'unipotent'))
        self.assertTrue(report.passed)


if __name__ == '__main__':
    unittest.main()
