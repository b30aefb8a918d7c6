# -*- coding: utf-8 -*-
"""Verification reports: one record per identity instance."""

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

from TauLibrary.core.algebra import coefficient_size

SCHEMA = 1
WITNESS_LIMIT = 240


def _clip(text):
    text = str(text)
    return text if len(text) <= WITNESS_LIMIT else text[:WITNESS_LIMIT - 3] + '...'


@dataclass(frozen=True)
class Residual:
    """Outcome of one check: nonzero term count and the first offending value."""
    terms: int
    witness: Optional[str] = None
    truncation: Optional[int] = None

    @property
    def passed(self):
        return self.terms == 0

    @classmethod
    def of_value(cls, value, truncation=None):
        terms = coefficient_size(value)
        return cls(terms, _clip(value) if terms else None, truncation)

    @classmethod
    def of_matrix(cls, matrix):
        first = matrix.first_nonzero()
        if first is None:
            return cls(0, None, matrix.trunc)
        (i, j), exponent, coeff = first
        return cls(matrix.term_count(), _clip('entry (%d,%d) z^%d: %s' % (i, j, exponent, coeff)), matrix.trunc)

    @classmethod
    def of_negative_part(cls, matrix, n):
        witness = matrix.negative_witness(n)
        if witness is None:
            return cls(0, None, n)
        count = sum(1 for m in range(1, n + 1) for row in matrix.rows for entry in row
                    if entry.known(-m) and entry.coefficient(-m))
        (i, j), m, coeff = witness
        return cls(count, _clip('entry (%d,%d) z^-%d: %s' % (i, j, m, coeff)), n)

    @classmethod
    def of_check(cls, ok, witness=None, truncation=None):
        return cls(0, None, truncation) if ok else cls(1, _clip(witness or 'check failed'), truncation)

    @classmethod
    def of_error(cls, err):
        return cls(1, _clip('%s: %s' % (type(err).__name__, err)))

    @classmethod
    def combine(cls, named):
        """Merge ``(name, Residual)`` pairs; the witness names the first failing check."""
        terms = 0
        witness = None
        truncs = []
        for name, residual in named:
            terms += residual.terms
            if residual.truncation is not None:
                truncs.append(residual.truncation)
            if witness is None and not residual.passed:
                witness = _clip('%s: %s' % (name, residual.witness))
        return cls(terms, witness, min(truncs) if truncs else None)


@dataclass(frozen=True)
class CaseRecord:
    key: tuple
    parameters: dict
    residual_terms: int
    witness: Optional[str]
    passed: bool
    truncation: Optional[int] = None
    wall_time: float = 0.0

    @classmethod
    def from_residual(cls, key, parameters, residual, wall_time=0.0):
        return cls(tuple(key), dict(parameters), residual.terms, residual.witness,
                   residual.passed, residual.truncation, wall_time)

    def to_dict(self, timings=False):
        out = {
            'key': list(self.key),
            'parameters': self.parameters,
            'residual_terms': self.residual_terms,
            'witness': self.witness,
            'passed': self.passed,
            'truncation': self.truncation,
        }
        if timings:
            out['wall_time'] = round(self.wall_time, 6)
        return out


def _sort_key(record):
    return tuple((0, part) if isinstance(part, int) else (1, str(part)) for part in record.key)


@dataclass
class VerificationReport:
    suite: str
    records: list = field(default_factory=list)

    def add(self, record):
        self.records.append(record)
        self.records.sort(key=_sort_key)

    def extend(self, records):
        self.records.extend(records)
        self.records.sort(key=_sort_key)

    @classmethod
    def from_checks(cls, suite, key, parameters, named):
        report = cls(suite)
        report.extend(CaseRecord.from_residual(tuple(key) + (name,), parameters, residual)
                      for name, residual in named)
        return report

    def __len__(self):
        return len(self.records)

    @property
    def passed(self):
        return all(record.passed for record in self.records)

    @property
    def failures(self):
        return [record for record in self.records if not record.passed]

    def summary(self):
        failed = len(self.failures)
        return 'suite %s: %d case%s, %d failed' % (
            self.suite, len(self.records), ['s', ''][len(self.records) == 1], failed)

    def to_dict(self, timings=False):
        return {
            'schema': SCHEMA,
            'suite': self.suite,
            'passed': self.passed,
            'cases': [record.to_dict(timings) for record in self.records],
        }

    def to_json(self, timings=False):
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + '\n'

    def to_csv(self, timings=False):
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        header = ['suite', 'key', 'parameters', 'residual_terms', 'passed', 'truncation', 'witness']
        if timings:
            header.append('wall_time')
        writer.writerow(header)
        for record in self.records:
            row = [self.suite, ' '.join(str(part) for part in record.key),
                   json.dumps(record.parameters, sort_keys=True), record.residual_terms,
                   'true' if record.passed else 'false',
                   '' if record.truncation is None else record.truncation, record.witness or '']
            if timings:
                row.append('%.6f' % record.wall_time)
            writer.writerow(row)
        return buffer.getvalue()

    def render(self, fmt='json', timings=False):
        if fmt == 'csv':
            return self.to_csv(timings)
        return self.to_json(timings)
