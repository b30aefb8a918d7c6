# -*- coding: utf-8 -*-
"""Tau tables as rows: building, rendering to CSV or JSON."""

import csv
import io
import json

from robot.api import logger

from TauLibrary.core.tau_gl2 import TauTable2
from TauLibrary.core.tau_gl3 import TauTable3
from TauLibrary.errors import ConfigError
from TauLibrary.report import SCHEMA

HEADERS = {
    2: ('k', 'alpha', 'tau'),
    3: ('k', 'l', 'alpha', 'beta', 'tau'),
}


def new_table(n, window):
    if n == 2:
        return TauTable2(window)
    if n == 3:
        return TauTable3(window)
    raise ConfigError('tau tables exist for n = 2 and n = 3, got %r' % (n,))


def table_rank(table):
    return 3 if isinstance(table, TauTable3) else 2


def table_rows(table, k_max, l_max, alphas, betas):
    """Rows in canonical text; GL2 rows start at ``k = -1``, GL3 rows at ``k = l = 0``."""
    if table_rank(table) == 2:
        rows = table.rows(k_max, alphas)
    else:
        rows = table.rows(k_max, l_max, alphas, betas)
    logger.debug('Altogether %d tau row%s.' % (len(rows), '' if len(rows) == 1 else 's'))
    return rows


def render_rows(rows, n, window, fmt='csv'):
    header = HEADERS[n]
    if fmt == 'json':
        document = {
            'schema': SCHEMA,
            'n': n,
            'window': '%d..%d' % tuple(window),
            'rows': [dict(zip(header, row)) for row in rows],
        }
        return json.dumps(document, indent=2, sort_keys=True) + '\n'
    if fmt != 'csv':
        raise ConfigError('unknown table format %r' % (fmt,))
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()
