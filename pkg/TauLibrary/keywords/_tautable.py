# -*- coding: utf-8 -*-
from TauLibrary.config import RunConfig
from TauLibrary.tables import new_table, render_rows, table_rank, table_rows
from TauLibrary.utils import TableCache, write_text
from .keywordgroup import KeywordGroup


class _TauTableKeywords(KeywordGroup):
    def __init__(self):
        self._cache = TableCache()

    # Public, open and close

    def open_tau_table(self, n=2, window='-4..4', alias=None):
        """Opens a memoized tau table and makes it current.

        Arguments:
        - ``n``: rank of the lattice, ``2`` for Hankel determinants or ``3``
          for the two-index GL3 lattice.
        - ``window``: inclusive ``lo..hi`` range of live coordinate indices.
          ``lo > hi`` gives the empty window, where every tau with ``k > 0``
          is zero.
        - ``alias``: optional name for `Switch Tau Table`.

        Returns the index of the new table.

        Examples:
        | ${gl2}= | Open Tau Table | 2 | -4..4 |
        | Open Tau Table | n=3 | window=-3..3 | alias=gl3 |
        """
        config = RunConfig.from_options(n=n, window=window).validate()
        table = new_table(config.n, config.window)
        self._info('Opened %s' % table.describe())
        return self._cache.register(table, alias)

    def switch_tau_table(self, index_or_alias):
        """Switches the current tau table by index or alias.

        Returns the index of the previously current table.

        Examples:
        | ${first}= | Open Tau Table | 2 |
        | Open Tau Table | 3 | alias=gl3 |
        | Switch Tau Table | ${first} |
        """
        old_index = self._cache.current_index
        if index_or_alias is None:
            self._cache.close()
        else:
            self._cache.switch(index_or_alias)
        return old_index

    def get_current_tau_table(self):
        """Returns the current tau table object, or ``None`` when none is open."""
        current = self._cache.current
        if current is self._cache._no_current:
            return None
        return current

    def get_tau_table_index(self):
        """Returns the index of the current tau table."""
        return self._cache.current_index

    def close_tau_table(self):
        """Closes the current tau table and drops its memoized entries."""
        self._info('Closing %s' % self._current_table().describe())
        self._cache.close()

    def close_all_tau_tables(self):
        """Closes every open tau table.

        Indices returned by `Open Tau Table` start again from ``1`` afterwards.

        Examples:
        | [Teardown] | Close All Tau Tables |
        """
        self._info('Closing all tau tables')
        self._cache.close_all()

    # Public, values

    def get_tau(self, k, alpha=0, l=0, beta=0):
        """Returns the tau function at a lattice point of the current table as canonical text.

        GL2 tables use ``k`` and ``alpha``; GL3 tables also use ``l`` and ``beta``.

        Examples:
        | ${tau}= | Get Tau | 2 | alpha=0 |
        | Should Be Equal | ${tau} | +1/1*c[0]*c[2] -1/1*c[1]^2 |
        """
        table = self._current_table()
        key = self._table_key(table, k, alpha, l, beta)
        return self._log_tau(key, table.tau(*key))

    def export_tau_table(self, path, k_max=2, l_max=1, alpha='-1..1', beta='0..0', format='csv'):
        """Writes rows of the current table to ``path`` as CSV or JSON and returns the absolute path.

        GL2 rows are ``k, alpha, tau`` for ``-1 <= k <= k_max``; GL3 rows are
        ``k, l, alpha, beta, tau``.

        Examples:
        | Export Tau Table | ${OUTPUT DIR}/gl2.csv | k_max=3 | alpha=-1..1 |
        """
        table = self._current_table()
        n = table_rank(table)
        config = RunConfig.from_options(n=n, window=tuple(table.window), k_max=k_max, l_max=l_max,
                                        alpha=alpha, beta=beta, format=format).validate()
        rows = table_rows(table, config.k_max, config.l_max, config.alphas, config.betas)
        written = write_text(path, render_rows(rows, n, table.window, config.format))
        self._info('Wrote %d tau rows to %s' % (len(rows), written))
        return written

    def log_tau_table(self, loglevel='INFO'):
        """Logs and returns every memoized entry of the current table.

        Logs nothing when no table is open. ``loglevel`` is ``DEBUG``,
        ``INFO`` (default), ``WARN`` or ``NONE``.

        Examples:
        | Log Tau Table | DEBUG |
        """
        table = self.get_current_tau_table()
        if table is None:
            self._info('No tau table is open')
            return ''
        lines = [table.describe()]
        lines += ['%s: %s' % (key, value.to_text()) for key, value in table.entries()]
        text = '\n'.join(lines)
        self._log(text, loglevel)
        return text

    # Private

    def _current_table(self):
        table = self.get_current_tau_table()
        if table is None:
            raise RuntimeError('No tau table is open')
        return table

    def _table_key(self, table, k, alpha=0, l=0, beta=0):
        k, alpha, l, beta = int(k), int(alpha), int(l), int(beta)
        if table_rank(table) == 2:
            if l or beta:
                raise ValueError('GL2 tables take no l or beta, got l=%d beta=%d' % (l, beta))
            return k, alpha
        return k, l, alpha, beta
