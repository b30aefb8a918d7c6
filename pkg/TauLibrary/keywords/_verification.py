# -*- coding: utf-8 -*-
from TauLibrary.config import RunConfig, _as_bool
from TauLibrary.core import fock_oracle, tau_gl2, tau_gl3
from TauLibrary.report import Residual
from TauLibrary.suites import list_suites, run_suite
from TauLibrary.tables import table_rank
from TauLibrary.utils import write_text
from ._logging import describe_case
from .keywordgroup import KeywordGroup

FAILURES_SHOWN = 5


class _VerificationKeywords(KeywordGroup):

    # Public, suites

    def list_verification_suites(self):
        """Logs and returns the names of every verification suite.

        Examples:
        | @{suites}= | List Verification Suites |
        """
        names = [name for name, _ in list_suites()]
        self._log_list(['%s: %s' % pair for pair in list_suites()], 'suite')
        return names

    def run_verification_suite(self, suite, **options):
        """Runs ``suite`` and returns its report without failing.

        ``options`` use the command line names with underscores: ``window``,
        ``k_max``, ``l_max``, ``alpha``, ``beta``, ``truncation``, ``order``,
        ``seed``, ``samples``, ``max_size`` and ``workers``. Ranges are
        written ``lo..hi``.

        Examples:
        | ${report}= | Run Verification Suite | q-system | k_max=3 | window=-4..4 |
        | Should Be True | ${report.passed} |
        """
        config = RunConfig.from_options(suite=suite, **options)
        self._debug('Running %s with %s' % (suite, config.to_dict()))
        report = run_suite(config)
        self._log_report(report)
        return report

    def verification_suite_should_pass(self, suite, **options):
        """Runs ``suite`` like `Run Verification Suite` and fails if any case fails.

        The failure message names the first failing cases and their witnesses.

        Examples:
        | Verification Suite Should Pass | desnanot-jacobi | k_max=4 |
        | Verification Suite Should Pass | det-identities | max_size=3 | seed=11 |
        """
        report = self.run_verification_suite(suite, **options)
        if not report.passed:
            shown = report.failures[:FAILURES_SHOWN]
            details = '; '.join(describe_case(record) for record in shown)
            raise AssertionError('%s. First failures: %s' % (report.summary(), details))
        return report

    def write_verification_report(self, report, path, format='json', timings=False):
        """Writes ``report`` to ``path`` as JSON (default) or CSV and returns the absolute path.

        Wall times are included only when ``timings`` is true, so reports of
        identical runs are byte-identical.

        Examples:
        | ${report}= | Run Verification Suite | q-system |
        | Write Verification Report | ${report} | ${OUTPUT DIR}/q-system.json |
        """
        RunConfig(format=format).validate()
        written = write_text(path, report.render(format, _as_bool(timings)))
        self._info('Wrote %s report to %s' % (report.suite, written))
        return written

    # Public, single identities on the current table

    def q_system_should_hold(self, k, alpha=0):
        """Fails unless the Q-system holds at ``(k, alpha)`` in the current GL2 table.

        Examples:
        | Open Tau Table | 2 | -4..4 |
        | Q System Should Hold | 2 | alpha=1 |
        """
        table = self._current_table_of_rank(2)
        residual = Residual.of_value(tau_gl2.qsystem_residual(int(k), int(alpha), table))
        self._assert_residual(residual, 'Q-system at k=%s alpha=%s' % (k, alpha))

    def birkhoff_factorization_should_hold(self, k, alpha=0, l=0, beta=0, truncation=5):
        """Fails unless the tau formula gives the Birkhoff factor of the current table's group element.

        ``truncation`` is the number of negative powers of ``z`` checked.

        Examples:
        | Open Tau Table | 2 | -3..3 |
        | Birkhoff Factorization Should Hold | 1 | truncation=4 |
        """
        table = self._current_table()
        k, alpha, l, beta, truncation = int(k), int(alpha), int(l), int(beta), int(truncation)
        if table_rank(table) == 2:
            self._table_key(table, k, alpha, l, beta)
            report = tau_gl2.verify_birkhoff2(k, alpha, tuple(table.window), truncation, table=table)
        else:
            report = tau_gl3.verify_birkhoff3(k, l, alpha, beta, tuple(table.window), truncation, table=table)
        self._log_report(report)
        if not report.passed:
            raise AssertionError('Birkhoff factorization fails at %s' % describe_case(report.failures[0]))

    def tau_should_match_fock_oracle(self, k, alpha=0, l=0, beta=0):
        """Fails unless the current table's tau equals the fermionic matrix element.

        Examples:
        | Open Tau Table | 3 | -3..3 |
        | Tau Should Match Fock Oracle | 1 | l=1 |
        """
        table = self._current_table()
        key = self._table_key(table, k, alpha, l, beta)
        n = table_rank(table)
        if n == 2:
            fock = fock_oracle.tau_via_fock(2, key[0], alpha=key[1], window=tuple(table.window))
        else:
            fock = fock_oracle.tau_via_fock(3, *key, window=tuple(table.window))
        residual = Residual.of_value(table.tau(*key) - fock)
        self._assert_residual(residual, 'Fock oracle at %s' % (key,))

    # Private

    def _current_table_of_rank(self, n):
        table = self._current_table()
        if table_rank(table) != n:
            raise RuntimeError('The current tau table has rank %d, this keyword needs %d'
                               % (table_rank(table), n))
        return table

    def _assert_residual(self, residual, what):
        if not residual.passed:
            raise AssertionError('%s does not hold: %d residual terms, first %s'
                                 % (what, residual.terms, residual.witness))
        self._info('%s holds' % what)
