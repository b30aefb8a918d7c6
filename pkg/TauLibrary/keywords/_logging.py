# -*- coding: utf-8 -*-

from robot.api import logger
from robot.libraries.BuiltIn import BuiltIn
from robot.libraries.BuiltIn import RobotNotRunningError

from .keywordgroup import KeywordGroup

# ${TAU_LOG_LEVEL} is the lowest level that still reaches the log.
LEVELS = {'DEBUG': 0, 'INFO': 1, 'WARN': 2, 'NONE': 3}
TAU_TEXT_SHOWN = 200


def describe_case(record):
    """``'2 0 q-system: <witness>'`` for a report record."""
    key = ' '.join(str(part) for part in record.key)
    return '%s: %s' % (key, record.witness) if record.witness else key


class _LoggingKeywords(KeywordGroup):

    @property
    def _log_level(self):
        try:
            level = BuiltIn().get_variable_value("${TAU_LOG_LEVEL}", default='DEBUG')
        except RobotNotRunningError:
            level = 'DEBUG'
        return str(level).upper()

    def _enabled(self, level):
        threshold = LEVELS.get(self._log_level, LEVELS['DEBUG'])
        return LEVELS[level] >= threshold

    def _debug(self, message):
        if self._enabled('DEBUG'):
            logger.debug(message)

    def _info(self, message):
        if self._enabled('INFO'):
            logger.info(message)

    def _warn(self, message):
        if self._enabled('WARN'):
            logger.warn(message)

    def _log(self, message, level='INFO'):
        """Logs at a keyword-supplied level; ``NONE`` logs nothing and unknown levels log as INFO."""
        level = str(level).upper()
        if level == 'NONE':
            return
        {'DEBUG': self._debug, 'WARN': self._warn}.get(level, self._info)(message)

    def _log_list(self, items, what='item'):
        msg = ['Altogether %d %s%s.' % (len(items), what, ['s', ''][len(items) == 1])]
        for index, item in enumerate(items):
            msg.append('%d: %s' % (index + 1, item))
        self._info('\n'.join(msg))
        return items

    def _log_tau(self, key, value):
        text = value.to_text()
        shown = text if len(text) <= TAU_TEXT_SHOWN else text[:TAU_TEXT_SHOWN] + ' ...'
        self._debug('tau%s has %d term%s: %s' % (key, len(value), ['s', ''][len(value) == 1], shown))
        return text

    def _log_report(self, report):
        self._info(report.summary())
        if report.failures:
            self._log_list([describe_case(record) for record in report.failures], 'failing case')
