# -*- coding: utf-8 -*-

from robot.libraries import BuiltIn

from .keywordgroup import KeywordGroup

BUILTIN = BuiltIn.BuiltIn()


class _RunOnFailureKeywords(KeywordGroup):

    def __init__(self):
        self._run_on_failure_keyword = None
        self._running_on_failure_routine = False

    # Public

    def register_keyword_to_run_on_failure(self, keyword):
        """Sets the keyword to execute when a TauLibrary keyword fails.

        ``keyword`` is the name of a keyword without arguments, from any
        library. The value ``Nothing`` disables the feature. The library
        default is `Log Tau Table`, which logs the current table so a failing
        identity can be read next to the values it was computed from.

        Returns the previously registered keyword so it can be restored.

        Examples:
        | Register Keyword To Run On Failure | Log Variables |
        | ${previous}= | Register Keyword To Run On Failure | Nothing |
        | Register Keyword To Run On Failure | ${previous} |
        """
        old_keyword_text = self._run_on_failure_keyword or "Nothing"
        new_keyword = None if keyword.strip().lower() == "nothing" else keyword
        self._run_on_failure_keyword = new_keyword
        self._info('%s will be run on failure.' % (new_keyword or "Nothing"))
        return old_keyword_text

    # Private

    def _run_on_failure(self):
        if self._run_on_failure_keyword is None or self._running_on_failure_routine:
            return
        self._running_on_failure_routine = True
        try:
            BUILTIN.run_keyword(self._run_on_failure_keyword)
        except Exception as err:
            self._run_on_failure_error(err)
        finally:
            self._running_on_failure_routine = False

    def _run_on_failure_error(self, err):
        message = "Keyword '%s' could not be run on failure: %s" % (self._run_on_failure_keyword, err)
        if hasattr(self, '_warn'):
            self._warn(message)
            return
        raise RuntimeError(message)
