# -*- coding: utf-8 -*-
import functools
import inspect

_WRAPPED = "__tau_on_failure__"


def _with_failure_hook(keyword):
    """Runs the registered failure keyword once per exception raised by ``keyword``."""
    if getattr(keyword, _WRAPPED, False):
        return keyword

    @functools.wraps(keyword)
    def wrapper(self, *args, **kwargs):
        try:
            return keyword(self, *args, **kwargs)
        except Exception as err:
            if hasattr(self, "_run_on_failure") and not getattr(err, "_tau_failure_handled", False):
                err._tau_failure_handled = True
                self._run_on_failure()
            raise

    setattr(wrapper, _WRAPPED, True)
    return wrapper


def ignore_on_fail(method):
    """Keeps ``method`` out of the failure hook."""
    setattr(method, _WRAPPED, True)
    return method


class KeywordGroupMetaClass(type):
    def __new__(mcs, clsname, bases, attrs):
        for name, value in list(attrs.items()):
            if name.startswith('_') or not inspect.isfunction(value):
                continue
            attrs[name] = _with_failure_hook(value)
        return super().__new__(mcs, clsname, bases, attrs)


class KeywordGroup(metaclass=KeywordGroupMetaClass):

    def _invoke_original(self, method, *args, **kwargs):
        """Calls a keyword without its failure hook.

        ``method`` is a keyword name or the bound keyword itself.
        """
        if isinstance(method, str):
            method = getattr(self, method, None)
        if method is None:
            return None
        original = getattr(method, "__wrapped__", None)
        if original is not None:
            return original(self, *args, **kwargs)
        return method(*args, **kwargs)
