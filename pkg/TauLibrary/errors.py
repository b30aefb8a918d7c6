# -*- coding: utf-8 -*-
"""Exceptions raised by TauLibrary."""


class TauError(Exception):
    """Base class of every error raised by the library."""


class ConfigError(TauError):
    """Invalid run configuration or keyword arguments."""


class CapExceededError(ConfigError):

    def __init__(self, cap, value, limit):
        super().__init__('%s %s exceeds the cap of %s' % (cap, value, limit))
        self.cap = cap
        self.value = value
        self.limit = limit


class NotInvertibleError(TauError):

    def __init__(self, message='series not invertible at this truncation'):
        super().__init__(message)


class NonMonomialDeterminantError(TauError):

    def __init__(self, det):
        super().__init__('determinant %s is not a unit monomial on the known range' % det)
        self.det = det


class ZeroDenominatorError(TauError, ZeroDivisionError):
    pass


class TauVanishesError(TauError):

    def __init__(self, message='tau function vanishes at this point'):
        super().__init__(message)


class MissingVariableError(TauError, KeyError):

    def __init__(self, variable):
        super().__init__('no value assigned to %s' % (variable,))
        self.variable = variable

    def __str__(self):
        return self.args[0]


class NotDivisibleError(TauError, ArithmeticError):
    pass
