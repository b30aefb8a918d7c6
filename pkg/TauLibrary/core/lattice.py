# -*- coding: utf-8 -*-
"""Helpers shared by the GL2 and GL3 lattices.

A *tau source* is anything with a ``tau(*key)`` method. Symbolic tables
return polynomials; :class:`SubstitutedTable` wraps one and returns the
exact rational value at a fixed point, so every connection-matrix builder
works in either mode.
"""

import random
from fractions import Fraction

from TauLibrary.core.algebra import FAMILIES, Poly, RatFunc, VarId
from TauLibrary.errors import ZeroDenominatorError


class SubstitutedTable:
    """Tau values of ``table`` evaluated at ``assignment``, memoized."""

    def __init__(self, table, assignment):
        self.table = table
        self.assignment = assignment
        self.window = table.window
        self._values = {}

    @property
    def numeric(self):
        return True

    def tau(self, *key):
        if key not in self._values:
            self._values[key] = self.table.tau(*key).substitute(self.assignment)
        return self._values[key]

    __call__ = tau

    def polynomial(self, *key):
        return self.table.tau(*key)


def is_numeric(source):
    return getattr(source, 'numeric', False)


def quotient(num, den):
    """``num / den`` as a RatFunc (symbolic) or a Fraction (numeric)."""
    if isinstance(num, (Poly, RatFunc)) or isinstance(den, (Poly, RatFunc)):
        if isinstance(den, RatFunc) or isinstance(num, RatFunc):
            return _rational(num) / _rational(den)
        return RatFunc(num, den)
    if not den:
        raise ZeroDenominatorError('tau denominator vanishes at this point')
    return Fraction(num) / Fraction(den)


def _rational(value):
    return value if isinstance(value, RatFunc) else RatFunc(value)


def random_assignment(window, families=FAMILIES, seed=0, spread=9):
    """Random nonzero rationals for every variable of ``families`` on ``window``."""
    rng = random.Random(seed)
    values = {}
    for family in families:
        for index in window.indices():
            value = Fraction(0)
            while not value:
                value = Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
            values[VarId(family, index)] = value
    return values


def random_distinct_rationals(count, seed=0, spread=50):
    rng = random.Random(seed)
    values = []
    while len(values) < count:
        value = Fraction(rng.randint(-spread, spread), rng.randint(1, 7))
        if value not in values:
            values.append(value)
    return values
