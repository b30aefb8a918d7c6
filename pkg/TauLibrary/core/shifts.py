# -*- coding: utf-8 -*-
"""Shift operators on the coordinate ring and the shift fields ``S^±(z)``."""

from dataclasses import dataclass

from robot.api import logger

from TauLibrary.core.algebra import FAMILIES, LaurentSeries, Poly, VarId, Window
from TauLibrary.errors import ConfigError


@dataclass(frozen=True)
class ShiftSpec:
    """One shift field ``S_x^±(z)`` acting on ``family`` over ``window``.

    Arguments:
    - ``family``: coordinate family the field moves (``c``, ``d`` or ``e``)
    - ``sign``: ``+`` for ``1 - S/z``, ``-`` for its inverse
    - ``trunc``: last power of ``z^-1`` kept by the ``-`` expansion
    - ``window``: live indices; anything outside is zero
    """
    family: str
    sign: str
    trunc: int
    window: Window

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError('unknown coordinate family %r' % (self.family,))
        if self.sign not in ('+', '-'):
            raise ConfigError('shift field sign must be + or -, got %r' % (self.sign,))
        if self.trunc < 0:
            raise ConfigError('shift field truncation must be >= 0, got %d' % self.trunc)
        object.__setattr__(self, 'window', Window(*self.window))


def shift_power(f, family, alpha, window=None):
    """``S_x^alpha``: multiplicative index shift, killing monomials free of ``family``."""
    f = Poly.coerce(f)

    def image(mono):
        moved = []
        touched = False
        for var, exp in mono:
            if var.family == family:
                touched = True
                index = var.index + alpha
                if window is not None and not window.covers(index):
                    return None
                moved.append((VarId(family, index), exp))
            else:
                moved.append((var, exp))
        if not touched:
            return None
        return tuple(sorted(moved))

    return f.map_monomials(image)


def _generator_image(spec, index):
    window = spec.window
    if spec.sign == '+':
        coeffs = {}
        if window.covers(index):
            coeffs[0] = Poly.variable(spec.family, index)
        if window.covers(index + 1):
            coeffs[-1] = -Poly.variable(spec.family, index + 1)
        return LaurentSeries(coeffs)
    coeffs = {-n: Poly.variable(spec.family, index + n)
              for n in range(spec.trunc + 1) if window.covers(index + n)}
    exact = window.empty or index + spec.trunc >= window.hi
    return LaurentSeries(coeffs, None if exact else spec.trunc)


def shift_field_apply(f, spec):
    """Apply the shift field of ``spec`` to ``f``; the result is a LaurentSeries in ``z^-1``."""
    f = Poly.coerce(f)
    powers = {}

    def power(index, exp):
        key = (index, exp)
        if key not in powers:
            if exp == 1:
                powers[key] = _generator_image(spec, index)
            else:
                powers[key] = power(index, exp - 1) * power(index, 1)
        return powers[key]

    total = LaurentSeries.zero()
    for mono, coeff in f.terms.items():
        series = LaurentSeries.monomial(Poly({tuple((v, e) for v, e in mono if v.family != spec.family): coeff}))
        for var, exp in mono:
            if var.family == spec.family:
                series = series * power(var.index, exp)
                if series.is_exact_zero():
                    break
        total = total + series
    if spec.sign == '-' and total.trunc is None and not f.is_constant():
        logger.debug('S-(z) of %d terms is exact on window %s' % (len(f), spec.window))
    return total


def partial_shift(f, spec, n):
    """``S^±[n] f``: the ``z^-n`` coefficient of the shift field applied to ``f``."""
    return shift_field_apply(f, spec).coefficient(-n)


def compose_fields(f, specs):
    """Apply several shift fields acting on distinct families, left to right."""
    specs = list(specs)
    families = [spec.family for spec in specs]
    if len(set(families)) != len(families):
        raise ConfigError('shift fields must act on distinct families, got %s' % ', '.join(families))
    if not specs:
        return LaurentSeries.monomial(Poly.coerce(f))
    series = shift_field_apply(f, specs[0])
    for spec in specs[1:]:
        out = LaurentSeries.zero(series.trunc)
        for exp, coeff in series.coeffs.items():
            out = out + shift_field_apply(coeff, spec).shift(exp)
        series = out
    return series


def restrict_to_window(f, window):
    """Set every variable outside ``window`` to zero."""
    return Poly.coerce(f).map_monomials(
        lambda mono: mono if all(window.covers(v.index) for v, _ in mono) else None)


def source_window(window, n):
    """Indices that a shift field truncated at ``z^-n`` can carry into ``window``."""
    window = Window(*window)
    return Window(window.lo - max(n, 1), window.hi)


def is_window_interior(f, window, shift=0):
    """True when ``f`` and its image under an index shift stay inside ``window``."""
    return all(window.covers(v.index) and window.covers(v.index + shift) for v in Poly.coerce(f).variables())

