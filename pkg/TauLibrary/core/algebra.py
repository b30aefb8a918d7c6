# -*- coding: utf-8 -*-
"""Exact arithmetic over the rationals.

Polynomials in indexed variables (``c[-3]``, ``d[2]``, ...) are sympy ring
elements over ``QQ``; determinants, rational linear systems and series
inversion go through sympy's domain matrices and ring series. This module
adds the pieces sympy has no notion of: indexed variable families, the
canonical text form, rational functions with a factored denominator,
truncated Laurent series in ``z^-1`` and small matrices of such series.
Every value is immutable once built.
"""

import operator
from fractions import Fraction
from functools import reduce
from itertools import permutations
from types import MappingProxyType
from typing import NamedTuple

from sympy import QQ, Dummy, Symbol
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import lex
from sympy.polys.ring_series import rs_series_inversion
from sympy.polys.rings import PolyRing

from TauLibrary.errors import (MissingVariableError, NonMonomialDeterminantError,
                               NotDivisibleError, NotInvertibleError, ZeroDenominatorError)

# Coordinate families of the group element, then the spectral variables used
# by the correlation and determinant suites.
FAMILIES = ('c', 'd', 'e')
SPECTRAL_FAMILIES = ('w', 'x', 'y', 'z')


class VarId(NamedTuple):
    family: str
    index: int

    def __str__(self):
        return '%s[%d]' % (self.family, self.index)


class Window(NamedTuple):
    """Inclusive range ``lo..hi`` of live variable indices; ``lo > hi`` is empty."""
    lo: int
    hi: int

    @property
    def empty(self):
        return self.lo > self.hi

    @property
    def width(self):
        return max(0, self.hi - self.lo + 1)

    def covers(self, index):
        return self.lo <= index <= self.hi

    def indices(self):
        return range(self.lo, self.hi + 1)

    def __str__(self):
        return '%d..%d' % (self.lo, self.hi)


# ==== coefficients ====

def _qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(value):
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


# ==== polynomial rings ====

class _Generators:
    """Variables in order of first use.

    Ring ``k`` is ``QQ[v_0, ..., v_{k-1}]`` over the first ``k`` variables, so
    every ring is a prefix of the next and lifting an element only pads its
    exponent vectors with zeros.
    """

    def __init__(self):
        self.variables = []
        self.positions = {}
        self._rings = {}

    def position(self, var):
        pos = self.positions.get(var)
        if pos is None:
            pos = self.positions[var] = len(self.variables)
            self.variables.append(var)
        return pos

    def ring(self, count=None):
        if count is None:
            count = len(self.variables)
        ring = self._rings.get(count)
        if ring is None:
            ring = PolyRing([Symbol(str(var)) for var in self.variables[:count]], QQ, lex)
            self._rings[count] = ring
        return ring


_GENERATORS = _Generators()


def _lift(element, ring):
    if element.ring is ring:
        return element
    pad = (0,) * (ring.ngens - element.ring.ngens)
    return ring.from_dict({vector + pad: coeff for vector, coeff in element.items()})


def _common(*elements):
    """The elements moved into the largest of their rings."""
    ring = max((element.ring for element in elements), key=lambda r: r.ngens)
    return ring, [_lift(element, ring) for element in elements]


def _mono_text(mono):
    return ''.join('*%s' % (var,) if exp == 1 else '*%s^%d' % (var, exp) for var, exp in mono)


# ==== polynomials ====

class Poly:
    """Polynomial with rational coefficients in :class:`VarId` variables.

    ``terms`` maps monomials, tuples of ``(VarId, exponent)`` pairs sorted by
    variable, to :class:`fractions.Fraction` coefficients.
    """

    __slots__ = ('_element', '_terms', '_hash')

    def __init__(self, terms=None):
        items = [(mono, Fraction(coeff)) for mono, coeff in (terms or {}).items() if coeff]
        for mono, _ in items:
            for var, _ in mono:
                _GENERATORS.position(var)
        ring = _GENERATORS.ring() if items else _GENERATORS.ring(0)
        merged = {}
        for mono, coeff in items:
            vector = [0] * ring.ngens
            for var, exp in mono:
                vector[_GENERATORS.positions[var]] += exp
            vector = tuple(vector)
            merged[vector] = merged.get(vector, 0) + coeff
        self._element = ring.from_dict({vector: _qq(coeff) for vector, coeff in merged.items() if coeff})
        self._terms = None
        self._hash = None

    @classmethod
    def _wrap(cls, element):
        poly = cls.__new__(cls)
        poly._element = element
        poly._terms = None
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, value):
        return cls._wrap(_GENERATORS.ring(0).ground_new(_qq(value)))

    @classmethod
    def variable(cls, family, index, exponent=1):
        pos = _GENERATORS.position(VarId(family, index))
        return cls._wrap(_GENERATORS.ring().gens[pos] ** exponent)

    @classmethod
    def monomial(cls, powers, coeff=1):
        mono = tuple(sorted((var, exp) for var, exp in powers.items() if exp))
        return cls({mono: coeff})

    @staticmethod
    def coerce(value):
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return Poly.constant(value)
        raise TypeError('cannot use %r as a polynomial' % (value,))

    @property
    def terms(self):
        if self._terms is None:
            variables = _GENERATORS.variables
            terms = {}
            for vector, coeff in self._element.items():
                mono = tuple(sorted((variables[pos], exp) for pos, exp in enumerate(vector) if exp))
                terms[mono] = _fraction(coeff)
            self._terms = terms
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._element)

    def __bool__(self):
        return bool(self._element)

    def is_constant(self):
        return self._element.is_ground

    def constant_value(self):
        return _fraction(self._element.get(self._element.ring.zero_monom, QQ.zero))

    def variables(self):
        return {var for mono in self.terms for var, _ in mono}

    def family_degrees(self, families=FAMILIES):
        """Set of per-family degree tuples occurring in the monomials."""
        return {tuple(sum(exp for var, exp in mono if var.family == fam) for fam in families)
                for mono in self.terms}

    def leading_coefficient(self):
        """Coefficient of the first monomial in canonical order."""
        terms = self.terms
        return terms[min(terms)] if terms else Fraction(0)

    # Arithmetic

    @staticmethod
    def _other(value):
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return Poly.constant(value)
        return NotImplemented

    def __neg__(self):
        return Poly._wrap(-self._element)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = Poly._other(other)
        if other is NotImplemented:
            return NotImplemented
        _, (a, b) = _common(self._element, other._element)
        return Poly._wrap(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        other = Poly._other(other)
        if other is NotImplemented:
            return NotImplemented
        _, (a, b) = _common(self._element, other._element)
        return Poly._wrap(a - b)

    def __rsub__(self, other):
        other = Poly._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def scale(self, factor):
        factor = Fraction(factor)
        if not factor:
            return ZERO
        return Poly._wrap(self._element.mul_ground(_qq(factor)))

    def __mul__(self, other):
        other = Poly._other(other)
        if other is NotImplemented:
            return NotImplemented
        _, (a, b) = _common(self._element, other._element)
        return Poly._wrap(a * b)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        if exponent == 0:
            return ONE
        return Poly._wrap(self._element ** exponent)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDenominatorError('division of a polynomial by zero')
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, Poly):
            if other.is_constant():
                return self / other.constant_value()
            quotient = self.try_divide(other)
            if quotient is None:
                raise NotDivisibleError('%s is not divisible by %s' % (self, other))
            return quotient
        return NotImplemented

    def try_divide(self, divisor):
        """Exact quotient by ``divisor`` or None when it leaves a remainder."""
        if not divisor:
            raise ZeroDenominatorError('division of a polynomial by zero')
        _, (a, b) = _common(self._element, divisor._element)
        quotient, remainder = a.div(b)
        return None if remainder else Poly._wrap(quotient)

    # Comparison

    def __eq__(self, other):
        other = Poly._other(other)
        if other is NotImplemented:
            return NotImplemented
        _, (a, b) = _common(self._element, other._element)
        return a == b

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __reduce__(self):
        return Poly, (dict(self.terms),)

    # Evaluation and rewriting

    def substitute(self, assignment):
        """Exact value at ``assignment`` (mapping VarId -> Rational)."""
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            value = coeff
            for var, exp in mono:
                try:
                    value *= Fraction(assignment[var]) ** exp
                except KeyError:
                    raise MissingVariableError(var) from None
            total += value
        return total

    def map_monomials(self, function):
        """Rebuild the polynomial sending each monomial through ``function``.

        ``function`` returns a replacement monomial tuple, or None to drop it.
        """
        out = {}
        for mono, coeff in self.terms.items():
            image = function(mono)
            if image is None:
                continue
            out[image] = out.get(image, 0) + coeff
        return Poly(out)

    # Text

    def to_text(self):
        terms = self.terms
        if not terms:
            return '0'
        parts = []
        for mono in sorted(terms):
            coeff = terms[mono]
            sign = '-' if coeff < 0 else '+'
            parts.append('%s%d/%d%s' % (sign, abs(coeff.numerator), coeff.denominator, _mono_text(mono)))
        return ' '.join(parts)

    __str__ = to_text

    def __repr__(self):
        return 'Poly(%r)' % self.to_text()


ZERO = Poly.constant(0)
ONE = Poly.constant(1)


# ==== determinants and rational linear algebra ====

def _check_square(matrix):
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise ValueError('determinant needs a square matrix')
    return size


def det_fraction_free(matrix):
    """Determinant of a square matrix of polynomials (or rationals).

    Bareiss elimination in sympy's domain matrices; every division is exact.
    """
    size = _check_square(matrix)
    if size == 0:
        return ONE
    entries = [Poly.coerce(entry)._element for row in matrix for entry in row]
    ring, entries = _common(*entries)
    if not ring.ngens:
        return Poly.constant(det_rational([[_fraction(entry.get((), QQ.zero)) for entry in entries[i:i + size]]
                                           for i in range(0, size * size, size)]))
    rows = [entries[i:i + size] for i in range(0, size * size, size)]
    return Poly._wrap(DomainMatrix(rows, (size, size), ring.to_domain()).det())


def permutation_sign(perm):
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def det_leibniz(matrix):
    """Determinant as the signed sum over all permutations."""
    size = _check_square(matrix)
    total = ZERO
    for perm in permutations(range(size)):
        term = reduce(operator.mul, (matrix[i][perm[i]] for i in range(size)), ONE)
        total = total + term if permutation_sign(perm) > 0 else total - term
    return total


def _rational_matrix(rows, width):
    return DomainMatrix([[_qq(x) for x in row] for row in rows], (len(rows), width), QQ)


def det_rational(matrix):
    """Determinant of a matrix of rationals."""
    size = _check_square(matrix)
    if size == 0:
        return Fraction(1)
    return _fraction(_rational_matrix(matrix, size).det())


def solve_linear(matrix, rhs):
    """Unique solution of an (over)determined rational system ``matrix · x = rhs``.

    Raises NotInvertibleError when the system is inconsistent or its solution
    is not unique.
    """
    unknowns = len(matrix[0]) if matrix else 0
    if not unknowns:
        return []
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    echelon, pivots = _rational_matrix(augmented, unknowns + 1).rref()
    if unknowns in pivots:
        raise NotInvertibleError('linear system is inconsistent')
    if len(pivots) < unknowns:
        raise NotInvertibleError('linear system is singular')
    reduced = echelon.to_Matrix()
    return [Fraction(int(reduced[i, unknowns].p), int(reduced[i, unknowns].q)) for i in range(unknowns)]


# ==== rational functions ====

def _normalize_factor(poly):
    scale = poly.leading_coefficient()
    return poly / scale, scale


def _factor_product(target, present):
    result = ONE
    for factor, mult in target.items():
        extra = mult - present.get(factor, 0)
        if extra:
            result = result * factor ** extra
    return result


def _lcm(a, b):
    merged = dict(a)
    for factor, mult in b.items():
        if merged.get(factor, 0) < mult:
            merged[factor] = mult
    return merged


class RatFunc:
    """Quotient of polynomials, denominator kept as a multiset of factors.

    Factors are normalized to leading coefficient 1 so that sums only need a
    factor-wise lcm. Equality is decided by cross-multiplication.
    """

    __slots__ = ('num', '_factors')

    def __init__(self, num, den=1):
        num = Poly.coerce(num)
        den = Poly.coerce(den)
        if not den:
            raise ZeroDenominatorError('rational function with zero denominator')
        factors = {}
        if den.is_constant():
            num = num / den.constant_value()
        elif num:
            factor, scale = _normalize_factor(den)
            num = num / scale
            factors[factor] = 1
        self.num = num
        self._factors = factors

    @classmethod
    def _make(cls, num, factors):
        value = cls.__new__(cls)
        value.num = num
        value._factors = {f: m for f, m in factors.items() if m} if num else {}
        return value._cancelled()

    def _cancelled(self):
        if not self._factors:
            return self
        num = self.num
        factors = dict(self._factors)
        for factor in list(factors):
            while factors[factor]:
                quotient = num.try_divide(factor)
                if quotient is None:
                    break
                num = quotient
                factors[factor] -= 1
            if not factors[factor]:
                del factors[factor]
        self.num = num
        self._factors = factors
        return self

    @staticmethod
    def _other(value):
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (Poly, int, Fraction)):
            return RatFunc(value)
        return NotImplemented

    @property
    def den(self):
        return _factor_product(self._factors, {})

    @property
    def factors(self):
        return MappingProxyType(self._factors)

    def __bool__(self):
        return bool(self.num)

    def __neg__(self):
        return RatFunc._make(-self.num, self._factors)

    def __add__(self, other):
        other = RatFunc._other(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        lcm = _lcm(self._factors, other._factors)
        num = (self.num * _factor_product(lcm, self._factors)
               + other.num * _factor_product(lcm, other._factors))
        return RatFunc._make(num, lcm)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatFunc._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = RatFunc._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = RatFunc._other(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc(ZERO)
        factors = dict(self._factors)
        for factor, mult in other._factors.items():
            factors[factor] = factors.get(factor, 0) + mult
        return RatFunc._make(self.num * other.num, factors)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDenominatorError('inverse of a zero rational function')
        den = self.den
        if self.num.is_constant():
            return RatFunc._make(den / self.num.constant_value(), {})
        factor, scale = _normalize_factor(self.num)
        return RatFunc._make(den / scale, {factor: 1})

    def __truediv__(self, other):
        other = RatFunc._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = RatFunc._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        other = RatFunc._other(other)
        if other is NotImplemented:
            return NotImplemented
        lcm = _lcm(self._factors, other._factors)
        return (self.num * _factor_product(lcm, self._factors)
                == other.num * _factor_product(lcm, other._factors))

    __hash__ = None

    def substitute(self, assignment):
        den = self.den.substitute(assignment)
        if not den:
            raise ZeroDenominatorError('denominator %s vanishes at this point' % self.den)
        return self.num.substitute(assignment) / den

    def to_text(self):
        if not self._factors:
            return self.num.to_text()
        return '(%s)/(%s)' % (self.num.to_text(), self.den.to_text())

    __str__ = to_text

    def __repr__(self):
        return 'RatFunc(%r)' % self.to_text()


def coefficient_size(value):
    """Number of nonzero polynomial terms carried by a coefficient."""
    if isinstance(value, (Poly, LaurentPoly)):
        return len(value)
    if isinstance(value, RatFunc):
        return len(value.num)
    return 1 if value else 0


def invert_coefficient(value):
    if isinstance(value, (int, Fraction)):
        if not value:
            raise NotInvertibleError()
        return Fraction(1) / Fraction(value)
    if isinstance(value, Poly):
        if not value:
            raise NotInvertibleError()
        if value.is_constant():
            return Fraction(1) / value.constant_value()
        return RatFunc(ONE, value)
    if isinstance(value, RatFunc):
        if not value:
            raise NotInvertibleError()
        if value == 1:
            return RatFunc(ONE)
        return value.inverse()
    raise TypeError('cannot invert %r' % (value,))


# ==== truncated Laurent series ====

def _min_trunc(*truncs):
    known = [t for t in truncs if t is not None]
    return min(known) if known else None


class LaurentSeries:
    """Series in ``z^-1`` with finitely many positive powers.

    ``trunc = N`` means coefficients of exponents below ``-N`` are unknown;
    ``trunc = None`` means the series is exact. Coefficients may be rationals,
    polynomials or rational functions.
    """

    __slots__ = ('_coeffs', 'trunc')

    def __init__(self, coeffs=None, trunc=None):
        items = {}
        for exp, coeff in (coeffs or {}).items():
            if not coeff or (trunc is not None and exp < -trunc):
                continue
            items[exp] = coeff
        self._coeffs = items
        self.trunc = trunc

    @classmethod
    def _raw(cls, coeffs, trunc):
        series = cls.__new__(cls)
        series._coeffs = coeffs
        series.trunc = trunc
        return series

    @classmethod
    def monomial(cls, coeff=1, exponent=0, trunc=None):
        return cls({exponent: coeff}, trunc)

    @classmethod
    def zero(cls, trunc=None):
        return cls._raw({}, trunc)

    @staticmethod
    def coerce(value):
        if isinstance(value, LaurentSeries):
            return value
        return LaurentSeries({0: value})

    @property
    def coeffs(self):
        return MappingProxyType(self._coeffs)

    def coefficient(self, exponent):
        return self._coeffs.get(exponent, 0)

    __getitem__ = coefficient

    def known(self, exponent):
        return self.trunc is None or exponent >= -self.trunc

    def __bool__(self):
        return bool(self._coeffs)

    def max_exponent(self):
        return max(self._coeffs, default=None)

    def _top(self):
        if self._coeffs:
            return max(self._coeffs)
        return None if self.trunc is None else -self.trunc - 1

    def is_exact_zero(self):
        return not self._coeffs and self.trunc is None

    # Arithmetic

    def __neg__(self):
        return LaurentSeries._raw({e: -c for e, c in self._coeffs.items()}, self.trunc)

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            if isinstance(other, (int, Fraction, Poly, RatFunc)):
                other = LaurentSeries.coerce(other)
            else:
                return NotImplemented
        trunc = _min_trunc(self.trunc, other.trunc)
        out = {}
        for source in (self._coeffs, other._coeffs):
            for exp, coeff in source.items():
                if trunc is not None and exp < -trunc:
                    continue
                out[exp] = out[exp] + coeff if exp in out else coeff
        return LaurentSeries._raw({e: c for e, c in out.items() if c}, trunc)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (LaurentSeries, int, Fraction, Poly, RatFunc)):
            return self + (-LaurentSeries.coerce(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            if isinstance(other, (int, Fraction, Poly, RatFunc)):
                if not other:
                    return LaurentSeries._raw({}, self.trunc)
                scaled = {e: c * other for e, c in self._coeffs.items()}
                return LaurentSeries._raw({e: c for e, c in scaled.items() if c}, self.trunc)
            return NotImplemented
        if self.is_exact_zero() or other.is_exact_zero():
            return LaurentSeries.zero()
        bounds = []
        if self.trunc is not None:
            bounds.append(self.trunc - other._top())
        if other.trunc is not None:
            bounds.append(other.trunc - self._top())
        trunc = min(bounds) if bounds else None
        out = {}
        for exp_a, coeff_a in self._coeffs.items():
            for exp_b, coeff_b in other._coeffs.items():
                exp = exp_a + exp_b
                if trunc is not None and exp < -trunc:
                    continue
                term = coeff_a * coeff_b
                out[exp] = out[exp] + term if exp in out else term
        return LaurentSeries._raw({e: c for e, c in out.items() if c}, trunc)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = LaurentSeries.monomial(1)
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, m):
        """Multiply by ``z^m``."""
        trunc = None if self.trunc is None else self.trunc - m
        return LaurentSeries._raw({e + m: c for e, c in self._coeffs.items()}, trunc)

    def truncate(self, n):
        trunc = n if self.trunc is None else min(n, self.trunc)
        return LaurentSeries._raw({e: c for e, c in self._coeffs.items() if e >= -trunc}, trunc)

    def map_coefficients(self, function):
        out = {}
        for exp, coeff in self._coeffs.items():
            value = function(coeff)
            if value:
                out[exp] = value
        return LaurentSeries._raw(out, self.trunc)

    def inverse(self, n):
        return series_invert(self, n)

    # Comparison

    def agrees_with(self, other, n=None):
        """Equality on the range where both series (and ``-n``) are known."""
        trunc = _min_trunc(self.trunc, other.trunc, n)
        exps = set(self._coeffs) | set(other._coeffs)
        for exp in exps:
            if trunc is not None and exp < -trunc:
                continue
            if not (self.coefficient(exp) == other.coefficient(exp)):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            if isinstance(other, (int, Fraction, Poly, RatFunc)):
                other = LaurentSeries.coerce(other)
            else:
                return NotImplemented
        return self.trunc == other.trunc and self.agrees_with(other)

    __hash__ = None

    def to_text(self):
        if not self._coeffs:
            body = '0'
        else:
            body = ' '.join('(%s)z^%d' % (self._coeffs[e], e) for e in sorted(self._coeffs, reverse=True))
        return body if self.trunc is None else '%s + O(z^%d)' % (body, -self.trunc - 1)

    __str__ = to_text

    def __repr__(self):
        return 'LaurentSeries(%r)' % self.to_text()

_SERIES_VARIABLE = Dummy('w')


def _is_numeric(value):
    if isinstance(value, (int, Fraction)):
        return True
    if isinstance(value, Poly):
        return value.is_constant()
    return not value.factors and value.num.is_constant()


def _numeric_value(value):
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Poly):
        return value.constant_value()
    return value.num.constant_value()


def _series_domain(coeffs):
    """Ground domain holding every coefficient, with the polynomial ring it extends."""
    if all(_is_numeric(coeff) for coeff in coeffs):
        return QQ, None
    elements = []
    for coeff in coeffs:
        if isinstance(coeff, RatFunc):
            elements += [coeff.num._element, coeff.den._element]
        elif isinstance(coeff, Poly):
            elements.append(coeff._element)
    ring, _ = _common(*elements)
    if any(isinstance(coeff, RatFunc) and coeff.factors for coeff in coeffs):
        return ring.to_field().to_domain(), ring
    return ring.to_domain(), ring


def _to_domain(value, domain, ring):
    if ring is None:
        return _qq(_numeric_value(value))
    if domain.is_PolynomialRing:
        poly = value.num if isinstance(value, RatFunc) else Poly.coerce(value)
        return _lift(poly._element, ring)
    field = domain.field
    if isinstance(value, RatFunc):
        return field.new(_lift(value.num._element, field.ring), _lift(value.den._element, field.ring))
    return field.new(_lift(Poly.coerce(value)._element, field.ring))


def _from_domain(value, domain, ring):
    if ring is None:
        return _fraction(value)
    if domain.is_PolynomialRing:
        return Poly._wrap(_lift(value, ring))
    num = Poly._wrap(_lift(value.numer, ring))
    den = Poly._wrap(_lift(value.denom, ring))
    if den.is_constant():
        return num / den.constant_value()
    return RatFunc(num, den)


def series_invert(a, n):
    """Inverse of a unit monomial times ``1 + O(z^-1)``, known down to ``z^-n`` at most.

    The tail is normalized by the leading coefficient and inverted as a power
    series in ``w = z^-1`` with sympy's ring series.
    """
    if not a:
        raise NotInvertibleError()
    top = a.max_exponent()
    lead = a.coefficient(top)
    if isinstance(lead, Poly) and not lead.is_constant():
        raise NotInvertibleError()
    inv_lead = invert_coefficient(lead)
    trunc = n if a.trunc is None else min(n, 2 * top + a.trunc)
    count = trunc - top
    if count < 0:
        return LaurentSeries.zero(trunc)
    tail = {j: a.coefficient(top - j) * inv_lead for j in range(1, count + 1) if a.coefficient(top - j)}
    domain, ring = _series_domain(list(tail.values()))
    series_ring = PolyRing((_SERIES_VARIABLE,), domain, lex)
    normalized = series_ring.from_dict({(0,): domain.one})
    normalized += series_ring.from_dict({(j,): _to_domain(coeff, domain, ring) for j, coeff in tail.items()})
    inverse = rs_series_inversion(normalized, series_ring.gens[0], count + 1)
    out = {}
    for (j,), coeff in inverse.items():
        if j <= count:
            out[-top - j] = inv_lead * _from_domain(coeff, domain, ring)
    return LaurentSeries(out, trunc)


# ==== loop matrices ====

class LoopMatrix:
    """Square matrix of LaurentSeries sharing one truncation."""

    __slots__ = ('n', '_rows', 'trunc')

    def __init__(self, rows):
        rows = [[LaurentSeries.coerce(entry) for entry in row] for row in rows]
        size = len(rows)
        if size == 0 or any(len(row) != size for row in rows):
            raise ValueError('loop matrix needs a non-empty square shape')
        trunc = _min_trunc(*(entry.trunc for row in rows for entry in row))
        if trunc is not None:
            rows = [[entry.truncate(trunc) for entry in row] for row in rows]
        self.n = size
        self._rows = tuple(tuple(row) for row in rows)
        self.trunc = trunc

    @classmethod
    def identity(cls, n, trunc=None):
        return cls([[LaurentSeries({0: 1} if i == j else {}, trunc) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        return cls([[entries[i] if i == j else LaurentSeries.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def z_powers(cls, exponents):
        """Diagonal matrix ``diag(z^e0, z^e1, ...)``."""
        return cls.diagonal([LaurentSeries.monomial(1, e) for e in exponents])

    @property
    def rows(self):
        return self._rows

    def entry(self, i, j):
        return self._rows[i][j]

    def __getitem__(self, index):
        i, j = index
        return self._rows[i][j]

    def _binary(self, other, op):
        if not isinstance(other, LoopMatrix):
            return NotImplemented
        if other.n != self.n:
            raise ValueError('loop matrix sizes differ')
        return LoopMatrix([[op(self._rows[i][j], other._rows[i][j]) for j in range(self.n)]
                           for i in range(self.n)])

    def __add__(self, other):
        return self._binary(other, operator.add)

    def __sub__(self, other):
        return self._binary(other, operator.sub)

    def __neg__(self):
        return LoopMatrix([[-entry for entry in row] for row in self._rows])

    def __mul__(self, other):
        if isinstance(other, LoopMatrix):
            if other.n != self.n:
                raise ValueError('loop matrix sizes differ')
            n = self.n
            rows = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = None
                    for m in range(n):
                        a, b = self._rows[i][m], other._rows[m][j]
                        if a.is_exact_zero() or b.is_exact_zero():
                            continue
                        term = a * b
                        acc = term if acc is None else acc + term
                    row.append(acc if acc is not None else LaurentSeries.zero())
                rows.append(row)
            return LoopMatrix(rows)
        if isinstance(other, (int, Fraction, Poly, RatFunc, LaurentSeries)):
            return LoopMatrix([[entry * other for entry in row] for row in self._rows])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly, RatFunc, LaurentSeries)):
            return LoopMatrix([[other * entry for entry in row] for row in self._rows])
        return NotImplemented

    def det(self):
        r = self._rows
        if self.n == 1:
            return r[0][0]
        if self.n == 2:
            return r[0][0] * r[1][1] - r[0][1] * r[1][0]
        if self.n == 3:
            return (r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                    - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                    + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]))
        raise ValueError('determinant implemented for n <= 3')

    def adjugate(self):
        r = self._rows
        n = self.n
        if n == 1:
            return LoopMatrix([[LaurentSeries.monomial(1)]])
        if n == 2:
            return LoopMatrix([[r[1][1], -r[0][1]], [-r[1][0], r[0][0]]])
        cof = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                rows = [k for k in range(3) if k != i]
                cols = [k for k in range(3) if k != j]
                minor = (r[rows[0]][cols[0]] * r[rows[1]][cols[1]]
                         - r[rows[0]][cols[1]] * r[rows[1]][cols[0]])
                cof[j][i] = minor if (i + j) % 2 == 0 else -minor
        return LoopMatrix(cof)

    def inverse(self):
        """Adjugate over a determinant that must be a unit monomial ``a z^m``."""
        det = self.det()
        if len(det.coeffs) != 1:
            raise NonMonomialDeterminantError(det)
        (exponent, coeff), = det.coeffs.items()
        inv_coeff = invert_coefficient(coeff)
        trunc = None if det.trunc is None else det.trunc + 2 * exponent
        inv_det = LaurentSeries({-exponent: inv_coeff}, trunc)
        return self.adjugate() * inv_det

    def coefficient_matrix(self, exponent):
        return tuple(tuple(entry.coefficient(exponent) for entry in row) for row in self._rows)

    def truncate(self, n):
        return LoopMatrix([[entry.truncate(n) for entry in row] for row in self._rows])

    def map_coefficients(self, function):
        return LoopMatrix([[entry.map_coefficients(function) for entry in row] for row in self._rows])

    def max_exponent(self):
        return max((e for row in self._rows for entry in row for e in entry.coeffs), default=0)

    def negative_witness(self, n):
        """First entry with a nonzero coefficient at ``z^-m``, ``1 <= m <= n``."""
        for m in range(1, n + 1):
            for i, row in enumerate(self._rows):
                for j, entry in enumerate(row):
                    if entry.known(-m) and entry.coefficient(-m):
                        return (i, j), m, entry.coefficient(-m)
        return None

    def first_nonzero(self):
        """First ``((i, j), exponent, coeff)`` stored on the known range, or None."""
        for i, row in enumerate(self._rows):
            for j, entry in enumerate(row):
                if entry.coeffs:
                    exponent = max(entry.coeffs)
                    return (i, j), exponent, entry.coeffs[exponent]
        return None

    def term_count(self):
        return sum(coefficient_size(coeff) for row in self._rows for entry in row
                   for coeff in entry.coeffs.values())

    def agrees_with(self, other, n=None):
        return all(self._rows[i][j].agrees_with(other._rows[i][j], n)
                   for i in range(self.n) for j in range(self.n))

    def __eq__(self, other):
        if not isinstance(other, LoopMatrix):
            return NotImplemented
        return self.n == other.n and all(
            self._rows[i][j] == other._rows[i][j] for i in range(self.n) for j in range(self.n))

    __hash__ = None

    def __str__(self):
        return '\n'.join(' | '.join(str(entry) for entry in row) for row in self._rows)

# ==== Laurent polynomials in positional variables ====

class LaurentPoly:
    """Laurent polynomial in ``nvars`` positional variables with rational coefficients."""

    __slots__ = ('nvars', '_terms')

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self._terms = {tuple(e): Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars, value=1):
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars, index, exponent=1):
        exps = [0] * nvars
        exps[index] = exponent
        return cls(nvars, {tuple(exps): 1})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _other(self, value):
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return LaurentPoly.constant(self.nvars, value)
        return NotImplemented

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            out[exps] = out.get(exps, 0) + coeff
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def multiply(self, other, keep=None):
        """Product, dropping exponent vectors rejected by ``keep``."""
        other = self._other(other)
        out = {}
        for exps_a, coeff_a in self._terms.items():
            for exps_b, coeff_b in other._terms.items():
                exps = tuple(x + y for x, y in zip(exps_a, exps_b))
                if keep is not None and not keep(exps):
                    continue
                out[exps] = out.get(exps, 0) + coeff_a * coeff_b
        return LaurentPoly(self.nvars, out)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self.multiply(other)

    __rmul__ = __mul__

    def filtered(self, keep):
        return LaurentPoly(self.nvars, {e: c for e, c in self._terms.items() if keep(e)})

    def evaluate(self, values):
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for value, exp in zip(values, exps):
                term *= Fraction(value) ** exp
            total += term
        return total

    def to_poly(self, family):
        """Polynomial in ``family[1..nvars]``; every exponent must be nonnegative."""
        out = {}
        for exps, coeff in self._terms.items():
            if min(exps, default=0) < 0:
                raise ValueError('negative exponent in %s' % (exps,))
            mono = tuple((VarId(family, i + 1), e) for i, e in enumerate(exps) if e)
            out[mono] = coeff
        return Poly(out)

    def __eq__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        return 'LaurentPoly(%d, %r)' % (self.nvars, dict(sorted(self._terms.items())))
