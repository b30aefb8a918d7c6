# -*- coding: utf-8 -*-
"""Vandermonde, Heine and Cauchy-type determinant identities.

The Vandermonde and Heine identities are checked as polynomial identities.
The four Cauchy-type determinants with mixed rows of ``1/(w - y)`` entries
and power rows are checked by exact evaluation at distinct random rationals.
"""

from fractions import Fraction
from itertools import permutations
from math import factorial, prod

from robot.api import logger

from TauLibrary.core.algebra import ONE, ZERO, Poly, VarId, Window, det_fraction_free, det_rational
from TauLibrary.core.lattice import random_distinct_rationals
from TauLibrary.core.tau_gl2 import tau2
from TauLibrary.errors import CapExceededError, ConfigError
from TauLibrary.report import CaseRecord, Residual, VerificationReport

DET_CAP = 6
VANDERMONDE_CAP = 4
HEINE_CAP = 3


def _z(i):
    return Poly.variable('z', i + 1)


def vandermonde(k):
    """``V[i][j] = z_{i+1}^j``."""
    return [[_z(i) ** j for j in range(k)] for i in range(k)]


def vandermonde_square_sides(k):
    """``det(V)^2`` and the permutation sum of ``det(z_{sigma(i)}^(i+j))``."""
    if k > VANDERMONDE_CAP:
        raise CapExceededError('vandermonde size', k, VANDERMONDE_CAP)
    det = det_fraction_free(vandermonde(k))
    total = ZERO
    for sigma in permutations(range(k)):
        total = total + det_fraction_free([[_z(sigma[i]) ** (i + j) for j in range(k)] for i in range(k)])
    return det * det, total


def heine_sides(k, alpha, window):
    """Hankel determinant of ``c`` and ``1/k!`` times the moment map of ``det(V)^2``.

    The moment map sends ``prod z_i^(t_i)`` to ``prod c_{alpha+t_i}``, zero
    outside the window.
    """
    if k > HEINE_CAP:
        raise CapExceededError('heine size', k, HEINE_CAP)
    window = Window(*window)
    square = det_fraction_free(vandermonde(k)) ** 2 if k else ONE

    def moment(mono):
        exps = dict((var.index, exp) for var, exp in mono)
        powers = {}
        for i in range(1, k + 1):
            index = alpha + exps.get(i, 0)
            if not window.covers(index):
                return None
            var = VarId('c', index)
            powers[var] = powers.get(var, 0) + 1
        return tuple(sorted(powers.items()))

    mapped = square.map_monomials(moment) if k else ONE
    return tau2(k, alpha, window), mapped.scale(Fraction(1, factorial(k)))


# ==== Cauchy-type determinants ====

def _recip(a, b):
    return 1 / (a - b)


def _cauchy_rhs(w, y, z=None):
    m, n = len(w), len(y)
    num = prod((w[i] - w[j] for i in range(m) for j in range(i + 1, m)), start=Fraction(1))
    num *= prod((y[i] - y[j] for i in range(n) for j in range(i + 1, n)), start=Fraction(1))
    den = prod((w[i] - y[j] for i in range(m) for j in range(n)), start=Fraction(1))
    if z is not None:
        num *= prod((z - t for t in y), start=Fraction(1))
        den *= prod((z - t for t in w), start=Fraction(1))
    return num / den


def cauchy_rows_first(w, y):
    """``m >= n`` with ``n = len(w)``, ``m = len(y)``: rows ``1/(w_i - y_j)`` for ``i = n..1``, then powers of ``y``."""
    n, m = len(w), len(y)
    if m < n:
        raise ConfigError('needs at least as many y as w, got %d < %d' % (m, n))
    rows = [[_recip(w[i], t) for t in y] for i in reversed(range(n))]
    rows += [[t ** p for t in y] for p in reversed(range(m - n))]
    return det_rational(rows), _cauchy_rhs(w, y)


def cauchy_powers_first(w, y):
    """``m < n`` with ``n = len(w)``, ``m = len(y)``: powers of ``w``, then rows ``1/(w_j - y_i)`` for ``i = m..1``."""
    n, m = len(w), len(y)
    if m >= n:
        raise ConfigError('needs fewer y than w, got %d >= %d' % (m, n))
    rows = [[t ** p for t in w] for p in reversed(range(n - m))]
    rows += [[_recip(t, y[i]) for t in w] for i in reversed(range(m))]
    return det_rational(rows), _cauchy_rhs(w, y)


def cauchy_with_pole(z, w, y):
    """``m > n``: a ``1/(z - w_j)`` row, powers of ``w``, rows ``1/(w_j - y_i)``."""
    m, n = len(w), len(y)
    if m <= n:
        raise ConfigError('needs more w than y, got %d <= %d' % (m, n))
    rows = [[_recip(z, t) for t in w]]
    rows += [[t ** p for t in w] for p in reversed(range(m - n - 1))]
    rows += [[_recip(t, y[i]) for t in w] for i in reversed(range(n))]
    return det_rational(rows), _cauchy_rhs(w, y, z)


def cauchy_with_pole_column(z, w, y):
    """``m <= n``: signed determinant with a ``-1/(z - w_i)`` column and power rows in ``z, y``."""
    m, n = len(w), len(y)
    if m > n:
        raise ConfigError('needs at most as many w as y, got %d > %d' % (m, n))
    rows = [[-_recip(z, w[i])] + [_recip(w[i], t) for t in y] for i in reversed(range(m))]
    rows += [[z ** p] + [t ** p for t in y] for p in reversed(range(n - m + 1))]
    sign = -1 if m % 2 else 1
    return sign * det_rational(rows), _cauchy_rhs(w, y, z)


def _points(count, seed):
    return random_distinct_rationals(count, seed)


def cauchy_cases(max_size):
    """``(name, m, n)`` for every Cauchy-type determinant of size at most ``max_size``."""
    cases = []
    for size in range(1, max_size + 1):
        cases += [('cauchy-rows-first', size, n) for n in range(size + 1)]
        cases += [('cauchy-powers-first', m, size) for m in range(size)]
        cases += [('cauchy-with-pole', size, n) for n in range(size)]
        cases += [('cauchy-with-pole-column', m, size - 1) for m in range(size)]
    return cases


def cauchy_sides(name, m, n, seed):
    # m counts the w points except for the rows-first form, which has n w and m y
    values = _points(m + n + 1, seed)
    if name == 'cauchy-rows-first':
        return cauchy_rows_first(values[:n], values[n:n + m])
    if name == 'cauchy-powers-first':
        return cauchy_powers_first(values[:n], values[n:n + m])
    z, points = values[-1], values[:-1]
    if name == 'cauchy-with-pole':
        return cauchy_with_pole(z, points[:m], points[m:m + n])
    if name == 'cauchy-with-pole-column':
        return cauchy_with_pole_column(z, points[:m], points[m:m + n])
    raise ConfigError('unknown determinant identity %r' % (name,))


def determinant_identity_checks(max_size=4, seed=7, samples=2, window=(-3, 3)):
    """``(key, Residual)`` pairs for every determinant identity up to ``max_size``."""
    if max_size > DET_CAP:
        raise CapExceededError('determinant size', max_size, DET_CAP)
    if max_size < 1 or samples < 1:
        raise ConfigError('determinant suites need max >= 1 and samples >= 1')
    checks = []
    for k in range(1, min(max_size, VANDERMONDE_CAP) + 1):
        lhs, rhs = vandermonde_square_sides(k)
        checks.append((('vandermonde-square', k), Residual.of_value(lhs - rhs)))
    for k in range(1, min(max_size, HEINE_CAP) + 1):
        for alpha in (0, 1):
            lhs, rhs = heine_sides(k, alpha, window)
            checks.append((('heine', k, alpha), Residual.of_value(lhs - rhs)))
    for name, m, n in cauchy_cases(max_size):
        for sample in range(samples):
            point_seed = seed * 1000 + sample
            lhs, rhs = cauchy_sides(name, m, n, point_seed)
            checks.append(((name, m, n, sample), Residual.of_check(
                lhs == rhs, 'seed %d: %s != %s' % (point_seed, lhs, rhs))))
    logger.debug('%d determinant identity cases up to size %d' % (len(checks), max_size))
    return checks


def determinant_identity_report(max_size=4, seed=7, samples=2):
    report = VerificationReport('det-identities')
    parameters = {'max': max_size, 'seed': seed, 'samples': samples}
    report.extend(CaseRecord.from_residual(key, parameters, residual)
                  for key, residual in determinant_identity_checks(max_size, seed, samples))
    return report
