# -*- coding: utf-8 -*-
"""Loop-group elements as series matrices and numeric Birkhoff factorization."""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from robot.api import logger

from TauLibrary.core.algebra import LaurentSeries, LoopMatrix, Poly, Window, solve_linear
from TauLibrary.errors import ConfigError, NotInvertibleError, TauVanishesError


@dataclass(frozen=True)
class GroupSpec:
    """Parameters of ``g^{[k](alpha)}`` (n=2) or ``g^{[k,l](alpha,beta)}`` (n=3)."""
    n: int
    window: Window
    alpha: int = 0
    beta: int = 0
    k: int = 0
    l: int = 0
    assignment: Optional[Mapping] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ConfigError('loop group size must be 2 or 3, got %r' % (self.n,))
        object.__setattr__(self, 'window', Window(*self.window))

    @property
    def numeric(self):
        return self.assignment is not None


def build_Q(n, a):
    """``pi(Q_a)``: identity with ``z^-1`` in slot ``(a, a)``."""
    if not 0 <= a < n:
        raise ConfigError('component %r out of range for n=%d' % (a, n))
    return LoopMatrix.z_powers([-1 if i == a else 0 for i in range(n)])


def build_T(n, s=1):
    """``T = Q_1 Q_0^-1`` for n=2; ``T_1``, ``T_2`` for n=3."""
    if not 1 <= s < n:
        raise ConfigError('translation T_%r not defined for n=%d' % (s, n))
    return LoopMatrix.z_powers([1 if i == s - 1 else -1 if i == s else 0 for i in range(n)])


def translation_exponents(n, k, l=0):
    """Diagonal z-exponents of ``T^-k`` (n=2) or ``T_2^-l T_1^-k`` (n=3)."""
    if n == 2:
        return [-k, k]
    return [-k, k - l, l]


def spectral_series(family, shift, window, assignment=None):
    """``X^{(shift)}(z) = sum_j x_j z^{shift-j-1}`` over the window."""
    coeffs = {}
    for index in window.indices():
        coeff = Poly.variable(family, index)
        if assignment is not None:
            coeff = coeff.substitute(assignment)
        coeffs[shift - index - 1] = coeff
    return LaurentSeries(coeffs)


def build_g(spec):
    """The unitriangular group element, translated by ``T^-k`` or ``T_2^-l T_1^-k``."""
    window = spec.window
    assignment = spec.assignment
    one = LaurentSeries.monomial(1)
    zero = LaurentSeries.zero()
    if spec.n == 2:
        lower = spectral_series('c', spec.alpha, window, assignment)
        g = LoopMatrix([[one, zero], [lower, one]])
    else:
        c_series = spectral_series('c', spec.alpha - spec.beta, window, assignment)
        d_series = spectral_series('d', spec.alpha, window, assignment)
        e_series = spectral_series('e', spec.beta, window, assignment)
        g = LoopMatrix([[one, zero, zero], [c_series, one, zero], [d_series, e_series, one]])
    if spec.k or spec.l:
        g = LoopMatrix.z_powers(translation_exponents(spec.n, spec.k, spec.l)) * g
    return g


def negative_part_vanishes(matrix, n):
    """Whether the coefficients of ``z^-1 .. z^-n`` all vanish, with the first witness."""
    witness = matrix.negative_witness(n)
    return witness is None, witness


def intertwining_residuals(n, window, alpha=0, beta=0):
    """Differences ``Q^-1 g^{shifted} - g Q^-1`` for every shift direction; all should vanish."""
    out = {}
    base = build_g(GroupSpec(n, window, alpha, beta))
    q0 = build_Q(n, 0).inverse()
    out['alpha'] = q0 * build_g(GroupSpec(n, window, alpha + 1, beta)) - base * q0
    if n == 3:
        q1 = build_Q(n, 1).inverse()
        out['beta'] = q1 * build_g(GroupSpec(n, window, alpha, beta + 1)) - base * q1
    return out


def birkhoff_degree_bound(n, k, l, window):
    """Bound on the ``z^-1`` degree of ``g_minus^-1`` for a translated group element."""
    return (n - 1) * ((k + l + 2) * max(window.width - 1, 0) + 1)


def birkhoff_solve_numeric(matrix, n, degree=None, shuffle_seed=None):
    """Factor a numeric loop matrix as ``g_minus · g_pos``.

    The inverse ``X = g_minus^-1 = 1 + sum_{j<=degree} B_j z^-j`` is solved row by
    row from the linear conditions ``[z^-m](X · matrix) = 0``; ``g_minus`` is its
    inverse (determinant one) truncated to ``n``.

    Arguments:
    - ``matrix``: LoopMatrix with rational coefficients, exact
    - ``n``: truncation of the returned ``g_minus``
    - ``degree``: bound on the ``z^-1`` degree of ``X``
    - ``shuffle_seed``: permute the unknowns before elimination
    """
    size = matrix.n
    low = min((e for row in matrix.rows for entry in row for e in entry.coeffs), default=0)
    depth = max(0, -low)
    if degree is None:
        high = max(matrix.max_exponent(), 0)
        degree = (size - 1) * (depth + high + 1) * size
    unknowns = [(j, m) for j in range(1, degree + 1) for m in range(size)]
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(unknowns)
    rows = []
    for i in range(size):
        system, rhs = [], []
        for c in range(size):
            for t in range(1, degree + depth + 1):
                system.append([Fraction(matrix[m, c].coefficient(j - t)) for j, m in unknowns])
                rhs.append(-Fraction(matrix[i, c].coefficient(-t)))
        try:
            solution = solve_linear(system, rhs)
        except NotInvertibleError as err:
            raise TauVanishesError('tau function vanishes at this point (%s)' % err) from None
        values = dict(zip(unknowns, solution))
        row = []
        for m in range(size):
            coeffs = {-j: values[(j, m)] for j in range(1, degree + 1)}
            if m == i:
                coeffs[0] = Fraction(1)
            row.append(LaurentSeries(coeffs))
        rows.append(row)
    inverse_minus = LoopMatrix(rows)
    g_pos = inverse_minus * matrix
    g_minus = inverse_minus.inverse().truncate(n)
    logger.debug('numeric Birkhoff factorization solved with degree bound %d' % degree)
    return g_minus, g_pos
