# -*- coding: utf-8 -*-
"""GL3 tau functions from the residue formula, the four lattice equations,
the elementary connection matrices and the 3x3 Birkhoff factor.

Lattice points are ``(k, l, alpha, beta)``. Ratios are named after the
direction they step in: ``row`` is ``tau_{k+1,l}/tau_{k,l}``, ``col`` is
``tau_{k,l+1}/tau_{k,l}`` and ``diag`` is ``tau_{k+1,l+1}/tau_{k,l}``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Any, NamedTuple

from robot.api import logger

from TauLibrary.core.algebra import (ONE, ZERO, LaurentPoly, LaurentSeries, LoopMatrix, Poly,
                                     RatFunc, VarId, Window, det_fraction_free)
from TauLibrary.core.lattice import SubstitutedTable, is_numeric, quotient
from TauLibrary.core.loopgroup import (GroupSpec, birkhoff_degree_bound, birkhoff_solve_numeric,
                                       build_g, intertwining_residuals)
from TauLibrary.core.shifts import ShiftSpec, compose_fields, restrict_to_window, source_window
from TauLibrary.core.tau_gl2 import tau2
from TauLibrary.errors import CapExceededError, ConfigError, TauError, ZeroDenominatorError
from TauLibrary.report import Residual, VerificationReport

K_CAP = 3


def _sign(k):
    return -1 if k % 2 else 1


# ==== residue formula ====

class CompositionTerm(NamedTuple):
    """One summand of the residue formula, ``n_c + n_d = k`` and ``n_d + n_e = l``."""
    n_c: int
    n_d: int
    n_e: int

    @property
    def size(self):
        return self.n_c + self.n_d + self.n_e


def compositions(k, l):
    if k < 0 or l < 0:
        return []
    return [CompositionTerm(k - n_d, n_d, l - n_d) for n_d in range(min(k, l) + 1)]


def expansion_order(term, beta, window):
    """Last power kept when expanding ``1/(x - z)`` as ``sum z^m x^(-m-1)``."""
    window = Window(*window)
    return max(window.width - 1 + term.size + 2, window.hi - beta + 1)


def _numerator(term):
    nvars = term.size
    xs = range(term.n_c)
    ys = range(term.n_c, term.n_c + term.n_d)
    zs = range(term.n_c + term.n_d, nvars)
    var = lambda i: LaurentPoly.variable(nvars, i)
    out = LaurentPoly.constant(nvars)
    for group in (xs, ys, zs):
        for i, j in combinations(group, 2):
            diff = var(i) - var(j)
            out = out * diff * diff
    for i in xs:
        for j in ys:
            out = out * (var(i) - var(j))
    for i in ys:
        for j in zs:
            out = out * (var(i) - var(j))
    return out


@lru_cache(maxsize=None)
def residue_coeff(term, alpha, beta, window, order=None):
    """``c^{(alpha,beta)}_{n_c,n_d,n_e}`` as a polynomial in the window variables."""
    term = CompositionTerm(*term)
    window = Window(*window)
    if term.size == 0:
        return ONE
    if order is None:
        order = expansion_order(term, beta, window)
    nvars = term.size
    gamma = alpha - beta
    xs = range(term.n_c)
    zs = range(term.n_c + term.n_d, nvars)
    x_floor = window.lo - gamma
    z_ceiling = window.hi - beta

    def keep(exps):
        return all(exps[i] >= x_floor for i in xs) and all(exps[j] <= z_ceiling for j in zs)

    product = _numerator(term)
    for i in xs:
        for j in zs:
            expansion = {}
            for m in range(order + 1):
                exps = [0] * nvars
                exps[i] = -m - 1
                exps[j] = m
                expansion[tuple(exps)] = 1
            product = product.multiply(LaurentPoly(nvars, expansion), keep)

    families = ['c'] * term.n_c + ['d'] * term.n_d + ['e'] * term.n_e
    shifts = {'c': gamma, 'd': alpha, 'e': beta}
    terms = {}
    for exps, coeff in product.terms.items():
        powers = {}
        for family, t in zip(families, exps):
            index = t + shifts[family]
            if not window.covers(index):
                break
            var = VarId(family, index)
            powers[var] = powers.get(var, 0) + 1
        else:
            mono = tuple(sorted(powers.items()))
            terms[mono] = terms.get(mono, 0) + coeff
    sign = _sign(term.n_d * (term.n_d + 1) // 2)
    scale = Fraction(sign, factorial(term.n_c) * factorial(term.n_d) * factorial(term.n_e))
    return Poly(terms).scale(scale)


def residue_is_stable(term, alpha, beta, window):
    """Whether two more expansion terms leave the coefficient unchanged."""
    term = CompositionTerm(*term)
    order = expansion_order(term, beta, window)
    return residue_coeff(term, alpha, beta, Window(*window), order) == \
        residue_coeff(term, alpha, beta, Window(*window), order + 2)


def _check_caps(k, l):
    if k > K_CAP:
        raise CapExceededError('k', k, K_CAP)
    if l > K_CAP:
        raise CapExceededError('l', l, K_CAP)


def tau3_terms(k, l, alpha, beta, window):
    """``(term, coefficient)`` pairs summing to ``tau_{k,l}^{(alpha,beta)}``."""
    window = Window(*window)
    _check_caps(k, l)
    return [(term, residue_coeff(term, alpha, beta, window)) for term in compositions(k, l)]


@lru_cache(maxsize=None)
def tau3(k, l, alpha, beta, window):
    window = Window(*window)
    if k < 0 or l < 0:
        return ZERO
    if k == 0 and l == 0:
        return ONE
    total = ZERO
    for _, coeff in tau3_terms(k, l, alpha, beta, window):
        total = total + coeff
    return total


def degree_check(k, l, alpha, beta, window):
    """Every monomial of each summand has family degrees ``(n_c, n_d, n_e)``."""
    return all(not coeff or coeff.family_degrees() == {tuple(term)}
               for term, coeff in tau3_terms(k, l, alpha, beta, window))


def _e_c_sum(window, e_start, c_start, i_start=0):
    # sum_{i >= i_start} e_{e_start+i} c_{c_start-i}
    total = ZERO
    i = i_start
    while e_start + i <= window.hi:
        if window.covers(e_start + i) and window.covers(c_start - i):
            total = total + Poly.variable('e', e_start + i) * Poly.variable('c', c_start - i)
        i += 1
    return total


def closed_form(k, l, alpha, beta, window):
    """Explicit tau for the small lattice points that have one, else None."""
    window = Window(*window)
    gamma = alpha - beta

    def v(family, index):
        return Poly.variable(family, index) if window.covers(index) else ZERO

    if k < 0 or l < 0:
        return ZERO
    if l == 0:
        return tau2(k, gamma, window)
    if k == 0:
        return det_fraction_free([[v('e', beta + i + j) for j in range(l)] for i in range(l)])
    if (k, l) == (1, 1):
        return -v('d', alpha) + _e_c_sum(window, beta, gamma - 1)
    if (k, l) == (1, 2):
        return (v('e', beta) * _e_c_sum(window, beta + 1, gamma - 1, 1)
                - v('e', beta + 1) * _e_c_sum(window, beta + 1, gamma - 2)
                + v('e', beta + 1) * v('d', alpha) - v('e', beta) * v('d', alpha + 1))
    if (k, l) == (2, 1):
        return (v('c', gamma + 1) * _e_c_sum(window, beta, gamma - 1)
                - v('c', gamma) * _e_c_sum(window, beta, gamma)
                + v('c', gamma) * v('d', alpha + 1) - v('c', gamma + 1) * v('d', alpha))
    return None


class TauTable3:
    """Memoized GL3 lattice ``tau_{k,l}^{(alpha,beta)}`` over one window."""

    numeric = False

    def __init__(self, window, k_cap=K_CAP):
        self.window = Window(*window)
        self.k_cap = k_cap
        self._entries = {}

    def tau(self, k, l, alpha, beta):
        key = (k, l, alpha, beta)
        if key not in self._entries:
            if k > self.k_cap or l > self.k_cap:
                raise CapExceededError('k' if k > self.k_cap else 'l', max(k, l), self.k_cap)
            value = tau3(k, l, alpha, beta, self.window)
            self._entries[key] = value
            if k > 0 or l > 0:
                logger.debug('tau_%d,%d^(%d,%d) on %s: %d terms' % (k, l, alpha, beta, self.window, len(value)))
        return self._entries[key]

    __call__ = tau

    def __len__(self):
        return len(self._entries)

    def entries(self):
        return sorted(self._entries.items())

    def rows(self, k_max, l_max, alphas, betas):
        return [(k, l, alpha, beta, self.tau(k, l, alpha, beta).to_text())
                for k in range(k_max + 1) for l in range(l_max + 1) for alpha in alphas for beta in betas]

    def substituted(self, assignment):
        return SubstitutedTable(self, assignment)

    def clear(self):
        self._entries.clear()

    def describe(self):
        return 'GL3 tau table on window %s (%d entries)' % (self.window, len(self._entries))


# ==== lattice equations ====

def _lattice(table, k, l, alpha, beta):
    def t(dk=0, dl=0, da=0, db=0):
        return table.tau(k + dk, l + dl, alpha + da, beta + db)
    return t


def four_equation_residuals(k, l, alpha, beta, table):
    """Residuals of the equations ``[2]``, ``[1]``, ``[0]`` and ``[1,1]``."""
    t = _lattice(table, k, l, alpha, beta)
    return {
        '[2]': t(0, -1) * t(da=1) + t(1, 0) * t(-1, -1, da=1) - t(0, -1, da=1) * t(),
        '[1]': t(1, 1, db=1) * t() - t(1, 1) * t(db=1) + t(1, 0, db=1) * t(0, 1),
        '[0]': (t() * t() - t(da=1) * t(da=-1) - t(1, 1, da=-1) * t(-1, -1, da=1)
                + t(1, 0, da=-1) * t(-1, 0, da=1)),
        '[1,1]': (t() * t() - t(db=1) * t(db=-1) + t(0, 1, db=-1) * t(0, -1, db=1)
                  + t(-1, 0, db=-1) * t(1, 0, db=1)),
    }


def _cleared(value):
    return value.num if isinstance(value, RatFunc) else value


def component_equation_residuals(k, l, alpha, beta, table):
    """The six rational component equations with denominators cleared."""
    t = _lattice(table, k, l, alpha, beta)
    q = quotient
    equations = {
        '[0,0]': (-q(t(2, 1, da=-1) * t(0, -1), t(1, 0, da=-1) * t(1, 0))
                  + q(t(1, 1) * t(-1, -1, da=1), t(da=1) * t())
                  - q(t(1, 0) * t(-1, 0, da=1), t(da=1) * t())
                  + q(t(1, 0) * t(da=-1), t(1, 0, da=-1) * t())
                  + q(t(2, 0, da=-1) * t(), t(1, 0, da=-1) * t(1, 0))
                  - q(t(1, 0, da=1) * t(), t(1, 0) * t(da=1))),
        '[0,2]': (q(t(0, -1), t(1, 0)) + q(t(-1, -1, da=1), t(da=1))
                  - q(t(0, -1, da=1) * t(), t(1, 0) * t(da=1))),
        '[2,0]': (q(t(2, 1, da=-1), t(1, 0, da=-1)) + q(t(1, 1), t())
                  - q(t(1, 1, da=-1) * t(1, 0), t(1, 0, da=-1) * t())),
        '[1,0]': (q(t(1, 1, db=1) * t(), t(0, 1) * t(db=1)) - q(t(1, 1), t(0, 1))
                  + q(t(1, 0, db=1), t(db=1))),
        '[0,1]': (q(t(-1, 0, db=-1) * t(0, 1), t(0, 1, db=-1) * t()) + q(t(-1, 1, db=-1), t(0, 1, db=-1))
                  - q(t(-1, 0), t())),
        '[1,1]': (q(t(1, 1) * t(-1, 1, db=-1), t(0, 1, db=-1) * t(0, 1))
                  - q(t(1, 0, db=1) * t(-1, 0), t(db=1) * t())
                  - q(t(0, 1) * t(0, -1, db=1), t(db=1) * t())
                  + q(t(0, 1) * t(db=-1), t(0, 1, db=-1) * t())
                  + q(t(0, 2, db=-1) * t(), t(0, 1, db=-1) * t(0, 1))
                  - q(t(0, 1, db=1) * t(), t(0, 1) * t(db=1))),
    }
    return {name: _cleared(value) for name, value in equations.items()}


def intermediate_residuals(k, l, alpha, beta, table):
    """Polynomial forms reached while deriving ``[0]`` and ``[1,1]`` from the components."""
    t = _lattice(table, k, l, alpha, beta)
    tau, row = t(), t(1, 0)
    col = t(0, 1)
    return {
        'alpha-cleared': (t(1, 1) * t(1, 0, da=-1) * row * t(-1, -1, da=1)
                          - t(2, 1, da=-1) * t(0, -1) * t(da=1) * tau
                          + (t(2, 0, da=-1) * t(da=1) - t(1, 0, da=1) * t(1, 0, da=-1)) * tau * tau
                          - (t(1, 0, da=-1) * t(-1, 0, da=1) - t(da=1) * t(da=-1)) * row * row),
        'alpha-squares': (tau * tau * (t(2, 0, da=-1) * t(da=1) - t(1, 0, da=1) * t(1, 0, da=-1)
                                       - t(2, 1, da=-1) * t(0, -1, da=1))
                          - row * row * (t(1, 0, da=-1) * t(-1, 0, da=1) - t(da=1) * t(da=-1)
                                         - t(1, 1, da=-1) * t(-1, -1, da=1))),
        'beta-cleared': (t(1, 0, db=1) * t(-1, 0) * t(0, 1, db=-1) * col
                         - t(1, 1) * t(-1, 1, db=-1) * t(db=1) * tau
                         + (t(0, 1, db=1) * t(0, 1, db=-1) - t(0, 2, db=-1) * t(db=1)) * tau * tau
                         + (t(0, 1, db=-1) * t(0, -1, db=1) - t(db=1) * t(db=-1)) * col * col),
        'beta-squares': ((t(0, 1, db=1) * t(0, 1, db=-1) - t(0, 2, db=-1) * t(db=1)
                          - t(-1, 1, db=-1) * t(1, 1, db=1)) * tau * tau
                         - (t(db=1) * t(db=-1) - t(0, 1, db=-1) * t(0, -1, db=1)
                            - t(-1, 0, db=-1) * t(1, 0, db=1)) * col * col),
    }


# ==== h-quantities ====

@dataclass(frozen=True)
class H3Quantities:
    k: int
    l: int
    alpha: int
    beta: int
    row: Any
    col: Any
    diag: Any


def h_row(k, l, alpha, beta, table):
    return quotient(table.tau(k + 1, l, alpha, beta), table.tau(k, l, alpha, beta))


def h_col(k, l, alpha, beta, table):
    return quotient(table.tau(k, l + 1, alpha, beta), table.tau(k, l, alpha, beta))


def h_diag(k, l, alpha, beta, table):
    return quotient(table.tau(k + 1, l + 1, alpha, beta), table.tau(k, l, alpha, beta))


def inv_row(k, l, alpha, beta, table):
    return quotient(table.tau(k, l, alpha, beta), table.tau(k + 1, l, alpha, beta))


def inv_col(k, l, alpha, beta, table):
    return quotient(table.tau(k, l, alpha, beta), table.tau(k, l + 1, alpha, beta))


def inv_diag(k, l, alpha, beta, table):
    return quotient(table.tau(k, l, alpha, beta), table.tau(k + 1, l + 1, alpha, beta))


def h3_quantities(k, l, alpha, beta, table):
    return H3Quantities(k, l, alpha, beta, h_row(k, l, alpha, beta, table),
                        h_col(k, l, alpha, beta, table), h_diag(k, l, alpha, beta, table))


# ==== elementary connection matrices ====

STEPS = {
    'V_alpha': (0, 0, 1, 0),
    'V_beta': (0, 0, 0, 1),
    'W_alpha': (-1, 0, 1, 0),
    'W_beta': (0, -1, 0, 1),
    'U_k': (1, 0, 0, 0),
    'U_l': (0, 1, 0, 0),
}


def _zplus(constant):
    return LaurentSeries({1: 1, 0: constant})


def _zinv(constant, scale=0):
    # scale + constant/z
    return LaurentSeries({0: scale, -1: constant})


def _middle(a, b, c, d):
    """``[[1,a,0],[b,z+ab+cd,c],[0,d,1]]``, determinant ``z``."""
    return LoopMatrix([[1, a, 0], [b, _zplus(a * b + c * d), c], [0, d, 1]])


def _middle_inverse(a, b, c, d):
    return LoopMatrix([[_zinv(a * b, 1), _zinv(-a), _zinv(a * c)],
                       [_zinv(-b), _zinv(1), _zinv(-c)],
                       [_zinv(b * d), _zinv(-d), _zinv(c * d, 1)]])


def _corner(p, q, r, s):
    """``[[1,0,p],[0,1,q],[r,s,z+pr+qs]]``, determinant ``z``."""
    return LoopMatrix([[1, 0, p], [0, 1, q], [r, s, _zplus(p * r + q * s)]])


def _corner_inverse(p, q, r, s):
    return LoopMatrix([[_zinv(p * r, 1), _zinv(p * s), _zinv(-p)],
                       [_zinv(q * r), _zinv(q * s, 1), _zinv(-q)],
                       [_zinv(-r), _zinv(-s), _zinv(1)]])


def _top(p, q, r, s):
    """``[[z+pr+qs,p,q],[r,1,0],[s,0,1]]``, determinant ``z``."""
    return LoopMatrix([[_zplus(p * r + q * s), p, q], [r, 1, 0], [s, 0, 1]])


def _w_alpha_entries(k, l, alpha, beta, table):
    if k < 1:
        raise ConfigError('W_alpha needs k >= 1, got %d' % k)
    s = _sign(k)
    return (-inv_row(k - 1, l, alpha, beta, table), h_row(k - 1, l, alpha + 1, beta, table),
            -s * inv_col(k - 1, l - 1, alpha + 1, beta, table), -s * h_col(k, l, alpha, beta, table))


def _w_beta_entries(k, l, alpha, beta, table):
    if l < 1:
        raise ConfigError('W_beta needs l >= 1, got %d' % l)
    s = _sign(k)
    return (-s * inv_diag(k - 1, l - 1, alpha, beta, table), -s * inv_col(k, l - 1, alpha, beta, table),
            -s * h_diag(k, l - 1, alpha, beta + 1, table), s * h_col(k, l - 1, alpha, beta + 1, table))


def v_alpha(k, l, alpha, beta, table):
    s = _sign(k)
    return _top(inv_row(k - 1, l, alpha + 1, beta, table), s * inv_diag(k - 1, l - 1, alpha + 1, beta, table),
                -h_row(k, l, alpha, beta, table), s * h_diag(k, l, alpha, beta, table))


def v_beta(k, l, alpha, beta, table):
    s = _sign(k)
    return _middle(-inv_row(k - 1, l, alpha, beta, table), h_row(k, l, alpha, beta + 1, table),
                   s * inv_col(k, l - 1, alpha, beta + 1, table), -s * h_col(k, l, alpha, beta, table))


def w_alpha(k, l, alpha, beta, table):
    return _middle(*_w_alpha_entries(k, l, alpha, beta, table))


def w_beta(k, l, alpha, beta, table):
    return _corner(*_w_beta_entries(k, l, alpha, beta, table))


def w_alpha_inverse(k, l, alpha, beta, table):
    return _middle_inverse(*_w_alpha_entries(k, l, alpha, beta, table))


def w_beta_inverse(k, l, alpha, beta, table):
    return _corner_inverse(*_w_beta_entries(k, l, alpha, beta, table))


def u_k(k, l, alpha, beta, table):
    """``U_{[k+,l]}`` as ``V_alpha W_alpha^-1`` at the neighbouring point."""
    return v_alpha(k, l, alpha, beta, table) * w_alpha_inverse(k + 1, l, alpha, beta, table)


def u_l(k, l, alpha, beta, table):
    return v_beta(k, l, alpha, beta, table) * w_beta_inverse(k, l + 1, alpha, beta, table)


_BUILDERS = {
    'V_alpha': v_alpha,
    'V_beta': v_beta,
    'W_alpha': w_alpha,
    'W_beta': w_beta,
    'U_k': u_k,
    'U_l': u_l,
}


def expected_determinant(kind):
    """``1`` for the lattice translations ``U_k``, ``U_l``; ``z`` for the elementary steps."""
    if kind not in STEPS:
        raise ConfigError('unknown connection matrix %r' % (kind,))
    return LaurentSeries.monomial(1, 0 if kind.startswith('U_') else 1)


def connection3(kind, k, l, alpha, beta, table):
    """Elementary connection matrix ``kind`` at ``(k, l, alpha, beta)``."""
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise ConfigError('unknown connection matrix %r, expected one of %s'
                          % (kind, ', '.join(sorted(_BUILDERS)))) from None
    return builder(k, l, alpha, beta, table)


def w_inverse_residuals(k, l, alpha, beta, table):
    """``W W^-1 - 1`` against the closed-form inverses."""
    out = {}
    identity = LoopMatrix.identity(3)
    if k >= 1:
        out['W_alpha'] = w_alpha(k, l, alpha, beta, table) * w_alpha_inverse(k, l, alpha, beta, table) - identity
    if l >= 1:
        out['W_beta'] = w_beta(k, l, alpha, beta, table) * w_beta_inverse(k, l, alpha, beta, table) - identity
    return out


def zero_curvature3_residual(k, l, alpha, beta, table):
    """Both factorizations of ``U_{[k+,l]}`` and ``U_{[k,l+]}`` subtracted."""
    other_k = w_alpha_inverse(k + 1, l, alpha - 1, beta, table) * v_alpha(k + 1, l, alpha - 1, beta, table)
    other_l = w_beta_inverse(k, l + 1, alpha, beta - 1, table) * v_beta(k, l + 1, alpha, beta - 1, table)
    return u_k(k, l, alpha, beta, table) - other_k, u_l(k, l, alpha, beta, table) - other_l


def is_positive(matrix):
    """No negative powers of ``z`` in any entry."""
    return all(exponent >= 0 for row in matrix.rows for entry in row for exponent in entry.coeffs)


def _unequal(expected, actual):
    return [(i, j) for (i, j), value in expected.items() if not (actual[i][j] == value)]


def u_pattern_mismatches(k, l, alpha, beta, table):
    """Off-diagonal entries of both U matrices that differ from their displayed form."""
    s = _sign(k)
    constant_k = u_k(k, l, alpha, beta, table).coefficient_matrix(0)
    expected_k = {
        (0, 1): inv_row(k, l, alpha, beta, table),
        (0, 2): -s * inv_diag(k, l - 1, alpha, beta, table),
        (1, 0): -h_row(k, l, alpha, beta, table),
        (1, 1): 0, (1, 2): 0,
        (2, 0): s * h_diag(k, l, alpha, beta, table),
        (2, 1): 0, (2, 2): 1,
    }
    constant_l = u_l(k, l, alpha, beta, table).coefficient_matrix(0)
    expected_l = {
        (0, 0): 1,
        (0, 1): -inv_row(k - 1, l, alpha, beta, table),
        (0, 2): 0,
        (1, 0): h_row(k, l + 1, alpha, beta, table),
        (1, 2): s * inv_col(k, l, alpha, beta, table),
        (2, 0): 0,
        (2, 1): -s * h_col(k, l, alpha, beta, table),
        (2, 2): 0,
    }
    return {'U_k': _unequal(expected_k, constant_k), 'U_l': _unequal(expected_l, constant_l)}


# ==== Birkhoff factor ====

def _polynomial_tau(table, *key):
    if isinstance(table, SubstitutedTable):
        return table.polynomial(*key)
    return table.tau(*key)


def _fields(window, n):
    plus = lambda family: ShiftSpec(family, '+', n, window)
    minus = lambda family: ShiftSpec(family, '-', n, window)
    return [(plus('c'), plus('d')), (minus('c'), plus('e')), (minus('d'), minus('e'))]


def tau_matrix3(k, l, alpha, beta, window):
    """Signed matrix of neighbouring taus on ``window``; off-diagonal entries carry ``1/z``."""
    t = lambda dk, dl: tau3(k + dk, l + dl, alpha, beta, window)
    s = _sign(k)
    return [[(t(0, 0), 0), (t(-1, 0), -1), (t(-1, -1).scale(s), -1)],
            [(t(1, 0), -1), (t(0, 0), 0), (t(0, -1).scale(s), -1)],
            [(t(1, 1).scale(-s), -1), (t(0, 1).scale(s), -1), (t(0, 0), 0)]]


def tau_numerator_matrix3(k, l, alpha, beta, table, n):
    """Diagonal of composed shift fields applied row by row to the signed tau matrix.

    Taus come from the source window; every coefficient is then restricted to
    the table's window, including the family a row's fields leave alone.
    """
    if k < 0 or l < 0:
        raise ConfigError('the tau formula for g_minus needs k, l >= 0, got %d, %d' % (k, l))
    window = Window(*table.window)
    fields = _fields(window, n)
    restrict = lambda p: restrict_to_window(p, window)
    rows = []
    for i, row in enumerate(tau_matrix3(k, l, alpha, beta, source_window(window, n))):
        rows.append([compose_fields(poly, fields[i]).shift(power).map_coefficients(restrict)
                     for poly, power in row])
    return LoopMatrix(rows)


def g_minus_from_tau3(k, l, alpha, beta, table, n, assignment=None):
    numerator = tau_numerator_matrix3(k, l, alpha, beta, table, n)
    tau = _polynomial_tau(table, k, l, alpha, beta)
    if assignment is None:
        if not tau:
            raise ZeroDenominatorError('tau vanishes identically')
        return numerator.map_coefficients(lambda p: quotient(p, tau)).truncate(n)
    value = tau.substitute(assignment)
    if not value:
        raise ZeroDenominatorError('tau vanishes at this point')
    return numerator.map_coefficients(lambda p: p.substitute(assignment) / value).truncate(n)


def first_order_pattern3(k, l, alpha, beta, table):
    """Expected off-diagonal ``z^-1`` coefficients of ``g_minus``."""
    s = _sign(k)
    return {
        (0, 1): inv_row(k - 1, l, alpha, beta, table),
        (0, 2): s * inv_diag(k - 1, l - 1, alpha, beta, table),
        (1, 0): h_row(k, l, alpha, beta, table),
        (1, 2): s * inv_col(k, l - 1, alpha, beta, table),
        (2, 0): -s * h_diag(k, l, alpha, beta, table),
        (2, 1): s * h_col(k, l, alpha, beta, table),
    }


def fock_twist(a, b, k, l):
    """Sign between the fermionic matrix element and the loop-group numerator entry ``(a, b)``."""
    exponent = k * ((a <= 1) + (b <= 1)) + l * ((a >= 1) + (b >= 1))
    return _sign(exponent)


def _birkhoff3_checks(k, l, alpha, beta, window, n, assignment, table, fock_bound):
    checks = []
    spec = GroupSpec(3, window, alpha, beta, k, l, assignment)
    g = build_g(spec)
    work = n + max(g.max_exponent(), 0) + 1
    if assignment is None:
        numerator = tau_numerator_matrix3(k, l, alpha, beta, table, work)
        checks.append(('negative-part', Residual.of_negative_part(numerator.adjugate() * g, n)))
        det = numerator.det()
        tau = table.tau(k, l, alpha, beta)
        checks.append(('determinant', Residual.of_check(
            det.agrees_with(LaurentSeries.monomial(tau * tau * tau)), 'det P = %s' % det, det.trunc)))
    else:
        g_minus = g_minus_from_tau3(k, l, alpha, beta, table, work, assignment)
        checks.append(('negative-part', Residual.of_negative_part(g_minus.inverse() * g, n)))
        solved, _ = birkhoff_solve_numeric(g, n, degree=birkhoff_degree_bound(3, k, l, window))
        checks.append(('numeric-solver', Residual.of_check(
            solved.agrees_with(g_minus, n), 'solver and tau formula disagree', n)))
    g_minus = g_minus_from_tau3(k, l, alpha, beta, table, n, assignment)
    actual = g_minus.coefficient_matrix(-1)
    mismatched = []
    for (i, j), value in first_order_pattern3(k, l, alpha, beta, table).items():
        if assignment is not None and hasattr(value, 'substitute'):
            value = value.substitute(assignment)
        if not (actual[i][j] == value):
            mismatched.append('(%d,%d)' % (i, j))
    checks.append(('first-order', Residual.of_check(not mismatched, 'z^-1 entries ' + ' '.join(mismatched), n)))
    identity = g_minus.coefficient_matrix(0)
    checks.append(('unipotent', Residual.of_check(
        all(identity[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3)),
        'z^0 coefficient %s' % (identity,), n)))
    for name, diff in intertwining_residuals(3, window, alpha, beta).items():
        checks.append(('intertwining-%s' % name, Residual.of_matrix(diff)))
    if assignment is None and k + l <= fock_bound:
        from TauLibrary.core.fock_oracle import birkhoff_numerator_via_fock
        numerator = tau_numerator_matrix3(k, l, alpha, beta, table, n)
        failures = []
        for a in range(3):
            for b in range(3):
                for j in range(-1, min(n, 2)):
                    expected = numerator[a, b].coefficient(-j - 1) * fock_twist(a, b, k, l)
                    fock = birkhoff_numerator_via_fock(3, a, b, j, window, k, l, alpha, beta)
                    if not (fock == expected):
                        failures.append('P_%d%d z^%d' % (a, b, -j - 1))
        checks.append(('fock-matrix-element', Residual.of_check(not failures, ', '.join(failures), n)))
    return checks


def verify_birkhoff3(k, l, alpha, beta, window, n, assignment=None, table=None, fock_bound=1):
    """Report on the GL3 Birkhoff factorization built from tau functions."""
    if k < 0 or l < 0:
        raise ConfigError('Birkhoff factorization from tau needs k, l >= 0, got %d, %d' % (k, l))
    window = Window(*window)
    table = table or TauTable3(window)
    parameters = {'k': k, 'l': l, 'alpha': alpha, 'beta': beta, 'window': str(window),
                  'truncation': n, 'numeric': assignment is not None}
    try:
        checks = _birkhoff3_checks(k, l, alpha, beta, window, n, assignment, table, fock_bound)
    except TauError as err:
        checks = [('error', Residual.of_error(err))]
    return VerificationReport.from_checks('birkhoff-3', (k, l, alpha, beta), parameters, checks)


# ==== Baker functions and lattice paths ====

def baker3(k, l, alpha, beta, table, n, assignment=None):
    """``Psi = T_1^k T_2^l Q_0^-alpha Q_1^-beta g_minus``."""
    exponents = [k + alpha, l - k + beta, -l]
    return LoopMatrix.z_powers(exponents) * g_minus_from_tau3(k, l, alpha, beta, table, n, assignment)


def gamma_exponents(site, target):
    """``(x0, x1, x2)`` with ``Psi(site)^-1 Psi(target) = g^-1 Q_0^x0 Q_1^x1 Q_2^x2 g'``."""
    k, l, alpha, beta = site
    k2, l2, alpha2, beta2 = target
    return (k - k2 + alpha - alpha2, k2 - k + l - l2 + beta - beta2, l2 - l)


def gamma_matrix(site, target, table, n, assignment=None):
    x = gamma_exponents(site, target)
    start = g_minus_from_tau3(*site, table, n, assignment)
    end = g_minus_from_tau3(*target, table, n, assignment)
    return start.inverse() * LoopMatrix.z_powers([-e for e in x]) * end


def step_target(site, kind):
    return tuple(a + b for a, b in zip(site, STEPS[kind]))


# slot carrying z, and the slots carrying a constant 1
_FIRST_ORDER_SLOTS = {
    'V_alpha': (0, (1, 2)),
    'V_beta': (1, (0, 2)),
    'W_alpha': (1, (0, 2)),
    'W_beta': (2, (0, 1)),
    'U_k': (0, (2,)),
    'U_l': (1, (0,)),
}


def first_order_connection(kind, k, l, alpha, beta, table, assignment=None):
    """Elementary connection matrix rebuilt from the ``z^-1`` coefficients of ``g_minus``.

    With ``A`` taken at the site and ``B`` at the step target the matrix is
    ``z E_ss + (constant slots) - A E_ss + E_ss B``.
    """
    if kind not in _FIRST_ORDER_SLOTS:
        raise ConfigError('unknown connection matrix kind %r' % (kind,))
    site = (k, l, alpha, beta)
    before = g_minus_from_tau3(*site, table, 1, assignment).coefficient_matrix(-1)
    after = g_minus_from_tau3(*step_target(site, kind), table, 1, assignment).coefficient_matrix(-1)
    top, constants = _FIRST_ORDER_SLOTS[kind]
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            value = 1 if i == j and i in constants else 0
            if j == top:
                value = value - before[i][top]
            if i == top:
                value = value + after[top][j]
            coeffs = {0: value}
            if i == j == top:
                coeffs[1] = 1
            row.append(LaurentSeries(coeffs))
        rows.append(row)
    return LoopMatrix(rows)


def first_order_residual(kind, k, l, alpha, beta, table, assignment=None):
    source = table if assignment is None or is_numeric(table) else table.substituted(assignment)
    rebuilt = first_order_connection(kind, k, l, alpha, beta, table, assignment)
    return rebuilt - connection3(kind, k, l, alpha, beta, source)


def elementary_connection_residual(kind, k, l, alpha, beta, table, n, assignment=None):
    """``g_minus^-1 (translation) g_minus'`` minus the closed-form matrix."""
    site = (k, l, alpha, beta)
    source = table if assignment is None or is_numeric(table) else table.substituted(assignment)
    direct = gamma_matrix(site, step_target(site, kind), table, n, assignment)
    return direct - connection3(kind, k, l, alpha, beta, source)


def path_product(site, steps, table):
    """Product of closed-form matrices along ``steps``; ``-kind`` walks a step backwards."""
    product = None
    for step in steps:
        backwards = step.startswith('-')
        kind = step.lstrip('-')
        if kind not in STEPS:
            raise ConfigError('unknown lattice step %r' % (step,))
        if backwards:
            site = tuple(a - b for a, b in zip(site, STEPS[kind]))
            if kind == 'W_alpha':
                matrix = w_alpha_inverse(*site, table)
            elif kind == 'W_beta':
                matrix = w_beta_inverse(*site, table)
            else:
                matrix = connection3(kind, *site, table).inverse()
        else:
            matrix = connection3(kind, *site, table)
            site = step_target(site, kind)
        product = matrix if product is None else product * matrix
    return product, site


def path_independence_residuals(k, l, alpha, beta, table):
    """Paths between the same endpoints must multiply to the same matrix."""
    site = (k, l, alpha, beta)
    out = {
        'triangle-k': path_product(site, ['V_alpha', '-W_alpha'], table)[0] - u_k(*site, table),
        'triangle-k-left': path_product(site, ['-W_alpha', 'V_alpha'], table)[0] - u_k(*site, table),
        'triangle-l': path_product(site, ['V_beta', '-W_beta'], table)[0] - u_l(*site, table),
        'triangle-l-left': path_product(site, ['-W_beta', 'V_beta'], table)[0] - u_l(*site, table),
    }
    if l >= 1:
        out['vw-move'] = (path_product(site, ['W_beta', 'V_beta'], table)[0]
                          - path_product(site, ['V_beta', 'W_beta'], table)[0])
    if k >= 1:
        out['vw-move-alpha'] = (path_product(site, ['W_alpha', 'V_alpha'], table)[0]
                                - path_product(site, ['V_alpha', 'W_alpha'], table)[0])
    return out


def two_step_gamma_residual(k, l, alpha, beta, table, n, assignment, steps=('V_alpha', 'U_k')):
    """A two-step path product against the direct ``Gamma`` between its endpoints."""
    site = (k, l, alpha, beta)
    source = table if assignment is None or is_numeric(table) else table.substituted(assignment)
    product, end = path_product(site, list(steps), source)
    return gamma_matrix(site, end, table, n, assignment) - product
