# -*- coding: utf-8 -*-
"""GL2 tau functions, the Q-system, connection matrices and the Birkhoff factor."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from robot.api import logger

from TauLibrary.core.algebra import (ONE, ZERO, LaurentSeries, LoopMatrix, Poly, Window,
                                     det_fraction_free)
from TauLibrary.core.lattice import SubstitutedTable, is_numeric, quotient
from TauLibrary.core.loopgroup import (GroupSpec, birkhoff_degree_bound, birkhoff_solve_numeric,
                                       build_g, build_Q, build_T, intertwining_residuals)
from TauLibrary.core.shifts import (ShiftSpec, is_window_interior, shift_field_apply, shift_power,
                                    source_window)
from TauLibrary.errors import CapExceededError, ConfigError, TauError, ZeroDenominatorError
from TauLibrary.report import Residual, VerificationReport

K_CAP = 6


def _c(index, window):
    return Poly.variable('c', index) if window.covers(index) else ZERO


@lru_cache(maxsize=None)
def tau2(k, alpha, window):
    """Hankel determinant ``det[c_{alpha+i+j}]`` of size ``k``; ``tau_-1 = 0``, ``tau_0 = 1``."""
    window = Window(*window)
    if k < -1:
        raise ConfigError('tau_k is defined for k >= -1, got %d' % k)
    if k == -1:
        return ZERO
    if k == 0:
        return ONE
    if k > K_CAP:
        raise CapExceededError('k', k, K_CAP)
    return det_fraction_free([[_c(alpha + i + j, window) for j in range(k)] for i in range(k)])


class TauTable2:
    """Memoized GL2 lattice ``tau_k^{(alpha)}`` over one window."""

    numeric = False

    def __init__(self, window, k_cap=K_CAP):
        self.window = Window(*window)
        self.k_cap = k_cap
        self._entries = {}

    def tau(self, k, alpha):
        key = (k, alpha)
        if key not in self._entries:
            if k > self.k_cap:
                raise CapExceededError('k', k, self.k_cap)
            value = tau2(k, alpha, self.window)
            self._entries[key] = value
            if k > 0:
                logger.debug('tau_%d^(%d) on %s: %d terms' % (k, alpha, self.window, len(value)))
        return self._entries[key]

    __call__ = tau

    def __len__(self):
        return len(self._entries)

    def entries(self):
        return sorted(self._entries.items())

    def rows(self, k_max, alphas):
        """``(k, alpha, tau)`` rows for ``-1 <= k <= k_max`` in canonical text."""
        return [(k, alpha, self.tau(k, alpha).to_text()) for k in range(-1, k_max + 1) for alpha in alphas]

    def substituted(self, assignment):
        return SubstitutedTable(self, assignment)

    def clear(self):
        self._entries.clear()

    def describe(self):
        return 'GL2 tau table on window %s (%d entries)' % (self.window, len(self._entries))


# ==== Q-system and determinant identities ====

def qsystem_residual(k, alpha, table):
    t = table.tau
    return (t(k, alpha) * t(k, alpha) - t(k, alpha - 1) * t(k, alpha + 1)
            + t(k + 1, alpha - 1) * t(k - 1, alpha + 1))


def desnanot_jacobi_residual(k, alpha, table):
    if k < 2:
        raise ConfigError('Desnanot-Jacobi needs k >= 2, got %d' % k)
    t = table.tau
    return (t(k, alpha) * t(k - 2, alpha + 2) - t(k - 1, alpha + 2) * t(k - 1, alpha)
            + t(k - 1, alpha + 1) * t(k - 1, alpha + 1))


def rearranged_qsystem_residual(k, alpha, table):
    """``tau_k^2 (...) - tau_{k+1}^2 (...)``, the quadratic rearrangement of the Q-system."""
    t = table.tau
    left = t(k, alpha) * t(k, alpha) * (t(k + 2, alpha - 1) * t(k, alpha + 1)
                                        - t(k + 1, alpha - 1) * t(k + 1, alpha + 1))
    right = t(k + 1, alpha) * t(k + 1, alpha) * (t(k + 1, alpha - 1) * t(k - 1, alpha + 1)
                                                 - t(k, alpha - 1) * t(k, alpha + 1))
    return left - right


def shift_consistency_residual(k, alpha, beta, table):
    """``tau_k^{(alpha+beta)} - S^beta tau_k^{(alpha)}``, or None off the window interior."""
    value = table.tau(k, alpha)
    if k <= 0 or not is_window_interior(value, table.window, beta):
        return None
    return table.tau(k, alpha + beta) - shift_power(value, 'c', beta, table.window)


# ==== h-quantities ====

@dataclass(frozen=True)
class HQuantities:
    """``h_k``, ``alpha_k``, ``beta_k`` and ``b_k`` at one lattice point."""
    k: int
    alpha: int
    h: Any
    alpha_k: Any
    beta_k: Any
    b_k: Any


def h_value(k, alpha, table):
    return quotient(table.tau(k + 1, alpha), table.tau(k, alpha))


def h_inverse(k, alpha, table):
    """``1/h_k = tau_k / tau_{k+1}``; zero at ``k = -1``."""
    return quotient(table.tau(k, alpha), table.tau(k + 1, alpha))


def alpha_value(k, alpha, table):
    t = table.tau
    return quotient(t(k + 2, alpha) * t(k, alpha + 1), t(k + 1, alpha) * t(k + 1, alpha + 1))


def beta_value(k, alpha, table):
    t = table.tau
    return quotient(t(k + 1, alpha + 1) * t(k, alpha), t(k, alpha + 1) * t(k + 1, alpha))


def b_value(k, alpha, table):
    """``b_k = alpha_{k-1} + beta_k``, the constant term of ``-U_k``'s corner."""
    return alpha_value(k - 1, alpha, table) + beta_value(k, alpha, table)


def h_quantities(k, alpha, table):
    return HQuantities(k, alpha, h_value(k, alpha, table), alpha_value(k, alpha, table),
                       beta_value(k, alpha, table), b_value(k, alpha, table))


# ==== connection matrices ====

def _poly_z(constant, linear=0):
    return LaurentSeries({1: linear, 0: constant})


def matrix_u(k, alpha, table):
    h = h_value(k, alpha, table)
    return LoopMatrix([[_poly_z(-b_value(k, alpha, table), 1), h_inverse(k, alpha, table)],
                       [-h, 0]])


def matrix_v(k, alpha, table):
    return LoopMatrix([[_poly_z(-alpha_value(k - 1, alpha, table), 1), h_inverse(k - 1, alpha + 1, table)],
                       [-h_value(k, alpha, table), 1]])


def matrix_w(k, alpha, table):
    if k < 1:
        raise ConfigError('W_k is defined for k >= 1, got %d' % k)
    return LoopMatrix([[1, -h_inverse(k - 1, alpha, table)],
                       [h_value(k - 1, alpha + 1, table), _poly_z(-beta_value(k - 1, alpha, table), 1)]])


def connection_matrices(k, alpha, table):
    """``(U_k, V_k, W_k)``; ``W`` is None at ``k = 0``."""
    u = matrix_u(k, alpha, table)
    v = matrix_v(k, alpha, table)
    w = matrix_w(k, alpha, table) if k >= 1 else None
    return u, v, w


def determinant_residuals(k, alpha, table):
    """``det U - 1``, ``det V - z`` and ``det W - z`` as series."""
    u, v, w = connection_matrices(k, alpha, table)
    z = LaurentSeries.monomial(1, 1)
    out = {'U': u.det() - 1, 'V': v.det() - z}
    if w is not None:
        out['W'] = w.det() - z
    return out


def zero_curvature_residual(k, alpha, table):
    """``V_k W_{k+1}^-1 - W_{k+1}^{(alpha-1) -1} V_{k+1}^{(alpha-1)}``."""
    left = matrix_v(k, alpha, table) * matrix_w(k + 1, alpha, table).inverse()
    right = matrix_w(k + 1, alpha - 1, table).inverse() * matrix_v(k + 1, alpha - 1, table)
    return left - right


def u_factorization_residual(k, alpha, table):
    """``V_k W_{k+1}^-1 - U_k``."""
    return matrix_v(k, alpha, table) * matrix_w(k + 1, alpha, table).inverse() - matrix_u(k, alpha, table)


def b_relation_residual(k, alpha, table):
    """``alpha_{k-1} + beta_k - alpha_k^{(alpha-1)} - beta_k^{(alpha-1)}``."""
    return (alpha_value(k - 1, alpha, table) + beta_value(k, alpha, table)
            - alpha_value(k, alpha - 1, table) - beta_value(k, alpha - 1, table))


# ==== Birkhoff factor from tau functions ====

def _polynomial_tau(table, k, alpha):
    if isinstance(table, SubstitutedTable):
        return table.polynomial(k, alpha)
    return table.tau(k, alpha)


def _source_tau(table, k, alpha, n):
    return tau2(k, alpha, source_window(table.window, n))


def tau_numerator_matrix(k, alpha, table, n):
    """``P`` with ``g_minus = P / tau_k``: shift fields applied to neighbouring taus.

    The shifts raise indices, so the taus are taken on the source window and the
    fields drop whatever lands outside the table's window.
    """
    if k < 0:
        raise ConfigError('the tau formula for g_minus needs k >= 0, got %d' % k)
    window = table.window
    plus = ShiftSpec('c', '+', n, window)
    minus = ShiftSpec('c', '-', n, window)
    tau = lambda kk: _source_tau(table, kk, alpha, n)
    return LoopMatrix([
        [shift_field_apply(tau(k), plus), shift_field_apply(tau(k - 1), plus).shift(-1)],
        [shift_field_apply(tau(k + 1), minus).shift(-1), shift_field_apply(tau(k), minus)],
    ])


def _divide_matrix(numerator, tau_poly, assignment):
    if assignment is None:
        if not tau_poly:
            raise ZeroDenominatorError('tau vanishes identically')
        return numerator.map_coefficients(lambda p: quotient(p, tau_poly))
    value = tau_poly.substitute(assignment)
    if not value:
        raise ZeroDenominatorError('tau vanishes at this point')
    return numerator.map_coefficients(lambda p: p.substitute(assignment) / value)


def g_minus_from_tau(k, alpha, table, n, assignment=None):
    """``g_minus`` of ``g^{[k](alpha)}`` from the tau formula, truncated at ``z^-n``."""
    numerator = tau_numerator_matrix(k, alpha, table, n)
    return _divide_matrix(numerator, _polynomial_tau(table, k, alpha), assignment).truncate(n)


def first_order_pattern(k, alpha, table):
    """Expected ``z^-1`` coefficient of ``g_minus``: first-order shifts over ``tau_k`` and h's."""
    window = table.window
    tau_k = _polynomial_tau(table, k, alpha)
    source = _source_tau(table, k, alpha, 1)
    first_plus = shift_field_apply(source, ShiftSpec('c', '+', 1, window)).coefficient(-1)
    first_minus = shift_field_apply(source, ShiftSpec('c', '-', 1, window)).coefficient(-1)
    return ((quotient(first_plus, tau_k), h_inverse(k - 1, alpha, table)),
            (h_value(k, alpha, table), quotient(first_minus, tau_k)))


def b_from_first_order(k, alpha, table):
    """``S+[1]tau_k/tau_k - S+[1]tau_{k+1}/tau_{k+1}``, which equals ``b_k``."""
    window = table.window
    plus = ShiftSpec('c', '+', 1, window)
    upper = _polynomial_tau(table, k, alpha)
    lower = _polynomial_tau(table, k + 1, alpha)
    first = lambda kk: shift_field_apply(_source_tau(table, kk, alpha, 1), plus).coefficient(-1)
    return quotient(first(k), upper) - quotient(first(k + 1), lower)


def _birkhoff_checks(k, alpha, window, n, assignment=None, table=None, fock_bound=2):
    window = Window(*window)
    table = table or TauTable2(window)
    checks = []
    spec = GroupSpec(2, window, alpha, k=k, assignment=assignment)
    g = build_g(spec)
    tau_k = table.tau(k, alpha)
    if assignment is None:
        work = n + max(g.max_exponent(), 0) + 1
        numerator = tau_numerator_matrix(k, alpha, table, work)
        product = numerator.adjugate() * g
        checks.append(('negative-part', Residual.of_negative_part(product, n)))
        det = numerator.det()
        checks.append(('determinant', Residual.of_check(
            det.agrees_with(LaurentSeries.monomial(tau_k * tau_k)), 'det P = %s' % det, det.trunc)))
    else:
        g_minus = g_minus_from_tau(k, alpha, table, n + max(g.max_exponent(), 0) + 1, assignment)
        product = g_minus.inverse() * g
        checks.append(('negative-part', Residual.of_negative_part(product, n)))
        solved, _ = birkhoff_solve_numeric(g, n, degree=birkhoff_degree_bound(2, k, 0, window))
        checks.append(('numeric-solver', Residual.of_check(
            solved.agrees_with(g_minus, n), 'solver and tau formula disagree', n)))
    g_minus = g_minus_from_tau(k, alpha, table, n, assignment)
    expected = first_order_pattern(k, alpha, table)
    if assignment is not None:
        expected = tuple(tuple(x if not hasattr(x, 'substitute') else x.substitute(assignment) for x in row)
                         for row in expected)
    actual = g_minus.coefficient_matrix(-1)
    identity = g_minus.coefficient_matrix(0)
    ok = all(actual[i][j] == expected[i][j] for i in range(2) for j in range(2))
    checks.append(('first-order', Residual.of_check(ok, 'z^-1 coefficient %s' % (actual,), n)))
    checks.append(('unipotent', Residual.of_check(
        identity == ((1, 0), (0, 1)), 'z^0 coefficient %s' % (identity,), n)))
    if k >= 0:
        b_direct = b_value(k, alpha, table)
        b_first = b_from_first_order(k, alpha, table)
        if assignment is not None:
            b_direct = b_direct if not hasattr(b_direct, 'substitute') else b_direct.substitute(assignment)
            b_first = b_first.substitute(assignment)
        checks.append(('b-first-order', Residual.of_check(b_direct == b_first, 'b_k %s != %s' % (b_direct, b_first))))
    for name, diff in intertwining_residuals(2, window, alpha).items():
        checks.append(('intertwining-%s' % name, Residual.of_matrix(diff)))
    if assignment is None and k <= fock_bound:
        from TauLibrary.core.fock_oracle import birkhoff_numerator_via_fock
        numerator = tau_numerator_matrix(k, alpha, table, n)
        failures = []
        for a in range(2):
            for b in range(2):
                for j in range(-1, min(n, 3)):
                    expected_coeff = numerator[a, b].coefficient(-j - 1)
                    fock = birkhoff_numerator_via_fock(2, a, b, j, window, k, alpha=alpha)
                    if fock != expected_coeff:
                        failures.append('P_%d%d z^%d' % (a, b, -j - 1))
        checks.append(('fock-matrix-element', Residual.of_check(not failures, ', '.join(failures), n)))
    return checks


def verify_birkhoff2(k, alpha, window, n, assignment=None, table=None):
    """Report on the GL2 Birkhoff factorization built from tau functions."""
    if k < 0:
        raise ConfigError('Birkhoff factorization from tau needs k >= 0, got %d' % k)
    parameters = {'k': k, 'alpha': alpha, 'window': str(Window(*window)), 'truncation': n,
                  'numeric': assignment is not None}
    try:
        checks = _birkhoff_checks(k, alpha, window, n, assignment, table)
    except TauError as err:
        checks = [('error', Residual.of_error(err))]
    return VerificationReport.from_checks('birkhoff-2', (k, alpha), parameters, checks)


# ==== Baker functions ====

def baker2(k, alpha, table, n, assignment=None):
    """``Psi = T^k Q_0^-alpha g_minus``."""
    return LoopMatrix.z_powers([k + alpha, -k]) * g_minus_from_tau(k, alpha, table, n, assignment)


def _numeric(table, assignment):
    return table if assignment is None or is_numeric(table) else table.substituted(assignment)


def baker_relations_residual(k, alpha, table, n, assignment=None):
    """Residuals of ``Psi^{[k+1]} = Psi U``, ``Psi^{(alpha+1)} = Psi V`` and ``Psi^{[k-1](alpha+1)} = Psi W``."""
    source = _numeric(table, assignment)
    psi = baker2(k, alpha, table, n, assignment)
    out = {
        'U': baker2(k + 1, alpha, table, n, assignment) - psi * matrix_u(k, alpha, source),
        'V': baker2(k, alpha + 1, table, n, assignment) - psi * matrix_v(k, alpha, source),
    }
    if k >= 1:
        out['W'] = baker2(k - 1, alpha + 1, table, n, assignment) - psi * matrix_w(k, alpha, source)
    return out


def product_connection_matrices(k, alpha, table, n, assignment=None):
    """``U, V, W`` as products ``g_minus^-1 (translation) g_minus'``."""
    g_inverse = g_minus_from_tau(k, alpha, table, n, assignment).inverse()
    u = g_inverse * build_T(2) * g_minus_from_tau(k + 1, alpha, table, n, assignment)
    v = g_inverse * build_Q(2, 0).inverse() * g_minus_from_tau(k, alpha + 1, table, n, assignment)
    w = None
    if k >= 1:
        w = g_inverse * build_Q(2, 1).inverse() * g_minus_from_tau(k - 1, alpha + 1, table, n, assignment)
    return u, v, w


def product_connection_residuals(k, alpha, table, n, assignment=None):
    """Differences between the g_minus products and the closed-form matrices."""
    source = _numeric(table, assignment)
    u, v, w = product_connection_matrices(k, alpha, table, n, assignment)
    out = {'U': u - matrix_u(k, alpha, source), 'V': v - matrix_v(k, alpha, source)}
    if w is not None:
        out['W'] = w - matrix_w(k, alpha, source)
    return out
