# -*- coding: utf-8 -*-
"""Verification suites: named batteries of identity checks over a run configuration.

Each suite plans a list of :class:`Case` objects. A case runs one module
level function and returns ``(name, Residual)`` pairs, so cases can be
shipped to worker processes. Reports are assembled in case-key order, never
in completion order.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, NamedTuple

from robot.api import logger

from TauLibrary.core import fock_oracle, identities, tau_gl2, tau_gl3
from TauLibrary.core.algebra import FAMILIES, Window
from TauLibrary.core.lattice import random_assignment
from TauLibrary.errors import ConfigError, TauError
from TauLibrary.report import CaseRecord, Residual, VerificationReport

CORRELATION_DEFAULT = 2
CORRELATION_ORDER = 4
OPERATOR_EXCITATIONS = 2
CONNECTION_KINDS = ('V_alpha', 'V_beta', 'W_alpha', 'W_beta', 'U_k', 'U_l')


class Case(NamedTuple):
    key: tuple
    runner: Callable
    arguments: tuple
    parameters: dict


class Suite(NamedTuple):
    name: str
    description: str
    plan: Callable


def evaluate(case):
    """Runs one case; errors raised by the computation become a failing ``error`` record."""
    start = time.perf_counter()
    try:
        named = list(case.runner(*case.arguments))
    except (TauError, ArithmeticError) as err:
        logger.debug('case %s raised %s' % (case.key, err))
        named = [('error', Residual.of_error(err))]
    elapsed = time.perf_counter() - start
    records = []
    for name, residual in named:
        suffix = name if isinstance(name, tuple) else (name,)
        records.append(CaseRecord.from_residual(case.key + suffix, case.parameters, residual, elapsed))
    return records


def _point(window, families, seed, sample):
    return random_assignment(Window(*window), families, seed * 1000 + sample)


def _report_pairs(report, prefix=''):
    return [(prefix + str(record.key[-1]),
             Residual(record.residual_terms, record.witness, record.truncation))
            for record in report.records]


def _matrices(named, prefix=''):
    return [(prefix + name, Residual.of_matrix(matrix)) for name, matrix in named.items()]


# ==== GL2 cases ====

def q_system_case(window, k, alpha):
    table = tau_gl2.TauTable2(window)
    named = [('q-system', Residual.of_value(tau_gl2.qsystem_residual(k, alpha, table)))]
    if k + 2 <= tau_gl2.K_CAP:
        named.append(('rearranged', Residual.of_value(tau_gl2.rearranged_qsystem_residual(k, alpha, table))))
    for beta in (1, -1):
        residual = tau_gl2.shift_consistency_residual(k, alpha, beta, table)
        if residual is not None:
            named.append(('shift%+d' % beta, Residual.of_value(residual)))
    return named


def desnanot_jacobi_case(window, k, alpha):
    table = tau_gl2.TauTable2(window)
    return [('desnanot-jacobi', Residual.of_value(tau_gl2.desnanot_jacobi_residual(k, alpha, table)))]


def zero_curvature2_case(window, k, alpha, truncation, seed, samples):
    table = tau_gl2.TauTable2(window)
    named = [('determinant-%s' % name, Residual.of_value(series))
             for name, series in tau_gl2.determinant_residuals(k, alpha, table).items()]
    named.append(('zero-curvature', Residual.of_matrix(tau_gl2.zero_curvature_residual(k, alpha, table))))
    named.append(('u-factorization', Residual.of_matrix(tau_gl2.u_factorization_residual(k, alpha, table))))
    named.append(('b-relation', Residual.of_value(tau_gl2.b_relation_residual(k, alpha, table))))
    for sample in range(samples):
        point = _point(window, ('c',), seed, sample)
        named += _matrices(tau_gl2.baker_relations_residual(k, alpha, table, truncation, point),
                           'baker-%d-' % sample)
        named += _matrices(tau_gl2.product_connection_residuals(k, alpha, table, truncation, point),
                           'product-%d-' % sample)
    return named


def birkhoff2_case(window, k, alpha, truncation, seed, samples):
    named = _report_pairs(tau_gl2.verify_birkhoff2(k, alpha, window, truncation))
    for sample in range(samples):
        point = _point(window, ('c',), seed, sample)
        report = tau_gl2.verify_birkhoff2(k, alpha, window, truncation, point)
        named += _report_pairs(report, 'numeric-%d-' % sample)
    return named


# ==== GL3 cases ====

def gl3_four_case(window, k, l, alpha, beta):
    table = tau_gl3.TauTable3(window)
    named = [(name, Residual.of_value(value))
             for name, value in tau_gl3.four_equation_residuals(k, l, alpha, beta, table).items()]
    if max(k, l) + 2 <= tau_gl3.K_CAP:
        named += [(name, Residual.of_value(value))
                  for name, value in tau_gl3.intermediate_residuals(k, l, alpha, beta, table).items()]
    expected = tau_gl3.closed_form(k, l, alpha, beta, window)
    if expected is not None:
        named.append(('closed-form', Residual.of_value(table.tau(k, l, alpha, beta) - expected)))
    named.append(('degrees', Residual.of_check(
        tau_gl3.degree_check(k, l, alpha, beta, window), 'a composition term has the wrong degrees')))
    return named


def gl3_components_case(window, k, l, alpha, beta):
    table = tau_gl3.TauTable3(window)
    return [(name, Residual.of_value(value))
            for name, value in tau_gl3.component_equation_residuals(k, l, alpha, beta, table).items()]


def connection_kinds(k, l):
    """Elementary connection matrices defined at ``(k, l)``."""
    return [kind for kind in CONNECTION_KINDS
            if not (kind == 'W_alpha' and k < 1) and not (kind == 'W_beta' and l < 1)]


def zero_curvature3_case(window, k, l, alpha, beta, truncation, seed, samples):
    table = tau_gl3.TauTable3(window)
    site = (k, l, alpha, beta)
    left, right = tau_gl3.zero_curvature3_residual(*site, table)
    named = [('zero-curvature-k', Residual.of_matrix(left)), ('zero-curvature-l', Residual.of_matrix(right))]
    named += _matrices(tau_gl3.w_inverse_residuals(*site, table), 'inverse-')
    for kind in connection_kinds(k, l):
        matrix = tau_gl3.connection3(kind, *site, table)
        expected = tau_gl3.expected_determinant(kind)
        named.append(('determinant-%s' % kind, Residual.of_value(matrix.det() - expected)))
        named.append(('positive-%s' % kind, Residual.of_check(
            tau_gl3.is_positive(matrix), '%s has negative powers of z' % kind)))
    for name, mismatched in tau_gl3.u_pattern_mismatches(*site, table).items():
        named.append(('pattern-%s' % name, Residual.of_check(
            not mismatched, 'entries %s' % ' '.join('(%d,%d)' % entry for entry in mismatched))))
    named += _matrices(tau_gl3.path_independence_residuals(*site, table), 'path-')
    for sample in range(samples):
        point = _point(window, FAMILIES, seed, sample)
        for kind in connection_kinds(k, l):
            named.append(('first-order-%d-%s' % (sample, kind), Residual.of_matrix(
                tau_gl3.first_order_residual(kind, *site, table, point))))
            named.append(('elementary-%d-%s' % (sample, kind), Residual.of_matrix(
                tau_gl3.elementary_connection_residual(kind, *site, table, truncation, point))))
        named.append(('two-step-%d' % sample, Residual.of_matrix(
            tau_gl3.two_step_gamma_residual(*site, table, truncation, point))))
    return named


def birkhoff3_case(window, k, l, alpha, beta, truncation, seed, samples):
    named = _report_pairs(tau_gl3.verify_birkhoff3(k, l, alpha, beta, window, truncation))
    for sample in range(samples):
        point = _point(window, FAMILIES, seed, sample)
        report = tau_gl3.verify_birkhoff3(k, l, alpha, beta, window, truncation, point)
        named += _report_pairs(report, 'numeric-%d-' % sample)
    return named


# ==== Fock, correlation and determinant cases ====

def fock_gl2_case(window, k, alpha):
    fock = fock_oracle.tau_via_fock(2, k, alpha=alpha, window=window)
    expected = tau_gl2.tau2(k, alpha, Window(*window))
    return [('tau', Residual.of_value(fock - expected))]


def fock_gl3_case(window, k, l, alpha, beta):
    fock = fock_oracle.tau_via_fock(3, k, l, alpha, beta, window)
    expected = tau_gl3.tau3(k, l, alpha, beta, Window(*window))
    return [('tau', Residual.of_value(fock - expected))]


def operator_case(n, max_excitations):
    return fock_oracle.operator_identity_checks(n, max_excitations)


def correlation_case(max_size, order):
    return fock_oracle.correlation_checks(max_size, order)


def determinant_case(max_size, seed, samples, window):
    return identities.determinant_identity_checks(max_size, seed, samples, window)


# ==== planners ====

def _window_text(config):
    return '%d..%d' % config.window


def _gl2_sites(config, k_from=0, k_to=None):
    top = config.k_max if k_to is None else min(config.k_max, k_to)
    return [(k, alpha) for k in range(k_from, top + 1) for alpha in config.alphas]


def _gl3_sites(config, top):
    return [(k, l, alpha, beta)
            for k in range(min(config.k_max, top) + 1)
            for l in range(min(config.l_max, top) + 1)
            for alpha in config.alphas for beta in config.betas]


def _gl2_parameters(config, k, alpha, **extra):
    parameters = {'k': k, 'alpha': alpha, 'window': _window_text(config)}
    parameters.update(extra)
    return parameters


def _gl3_parameters(config, k, l, alpha, beta, **extra):
    parameters = {'k': k, 'l': l, 'alpha': alpha, 'beta': beta, 'window': _window_text(config)}
    parameters.update(extra)
    return parameters


def plan_q_system(config):
    return [Case((k, alpha), q_system_case, (config.window, k, alpha), _gl2_parameters(config, k, alpha))
            for k, alpha in _gl2_sites(config, 0, tau_gl2.K_CAP - 1)]


def plan_desnanot_jacobi(config):
    top = max(config.k_max, 2)
    return [Case((k, alpha), desnanot_jacobi_case, (config.window, k, alpha), _gl2_parameters(config, k, alpha))
            for k in range(2, min(top, tau_gl2.K_CAP) + 1) for alpha in config.alphas]


def plan_zero_curvature2(config):
    extra = {'truncation': config.truncation, 'seed': config.seed, 'samples': config.samples}
    return [Case((k, alpha), zero_curvature2_case,
                 (config.window, k, alpha, config.truncation, config.seed, config.samples),
                 _gl2_parameters(config, k, alpha, **extra))
            for k, alpha in _gl2_sites(config, 0, tau_gl2.K_CAP - 2)]


def plan_birkhoff2(config):
    extra = {'truncation': config.truncation, 'seed': config.seed, 'samples': config.samples}
    return [Case((k, alpha), birkhoff2_case,
                 (config.window, k, alpha, config.truncation, config.seed, config.samples),
                 _gl2_parameters(config, k, alpha, **extra))
            for k, alpha in _gl2_sites(config, 0, tau_gl2.K_CAP - 1)]


def plan_gl3_four(config):
    return [Case(site, gl3_four_case, (config.window,) + site, _gl3_parameters(config, *site))
            for site in _gl3_sites(config, tau_gl3.K_CAP - 1)]


def plan_gl3_components(config):
    return [Case(site, gl3_components_case, (config.window,) + site, _gl3_parameters(config, *site))
            for site in _gl3_sites(config, tau_gl3.K_CAP - 2)]


def plan_zero_curvature3(config):
    extra = {'truncation': config.truncation, 'seed': config.seed, 'samples': config.samples}
    return [Case(site, zero_curvature3_case,
                 (config.window,) + site + (config.truncation, config.seed, config.samples),
                 _gl3_parameters(config, *site, **extra))
            for site in _gl3_sites(config, tau_gl3.K_CAP - 2)]


def plan_birkhoff3(config):
    extra = {'truncation': config.truncation, 'seed': config.seed, 'samples': config.samples}
    return [Case(site, birkhoff3_case,
                 (config.window,) + site + (config.truncation, config.seed, config.samples),
                 _gl3_parameters(config, *site, **extra))
            for site in _gl3_sites(config, tau_gl3.K_CAP - 1)]


def plan_fock_cross(config):
    cases = [Case(('gl2', k, alpha), fock_gl2_case, (config.window, k, alpha),
                  _gl2_parameters(config, k, alpha))
             for k, alpha in _gl2_sites(config, 0, fock_oracle.FOCK_CAP)]
    for site in _gl3_sites(config, tau_gl3.K_CAP):
        if site[0] + site[1] <= fock_oracle.FOCK_CAP:
            cases.append(Case(('gl3',) + site, fock_gl3_case, (config.window,) + site,
                              _gl3_parameters(config, *site)))
    for n in (1, 2, 3):
        cases.append(Case(('operators', n), operator_case, (n, OPERATOR_EXCITATIONS),
                          {'n': n, 'max_excitations': OPERATOR_EXCITATIONS}))
    return cases


def plan_correlations(config):
    size = config.size_limit(CORRELATION_DEFAULT)
    order = config.order or CORRELATION_ORDER
    return [Case((), correlation_case, (size, order), {'max': size, 'order': order})]


def plan_det_identities(config):
    size = config.size_limit(4)
    return [Case((), determinant_case, (size, config.seed, config.samples, config.window),
                 {'max': size, 'seed': config.seed, 'samples': config.samples,
                  'window': _window_text(config)})]


SUITES = dict((suite.name, suite) for suite in (
    Suite('q-system', 'GL2 Q-system, its quadratic rearrangement and shift consistency', plan_q_system),
    Suite('desnanot-jacobi', 'Desnanot-Jacobi identity for GL2 Hankel determinants', plan_desnanot_jacobi),
    Suite('zero-curvature-2', 'GL2 connection matrices, zero curvature and Baker relations',
          plan_zero_curvature2),
    Suite('birkhoff-2', 'GL2 Birkhoff factorization from tau functions', plan_birkhoff2),
    Suite('gl3-four', 'GL3 bilinear equations, intermediate forms and closed forms', plan_gl3_four),
    Suite('gl3-components', 'GL3 rational component equations', plan_gl3_components),
    Suite('zero-curvature-3', 'GL3 elementary connection matrices, paths and zero curvature',
          plan_zero_curvature3),
    Suite('birkhoff-3', 'GL3 Birkhoff factorization from tau functions', plan_birkhoff3),
    Suite('fock-cross', 'Fock-space tau functions and operator identities', plan_fock_cross),
    Suite('correlations', 'One-component fermion correlation functions', plan_correlations),
    Suite('det-identities', 'Vandermonde, Heine and Cauchy-type determinant identities',
          plan_det_identities),
))


def list_suites():
    """``(name, description)`` pairs in registry order."""
    return [(suite.name, suite.description) for suite in SUITES.values()]


def get_suite(name):
    try:
        return SUITES[name]
    except KeyError:
        raise ConfigError('unknown suite %r, expected one of %s' % (name, ', '.join(SUITES))) from None


def plan_suite(config):
    return get_suite(config.suite).plan(config)


def run_suite(config):
    """Validates ``config``, runs every case of its suite and returns the report."""
    suite = get_suite(config.suite)
    config.validate()
    cases = suite.plan(config)
    logger.info('suite %s: %d case%s on %d worker%s' % (
        suite.name, len(cases), '' if len(cases) == 1 else 's', config.workers,
        '' if config.workers == 1 else 's'))
    if config.workers > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(evaluate, cases))
    else:
        results = [evaluate(case) for case in cases]
    report = VerificationReport(suite.name)
    report.extend(record for records in results for record in records)
    logger.info(report.summary())
    return report
