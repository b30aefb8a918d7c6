# -*- coding: utf-8 -*-
"""Truncated multi-component semi-infinite wedge space.

An elementary wedge is stored as its canonical word of fermion modes applied
to the vacuum: components in descending order, inside one component the
wedging modes before the unwedging ones, each group by increasing mode.
Only creating modes (``k <= -1``) occur in a canonical word, so a word is
fixed by the particle and hole sets of every component. Wedges are
orthonormal for the symmetric pairing.

``psi+_{a,(k)}`` wedges ``e_a z^k`` and ``psi-_{a,(k)}`` unwedges
``e_a z^(-k-1)``; both anticommute across components.
"""

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial
from types import MappingProxyType

from robot.api import logger

from TauLibrary.core.algebra import ZERO, LaurentPoly, Poly, Window
from TauLibrary.errors import CapExceededError, ConfigError
from TauLibrary.report import CaseRecord, Residual, VerificationReport

PLUS = '+'
MINUS = '-'
EXCITATION_CAP = 8
FOCK_CAP = 4
CORRELATION_CAP = 4

# family -> (a, b) of the E_ab modes it multiplies
GAMMA_COMPONENTS = {'c': (1, 0), 'd': (2, 0), 'e': (2, 1)}


def _sign(k):
    return -1 if k % 2 else 1


def _op_key(op):
    component, sign, mode = op
    return (-component, sign != PLUS, mode)


def _check_sign(sign):
    if sign not in (PLUS, MINUS):
        raise ConfigError("fermion sign must be '+' or '-', got %r" % (sign,))


# ==== states and vectors ====

@dataclass(frozen=True)
class WedgeState:
    """Elementary wedge given by its canonical word ``((component, sign, mode), ...)``."""
    ops: tuple = ()

    @classmethod
    def from_sets(cls, particles=None, holes=None):
        """Build from ``{component: levels}``; particles sit below zero, holes at or above."""
        ops = []
        for component, levels in (particles or {}).items():
            for level in levels:
                if level >= 0:
                    raise ConfigError('particle level must be negative, got %d' % level)
                ops.append((component, PLUS, level))
        for component, levels in (holes or {}).items():
            for level in levels:
                if level < 0:
                    raise ConfigError('hole level must be nonnegative, got %d' % level)
                ops.append((component, MINUS, -level - 1))
        return cls(tuple(sorted(set(ops), key=_op_key)))

    def particles(self, a):
        return frozenset(mode for c, s, mode in self.ops if c == a and s == PLUS)

    def holes(self, a):
        return frozenset(-mode - 1 for c, s, mode in self.ops if c == a and s == MINUS)

    def charge(self, a):
        return sum(1 if s == PLUS else -1 for c, s, _ in self.ops if c == a)

    def charges(self, n):
        return tuple(self.charge(a) for a in range(n))

    @property
    def degree(self):
        return sum(1 if s == PLUS else -1 for _, s, _ in self.ops)

    def excitations(self, a):
        return sum(1 for c, _, _ in self.ops if c == a)

    def __str__(self):
        if not self.ops:
            return 'v0'
        return ' '.join('psi%s_{%d,(%d)}' % (s, c, m) for c, s, m in self.ops) + ' v0'


def _accumulate(out, state, value):
    if state in out:
        out[state] = out[state] + value
    else:
        out[state] = value


class FockVector:
    """Finite combination of elementary wedges.

    Coefficients may be integers, rationals, polynomials or Laurent
    polynomials; zero coefficients are dropped.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        self._terms = {state: coeff for state, coeff in (terms or {}).items() if coeff}

    @classmethod
    def vacuum(cls, coeff=1):
        return cls({WedgeState(): coeff})

    @classmethod
    def basis(cls, state, coeff=1):
        return cls({state: coeff})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, state):
        return self._terms.get(state, 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        out = dict(self._terms)
        for state, coeff in other.items():
            _accumulate(out, state, coeff)
        return FockVector(out)

    def __neg__(self):
        return FockVector({state: -coeff for state, coeff in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return FockVector({state: coeff * factor for state, coeff in self._terms.items()})

    def pair(self, other):
        """Symmetric bilinear pairing with orthonormal wedges."""
        small, large = (self, other) if len(self) <= len(other) else (other, self)
        total = 0
        for state, coeff in small.items():
            if state in large._terms:
                total = total + coeff * large._terms[state]
        return total

    def charge_sets(self, n):
        return {state.charges(n) for state in self._terms}

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        if self._terms.keys() != other._terms.keys():
            return False
        return all(coeff == other._terms[state] for state, coeff in self._terms.items())

    __hash__ = None

    def __repr__(self):
        inner = ', '.join('%s: %s' % (state, coeff) for state, coeff in self._terms.items())
        return 'FockVector({%s})' % inner


def _lift(vector, state_op):
    out = {}
    for state, coeff in vector.items():
        for factor, image in state_op(state):
            _accumulate(out, image, coeff * factor)
    return FockVector(out)


# ==== fermions ====

def _psi_state(a, sign, k, state):
    ops = state.ops
    if k <= -1:
        op = (a, sign, k)
        if op in ops:
            return ()
        pos = bisect_left([_op_key(o) for o in ops], _op_key(op))
        word = ops[:pos] + (op,) + ops[pos:]
        count = sum(1 for c, _, _ in word if c == a)
        if count > EXCITATION_CAP:
            raise CapExceededError('excitations', count, EXCITATION_CAP)
        return ((_sign(pos), WedgeState(word)),)
    partner = (a, MINUS if sign == PLUS else PLUS, -k - 1)
    try:
        pos = ops.index(partner)
    except ValueError:
        return ()
    return ((_sign(pos), WedgeState(ops[:pos] + ops[pos + 1:])),)


def apply_psi(a, sign, k, vector):
    """``psi^sign_{a,(k)}`` applied to ``vector``."""
    _check_sign(sign)
    return _lift(vector, lambda state: _psi_state(a, sign, k, state))


def apply_word(word, vector):
    """Apply ``[(a, sign, k), ...]`` written left to right, the rightmost first."""
    for a, sign, k in reversed(list(word)):
        vector = apply_psi(a, sign, k, vector)
    return vector


# ==== translations ====

def _q_state(a, power, state):
    # Q_a psi+_{a,(k)} = psi+_{a,(k-1)} Q_a, Q_a psi-_{a,(k)} = psi-_{a,(k+1)} Q_a,
    # and Q_a anticommutes with the modes of every other component
    delta = {PLUS: -power, MINUS: power}
    word = [(c, s, m + delta[s]) if c == a else (c, s, m) for c, s, m in state.ops]
    others = sum(1 for c, _, _ in state.ops if c != a)
    start = WedgeState(((a, PLUS if power > 0 else MINUS, -1),))
    image = apply_word(word, FockVector.basis(start, _sign(others)))
    return tuple((coeff, target) for target, coeff in image.items())


def apply_Q(a, power, vector):
    """``Q_a^power`` applied to ``vector``."""
    step = 1 if power > 0 else -1
    for _ in range(abs(power)):
        vector = _lift(vector, lambda state: _q_state(a, step, state))
    return vector


def apply_T_ab(a, b, power, vector):
    """``(Q_a Q_b^-1)^power`` applied to ``vector``."""
    if a == b:
        raise ConfigError('translation T_ab needs a != b')
    for _ in range(abs(power)):
        if power > 0:
            vector = apply_Q(a, 1, apply_Q(b, -1, vector))
        else:
            vector = apply_Q(b, 1, apply_Q(a, -1, vector))
    return vector


def apply_T(s, power, vector):
    """``T_s^power`` with ``T_s = Q_s Q_{s-1}^-1``."""
    return apply_T_ab(s, s - 1, power, vector)


def q_vacuum(powers):
    """``Q_{n-1}^{p_{n-1}} ... Q_0^{p_0} v0``, the ``Q_0`` power applied first."""
    vector = FockVector.vacuum()
    for a, power in enumerate(powers):
        vector = apply_Q(a, power, vector)
    return vector


def translation_states(n, exponents):
    """Translated vacuum: ``Q^k v0`` (n=1), ``T^k v0`` (n=2) or ``T_1^k T_2^l v0`` (n=3)."""
    if isinstance(exponents, int):
        exponents = (exponents,)
    exponents = tuple(exponents) + (0,) * (max(n - 1, 1) - len(exponents))
    if n == 1:
        return apply_Q(0, exponents[0], FockVector.vacuum())
    if n == 2:
        return apply_T(1, exponents[0], FockVector.vacuum())
    if n == 3:
        k, l = exponents[:2]
        return apply_T(1, k, apply_T(2, l, FockVector.vacuum()))
    raise ConfigError('translation states are implemented for n = 1, 2, 3, got %r' % (n,))


# ==== loop algebra modes ====

def _x_state(a, b, k, state):
    # E_ab z^k = sum_l psi+_{a,(k+l)} psi-_{b,(-l-1)}; only these l act nonzero
    candidates = set(state.particles(b))
    candidates.update(range(0, -k))
    candidates.update(h - k for h in state.holes(a) if h - k >= 0)
    out = []
    for l in sorted(candidates):
        image = apply_psi(a, PLUS, k + l, apply_psi(b, MINUS, -l - 1, FockVector.basis(state)))
        out.extend((coeff, target) for target, coeff in image.items())
    return out


def apply_X(a, b, k, vector):
    """Off-diagonal loop algebra element ``E_ab z^k``."""
    if a == b:
        raise ConfigError('diagonal modes need normal ordering; only a != b is supported')
    return _lift(vector, lambda state: _x_state(a, b, k, state))


def apply_Gamma(family, shift, vector, window):
    """``Res_z (sum_n x_{n+shift} z^(-n-1)) E_ab(z)`` over the live window of ``family``."""
    if family not in GAMMA_COMPONENTS:
        raise ConfigError('unknown coordinate family %r' % (family,))
    a, b = GAMMA_COMPONENTS[family]
    window = Window(*window)
    out = FockVector()
    for index in window.indices():
        image = apply_X(a, b, shift - index - 1, vector)
        if image:
            out = out + image.scale(Poly.variable(family, index))
    return out


def gamma_power(family, shift, power, vector, window):
    """``Gamma^power / power!`` applied to ``vector``."""
    for _ in range(power):
        vector = apply_Gamma(family, shift, vector, window)
    return vector.scale(Fraction(1, factorial(power)))


def _gl3_group_element(n_c, n_d, n_e, alpha, beta, window, vector=None):
    vector = FockVector.vacuum() if vector is None else vector
    vector = gamma_power('e', beta, n_e, vector, window)
    vector = gamma_power('d', alpha, n_d, vector, window)
    return gamma_power('c', alpha - beta, n_c, vector, window)


def _check_fock_cap(total):
    if total > FOCK_CAP:
        raise CapExceededError('fock k + l', total, FOCK_CAP)


# ==== matrix elements ====

def tau_via_fock(n, k, l=0, alpha=0, beta=0, window=(-4, 4)):
    """``<T... v0, exp(Gamma) v0>``; grading leaves one power of each exponential."""
    window = Window(*window)
    if n == 2:
        if k < 0:
            return ZERO
        _check_fock_cap(k)
        right = gamma_power('c', alpha, k, FockVector.vacuum(), window)
        value = translation_states(2, k).pair(right)
    elif n == 3:
        if k < 0 or l < 0:
            return ZERO
        _check_fock_cap(k + l)
        left = translation_states(3, (k, l))
        value = 0
        for n_d in range(min(k, l) + 1):
            right = _gl3_group_element(k - n_d, n_d, l - n_d, alpha, beta, window)
            value = value + left.pair(right)
    else:
        raise ConfigError('tau functions are implemented for n = 2, 3, got %r' % (n,))
    logger.debug('fock tau n=%d k=%d l=%d alpha=%d beta=%d on %s' % (n, k, l, alpha, beta, window))
    return Poly.coerce(value)


def birkhoff_numerator_via_fock(n, a, b, j, window, k, l=0, alpha=0, beta=0):
    """``z^(-j-1)`` coefficient of the tau-times-``g_minus`` entry ``(a, b)`` as a fermionic matrix element.

    Pairs ``Q_b^-1 v0`` with ``psi-_{a,(j)} T^-k g v0``; for n=3 the
    translation is ``T_2^-l T_1^-k``. The GL3 value carries the sign twist
    ``fock_twist`` relative to the loop-group entry.
    """
    window = Window(*window)
    left = FockVector.basis(WedgeState(((b, MINUS, -1),)))
    if n == 2:
        power = k + a - b
        if power < 0:
            return ZERO
        _check_fock_cap(power)
        right = gamma_power('c', alpha, power, FockVector.vacuum(), window)
        right = apply_psi(a, MINUS, j, apply_T(1, -k, right))
        return Poly.coerce(left.pair(right))
    if n != 3:
        raise ConfigError('Birkhoff numerators are implemented for n = 2, 3, got %r' % (n,))
    top_c = k - (a == 0) + (b == 0)
    top_e = l + (a == 2) - (b == 2)
    if top_c < 0 or top_e < 0:
        return ZERO
    _check_fock_cap(top_c + top_e)
    value = 0
    for n_d in range(min(top_c, top_e) + 1):
        right = _gl3_group_element(top_c - n_d, n_d, top_e - n_d, alpha, beta, window)
        right = apply_psi(a, MINUS, j, apply_T(2, -l, apply_T(1, -k, right)))
        value = value + left.pair(right)
    return Poly.coerce(value)


# ==== correlation functions ====

def _check_correlation_size(*sizes):
    for size in sizes:
        if size > CORRELATION_CAP:
            raise CapExceededError('correlation size', size, CORRELATION_CAP)
        if size < 0:
            raise ConfigError('correlation sizes must be nonnegative, got %d' % size)


def _apply_field(sign, position, exponents, vector, nvars):
    # psi(z) = sum_j psi_(j) z^(-j-1), restricted to the given powers of z
    out = FockVector()
    for exponent in exponents:
        image = apply_psi(0, sign, -exponent - 1, vector)
        if image:
            out = out + image.scale(LaurentPoly.variable(nvars, position, exponent))
    return out


def _laurent(value, nvars):
    return value if isinstance(value, LaurentPoly) else LaurentPoly.constant(nvars, value)


def vandermonde_product(count, family='z'):
    """``prod_{i > j} (z_i - z_j)`` as a polynomial in ``z_1..z_count``."""
    out = Poly.constant(1)
    for i in range(1, count + 1):
        for j in range(1, i):
            out = out * (Poly.variable(family, i) - Poly.variable(family, j))
    return out


def correlation_pp(count, sign=PLUS):
    """``<Q^(+-count) v0, psi(z_count) ... psi(z_1) v0>`` as a polynomial in the ``z_i``."""
    _check_sign(sign)
    if count < 1:
        raise ConfigError('correlation needs at least one field, got %d' % count)
    _check_correlation_size(count)
    vector = FockVector.vacuum(LaurentPoly.constant(count))
    for position in range(count):
        vector = _apply_field(sign, position, range(count), vector, count)
    target = q_vacuum((count if sign == PLUS else -count,))
    return _laurent(target.pair(vector), count).to_poly('z')


def _variables(nvars):
    return [LaurentPoly.variable(nvars, i) for i in range(nvars)]


def _cauchy_numerator(m, n, nvars):
    var = _variables(nvars)
    w, y = var[:m], var[m:m + n]
    out = LaurentPoly.constant(nvars)
    for group in (w, y):
        for i, j in combinations(range(len(group)), 2):
            out = out * (group[i] - group[j])
    return out


def _expansion(nvars, small, large, terms):
    # 1/(large - small) = sum_t small^t large^(-t-1)
    out = {}
    for t in range(terms + 1):
        exps = [0] * nvars
        exps[small] = t
        exps[large] = -t - 1
        out[tuple(exps)] = 1
    return LaurentPoly(nvars, out)


def _cauchy_rhs(m, n, order, nvars, keep):
    out = _cauchy_numerator(m, n, nvars)
    for i in range(m):
        for j in range(n):
            out = out.multiply(_expansion(nvars, m + j, i, order), keep)
    return out


def correlation_mn(m, n, order):
    """Both sides of ``<Q^(m-n) v0, psi+(w_1..w_m) psi-(y_1..y_n) v0>`` as Laurent polynomials.

    Variables are ``w_1..w_m`` then ``y_1..y_n``; both sides are exact on
    the terms with every ``y`` power at most ``order``.
    """
    _check_correlation_size(m, n)
    nvars = m + n
    vector = FockVector.vacuum(LaurentPoly.constant(nvars))
    for j in reversed(range(n)):
        vector = _apply_field(MINUS, m + j, range(0, order + 1), vector, nvars)
    for i in reversed(range(m)):
        vector = _apply_field(PLUS, i, range(-order - 1, m + 1), vector, nvars)
    lhs = _laurent(q_vacuum((m - n,)).pair(vector), nvars)

    def keep(exps):
        return all(e <= order for e in exps[m:])

    return lhs, _cauchy_rhs(m, n, order, nvars, keep)


def correlation_extra(m, n, order):
    """Both sides with one more ``psi-(z)`` on the left, ``z`` the last variable.

    The right side gains ``prod (z - y_i) / prod (z - w_i)`` expanded in
    ``w/z``; both are compared on the terms with ``z`` power at least
    ``-order`` and every ``y`` power at most ``order``.
    """
    _check_correlation_size(m, n)
    nvars = m + n + 1
    z = m + n
    vector = FockVector.vacuum(LaurentPoly.constant(nvars))
    for j in reversed(range(n)):
        vector = _apply_field(MINUS, m + j, range(0, order + 1), vector, nvars)
    for i in reversed(range(m)):
        vector = _apply_field(PLUS, i, range(-order - 1, order + m + 2), vector, nvars)
    vector = _apply_field(MINUS, z, range(-order, m + n + 2), vector, nvars)
    lhs = _laurent(q_vacuum((m - n - 1,)).pair(vector), nvars)

    def keep(exps):
        return exps[z] >= -order and all(e <= order for e in exps[m:z])

    var = _variables(nvars)
    rhs = LaurentPoly.constant(nvars)
    for j in range(n):
        rhs = rhs * (var[z] - var[m + j])
    rhs = rhs * _cauchy_rhs(m, n, order, nvars, keep)
    for i in range(m):
        rhs = rhs.multiply(_expansion(nvars, i, z, order + n + 1), keep)
    return lhs.filtered(keep), rhs.filtered(keep)


def factorization_values(monomials):
    """Full matrix element of ``M_{n-1} ... M_0`` and the product of its one-component pieces.

    ``monomials[a]`` lists ``(sign, mode)`` pairs of component ``a``, leftmost first.
    """
    n = len(monomials)
    charges = [sum(1 if sign == PLUS else -1 for sign, _ in ops) for ops in monomials]
    full = FockVector.vacuum()
    for a, ops in enumerate(monomials):
        full = apply_word([(a, sign, mode) for sign, mode in ops], full)
    whole = q_vacuum(charges).pair(full)
    pieces = 1
    for a, ops in enumerate(monomials):
        single = apply_word([(0, sign, mode) for sign, mode in ops], FockVector.vacuum())
        pieces *= q_vacuum((charges[a],)).pair(single)
    logger.debug('factorization over %d components: %s = %s' % (n, whole, pieces))
    return whole, pieces


def factorization_check(monomials):
    whole, pieces = factorization_values(monomials)
    return whole == pieces


# ==== operator identities ====

def basis_states(n, max_excitations=2, particles=(-2, -1), holes=(0, 1)):
    """Wedges with particles and holes from the given levels, at most ``max_excitations`` in total."""
    slots = [(a, PLUS, level) for a in range(n) for level in particles]
    slots += [(a, MINUS, -level - 1) for a in range(n) for level in holes]
    states = []
    for size in range(max_excitations + 1):
        for chosen in combinations(slots, size):
            states.append(WedgeState(tuple(sorted(chosen, key=_op_key))))
    return states


def _tally(cases):
    failures = 0
    witness = None
    for label, left, right in cases:
        if left != right:
            failures += 1
            if witness is None:
                witness = '%s: %s != %s' % (label, left, right)
    return Residual(failures, witness and witness[:200])


def _anticommutator_cases(n, states, modes):
    basis = FockVector.basis
    for state in states:
        v = basis(state)
        for a, b in product(range(n), repeat=2):
            for j, k in product(modes, repeat=2):
                mixed = apply_psi(a, PLUS, j, apply_psi(b, MINUS, k, v)) \
                    + apply_psi(b, MINUS, k, apply_psi(a, PLUS, j, v))
                expected = v if a == b and j + k + 1 == 0 else FockVector()
                yield ('{psi+_%d(%d), psi-_%d(%d)} on %s' % (a, j, b, k, state), mixed, expected)
                for sign in (PLUS, MINUS):
                    same = apply_psi(a, sign, j, apply_psi(b, sign, k, v)) \
                        + apply_psi(b, sign, k, apply_psi(a, sign, j, v))
                    yield ('{psi%s_%d(%d), psi%s_%d(%d)} on %s' % (sign, a, j, sign, b, k, state),
                           same, FockVector())


def _adjoint_cases(n, states, modes):
    basis = FockVector.basis
    for state in states:
        for a in range(n):
            for k in modes:
                for image, coeff in apply_psi(a, PLUS, k, basis(state)).items():
                    back = basis(state).pair(apply_psi(a, MINUS, -k - 1, basis(image)))
                    yield ('psi+_%d(%d) adjoint at %s' % (a, k, state), coeff, back)
                for image, coeff in apply_psi(a, MINUS, -k - 1, basis(state)).items():
                    forth = apply_psi(a, PLUS, k, basis(image)).pair(basis(state))
                    yield ('psi-_%d(%d) adjoint at %s' % (a, -k - 1, state), forth, coeff)


def _unitarity_cases(n, states):
    basis = FockVector.basis
    for state in states:
        v = basis(state)
        for a in range(n):
            for power in (1, -1):
                for image, coeff in apply_Q(a, power, v).items():
                    back = v.pair(apply_Q(a, -power, basis(image)))
                    yield ('Q_%d^%d adjoint at %s' % (a, power, state), coeff, back)
                yield ('Q_%d^%d Q_%d^%d at %s' % (a, -power, a, power, state),
                       apply_Q(a, -power, apply_Q(a, power, v)), v)


def _grading_cases(n, states, modes):
    basis = FockVector.basis
    unit = lambda a, step: tuple(step if c == a else 0 for c in range(n))
    moved = lambda charges, delta: {tuple(x + d for x, d in zip(charges, delta))}
    for state in states:
        v = basis(state)
        charges = state.charges(n)
        for a in range(n):
            for k in modes:
                for sign, step in ((PLUS, 1), (MINUS, -1)):
                    image = apply_psi(a, sign, k, v)
                    if image:
                        yield ('psi%s_%d(%d) degree at %s' % (sign, a, k, state),
                               image.charge_sets(n), moved(charges, unit(a, step)))
            for power in (1, -1):
                yield ('Q_%d^%d degree at %s' % (a, power, state),
                       apply_Q(a, power, v).charge_sets(n), moved(charges, unit(a, power)))
            for b in range(n):
                if a != b:
                    image = apply_X(a, b, -1, v)
                    if image:
                        delta = tuple(x + y for x, y in zip(unit(a, 1), unit(b, -1)))
                        yield ('E_%d%d degree at %s' % (a, b, state), image.charge_sets(n), moved(charges, delta))


def _q_anticommute_cases(n, states):
    for state in states:
        v = FockVector.basis(state)
        for a, b in combinations(range(n), 2):
            for p, q in product((1, -1), repeat=2):
                left = apply_Q(a, p, apply_Q(b, q, v))
                right = -apply_Q(b, q, apply_Q(a, p, v))
                yield ('Q_%d^%d Q_%d^%d at %s' % (a, p, b, q, state), left, right)


def _translation_cases(n, states):
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for state in states:
        v = FockVector.basis(state)
        for a, b in pairs:
            for c in range(n):
                if c not in (a, b):
                    for power in (1, -1):
                        yield ('T_%d%d Q_%d^%d at %s' % (a, b, c, power, state),
                               apply_T_ab(a, b, 1, apply_Q(c, power, v)),
                               apply_Q(c, power, apply_T_ab(a, b, 1, v)))
            for m in range(-2, 3):
                yield ('T_%d%d^%d at %s' % (a, b, m, state), apply_T_ab(a, b, m, v),
                       apply_Q(a, m, apply_Q(b, -m, v)).scale(_sign(m * (m - 1) // 2)))
        if n != 3:
            continue
        for k, l in product(range(-1, 2), repeat=2):
            expected = apply_Q(2, k, apply_Q(1, l - k, apply_Q(0, -l, v)))
            yield ('T_2^%d T_1^%d at %s' % (k, l, state), apply_T(2, k, apply_T(1, l, v)),
                   expected.scale(_sign(k * (k - 1) // 2 + l * (l - 1) // 2)))
        for x, y, g in product(range(2), repeat=3):
            composed = apply_T_ab(1, 0, x, apply_T_ab(2, 0, y, apply_T_ab(2, 1, g, v)))
            q_form = apply_Q(2, y + g, apply_Q(1, x - g, apply_Q(0, -x - y, v)))
            sign = _sign(x * (x - 1) // 2 + y * (y - 1) // 2 + g * (g - 1) // 2 + x * g)
            yield ('T_10^%d T_20^%d T_21^%d as Q at %s' % (x, y, g, state), composed, q_form.scale(sign))
            t_form = apply_T(2, y + g, apply_T(1, x + y, v))
            sign = _sign(y * (y - 1) // 2 + x * y + x * g + y * g)
            yield ('T_10^%d T_20^%d T_21^%d as T at %s' % (x, y, g, state), composed, t_form.scale(sign))


def _vacuum_cases(n):
    vacuum = FockVector.vacuum()
    for a in range(n):
        for k in range(-3, 4):
            sign = PLUS if k > 0 else MINUS
            word = [(a, sign, -i) for i in range(abs(k), 0, -1)]
            yield ('Q_%d^%d v0' % (a, k), apply_Q(a, k, vacuum), apply_word(word, vacuum))
    if n >= 2:
        for x, y in product(range(3), repeat=2):
            word = [(1, PLUS, -i) for i in range(y, 0, -1)] + [(0, PLUS, -i) for i in range(x, 0, -1)]
            yield ('Q_1^%d Q_0^%d v0' % (y, x), q_vacuum((x, y)), apply_word(word, vacuum))


def _gl2_cases(states):
    for state in states:
        v = FockVector.basis(state)
        for k in range(-1, 3):
            for b in range(2):
                left = apply_T(1, k, apply_Q(b, -1, v))
                right = apply_Q(1, k - b, apply_Q(0, -k - 1 + b, v))
                yield ('T^%d Q_%d^-1 at %s' % (k, b, state), left,
                       right.scale(_sign(k * (k - 1) // 2 + b * k)))
        for x, y in product(range(-1, 2), repeat=2):
            for k in range(-2, 2):
                left = apply_Q(0, y, apply_Q(1, -x, apply_X(1, 0, k, apply_Q(1, x, apply_Q(0, -y, v)))))
                yield ('E_10 shift (%d,%d) mode %d at %s' % (x, y, k, state), left,
                       apply_X(1, 0, k + x + y, v).scale(_sign(x + y)))
        for a in range(2):
            for k in range(-1, 3):
                for j in range(-2, 2):
                    left = apply_psi(a, MINUS, j, apply_T(1, -k, v))
                    right = apply_T(1, -k, apply_psi(a, MINUS, j + k * (2 * a - 1), v))
                    yield ('psi-_%d(%d) T^%d at %s' % (a, j, -k, state), left, right.scale(_sign(k)))


def operator_identity_checks(n, max_excitations=2, modes=range(-2, 2)):
    """``(name, Residual)`` pairs for the fermion and translation identities on ``n`` components."""
    if n not in (1, 2, 3):
        raise ConfigError('operator identities are checked for n = 1, 2, 3, got %r' % (n,))
    states = basis_states(n, max_excitations)
    logger.debug('operator identities on %d basis states, n=%d' % (len(states), n))
    checks = [
        ('anticommutators', _tally(_anticommutator_cases(n, states, modes))),
        ('adjointness', _tally(_adjoint_cases(n, states, modes))),
        ('unitarity', _tally(_unitarity_cases(n, states))),
        ('grading', _tally(_grading_cases(n, states, modes))),
        ('vacuum-products', _tally(_vacuum_cases(n))),
    ]
    if n >= 2:
        checks.append(('q-anticommute', _tally(_q_anticommute_cases(n, states))))
        checks.append(('translations', _tally(_translation_cases(n, states))))
    if n == 2:
        checks.append(('gl2-translations', _tally(_gl2_cases(states))))
    return checks


# ==== correlation suites ====

FACTORIZATION_EXAMPLES = (
    ((), ()),
    (((MINUS, -1),), ((PLUS, -1),)),
    (((MINUS, -2), (MINUS, -1)), ((PLUS, -1), (PLUS, -2))),
    (((PLUS, -1),), ((MINUS, -1),), ((PLUS, -2), (PLUS, -1))),
    (((PLUS, 0), (MINUS, -1)), ((PLUS, -1),), ((PLUS, 1), (MINUS, -1), (MINUS, -2))),
)


def correlation_checks(max_size=2, order=4):
    """``(key, Residual)`` pairs for the one-component correlation functions."""
    _check_correlation_size(max_size)
    checks = []
    for count in range(1, max_size + 2):
        if count > CORRELATION_CAP:
            break
        for sign in (PLUS, MINUS):
            value = correlation_pp(count, sign)
            expected = vandermonde_product(count)
            checks.append((('vandermonde', count, sign),
                           Residual.of_check(value == expected, '%s != %s' % (value, expected))))
    for m, n in product(range(max_size + 1), repeat=2):
        lhs, rhs = correlation_mn(m, n, order)
        checks.append((('cauchy', m, n), Residual.of_value(lhs - rhs, order)))
        lhs, rhs = correlation_extra(m, n, order)
        checks.append((('cauchy-extra', m, n), Residual.of_value(lhs - rhs, order)))
    for index, monomials in enumerate(FACTORIZATION_EXAMPLES):
        whole, pieces = factorization_values(monomials)
        checks.append((('factorization', index), Residual.of_check(
            whole == pieces, 'full %s, factors %s' % (whole, pieces))))
    return checks


def correlation_report(max_size=2, order=4):
    report = VerificationReport('correlations')
    parameters = {'max': max_size, 'order': order}
    report.extend(CaseRecord.from_residual(key, parameters, residual)
                  for key, residual in correlation_checks(max_size, order))
    return report
