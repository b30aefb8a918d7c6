# -*- coding: utf-8 -*-
"""Run configuration shared by the command line and the keyword library."""

import os
from dataclasses import asdict, dataclass, field
from typing import Optional

from TauLibrary.core import fock_oracle, identities, tau_gl2, tau_gl3
from TauLibrary.errors import CapExceededError, ConfigError
from TauLibrary.utils import parse_range, parse_window

WINDOW_CAP = 21
FORMATS = ('json', 'csv')
GL3_SUITES = ('gl3-four', 'gl3-components', 'zero-curvature-3', 'birkhoff-3')


def default_workers():
    value = os.environ.get('TAU_WORKERS', '1')
    try:
        workers = int(value)
    except ValueError:
        raise ConfigError('TAU_WORKERS must be an integer, got %r' % value) from None
    return workers


@dataclass
class RunConfig:
    """Every knob of a tau table or verification run.

    Ranges are inclusive ``(lo, hi)`` pairs; ``lo > hi`` is empty.
    """
    suite: Optional[str] = None
    n: int = 2
    window: tuple = (-4, 4)
    k_max: int = 2
    l_max: int = 1
    alpha: tuple = (-1, 1)
    beta: tuple = (0, 0)
    truncation: int = 5
    order: Optional[int] = None
    seed: int = 7
    samples: int = 2
    max_size: Optional[int] = None
    workers: int = field(default_factory=default_workers)
    output: Optional[str] = None
    format: str = 'json'
    timings: bool = False

    @classmethod
    def from_options(cls, **options):
        """Build from text-or-value options such as ``window='-3..3'``."""
        values = {}
        for name, value in options.items():
            if value is None:
                continue
            if name == 'window':
                value = parse_window(value)
            elif name in ('alpha', 'beta'):
                value = parse_range(value)
            elif name in ('n', 'k_max', 'l_max', 'truncation', 'order', 'seed', 'samples',
                          'max_size', 'workers'):
                value = _as_int(name, value)
            elif name == 'timings':
                value = _as_bool(value)
            values[name] = value
        try:
            return cls(**values)
        except TypeError as err:
            raise ConfigError(str(err)) from None

    @property
    def alphas(self):
        return range(self.alpha[0], self.alpha[1] + 1)

    @property
    def betas(self):
        return range(self.beta[0], self.beta[1] + 1)

    @property
    def rank(self):
        """Rank of the tau lattice the run works on; GL3 suites force 3."""
        return 3 if self.suite in GL3_SUITES else self.n

    def size_limit(self, default):
        return default if self.max_size is None else self.max_size

    @property
    def window_width(self):
        return max(0, self.window[1] - self.window[0] + 1)

    def validate(self):
        if self.n not in (2, 3):
            raise ConfigError('n must be 2 or 3, got %r' % (self.n,))
        if self.format not in FORMATS:
            raise ConfigError('format must be one of %s, got %r' % (', '.join(FORMATS), self.format))
        for name, least in (('k_max', 0), ('l_max', 0), ('truncation', 1), ('samples', 1), ('workers', 1)):
            if getattr(self, name) < least:
                raise ConfigError('%s out of range: %r' % (name, getattr(self, name)))
        if self.max_size is not None and self.max_size < 1:
            raise ConfigError('max out of range: %r' % (self.max_size,))
        if self.order is not None and self.order < 1:
            raise ConfigError('expansion order must be positive, got %r' % (self.order,))
        if self.window_width > WINDOW_CAP:
            raise CapExceededError('window width', self.window_width, WINDOW_CAP)
        k_cap = tau_gl2.K_CAP if self.rank == 2 else tau_gl3.K_CAP
        if self.k_max > k_cap:
            raise CapExceededError('k', self.k_max, k_cap)
        if self.rank == 3 and self.l_max > tau_gl3.K_CAP:
            raise CapExceededError('l', self.l_max, tau_gl3.K_CAP)
        if self.suite == 'fock-cross' and self.k_max + self.l_max > fock_oracle.FOCK_CAP:
            raise CapExceededError('fock k + l', self.k_max + self.l_max, fock_oracle.FOCK_CAP)
        size = self.size_limit(0)
        if self.suite == 'correlations' and size > fock_oracle.CORRELATION_CAP:
            raise CapExceededError('correlation size', size, fock_oracle.CORRELATION_CAP)
        if size > identities.DET_CAP:
            raise CapExceededError('determinant size', size, identities.DET_CAP)
        return self

    def to_dict(self):
        out = asdict(self)
        out['window'] = '%d..%d' % self.window
        out['alpha'] = '%d..%d' % self.alpha
        out['beta'] = '%d..%d' % self.beta
        return out


def _as_int(name, value):
    if isinstance(value, bool):
        raise ConfigError('%s must be an integer, got %r' % (name, value))
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError('%s must be an integer, got %r' % (name, value)) from None


def _as_bool(value):
    if isinstance(value, str):
        return value.strip().lower() not in ('', 'false', 'no', 'off', '0', 'none')
    return bool(value)
