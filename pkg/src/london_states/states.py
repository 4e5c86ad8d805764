"""
London and modified London states.

The London state of amplitude ``x`` and phase ``theta``::

    |z>_L  = e^{z*V+ - zV}|0> = sum_n e^{-i theta n} (n+1) J_{n+1}(2x) / x |n>

and the modified (resolution of identity) state::

    |z>_Lm = sum_n e^{-i theta n} sqrt(n+1) J_{n+1}(2x) / NN(x) |n>

with ``NN(x)^2 = sum_m m J_m^2(2x)`` so that it is a unit vector.

Each family can be built from the Bessel closed form, from the propagator of
its tridiagonal generator acting on the vacuum, and for the modified family
from the London state through ``1/sqrt(n+1)``.
"""
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple

import numpy as np

from london_states.bessel import bessel_table, weighted_series
from london_states.exceptions import InvalidArgument, InvalidDimension, TruncationError
from london_states.fock import (
    MIN_DIM,
    FockVector,
    TridiagonalGenerator,
    apply_number_fn,
    propagate,
    truncation_dim,
)

logger = logging.getLogger(__name__)

TAIL_LIMIT = 1e-12
TAIL_WARNING = 1e-13


class Family(Enum):
    LONDON = 'london'
    MODIFIED = 'modified'


@dataclass(frozen=True)
class StateSpec:
    """
    ``family``, amplitude ``x >= 0``, phase ``theta`` (radians) and the
    truncation ``dim`` (0 picks :func:`london_states.fock.truncation_dim`).
    """
    family: Family
    amplitude: float
    phase: float = 0.0
    dim: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'family', Family(self.family))
        amplitude = float(self.amplitude)
        if not math.isfinite(amplitude):
            raise InvalidArgument('amplitude must be finite, got %r' % (self.amplitude,), parameter='x')
        if amplitude < 0:
            raise InvalidArgument(
                'amplitude must be >= 0, got %r (use phase=pi for a negative amplitude)' % (self.amplitude,),
                parameter='x')
        phase = float(self.phase)
        if not math.isfinite(phase):
            raise InvalidArgument('phase must be finite, got %r' % (self.phase,), parameter='theta')
        if int(self.dim) != self.dim or self.dim < 0:
            raise InvalidDimension('dim must be a non negative integer, got %r' % (self.dim,), parameter='dim')
        if 0 < self.dim < MIN_DIM:
            raise InvalidDimension('dim must be 0 (auto) or >= %d, got %r' % (MIN_DIM, self.dim), parameter='dim')
        object.__setattr__(self, 'amplitude', amplitude)
        object.__setattr__(self, 'phase', phase)
        object.__setattr__(self, 'dim', int(self.dim))

    @property
    def resolved_dim(self):
        return self.dim or truncation_dim(self.amplitude)

    def replace(self, **changes):
        return replace(self, **changes)


class NormalizationConstants(NamedTuple):
    """
    ``series``: ``(1/x^2) sum_{n>=1} n J_n^2(2x)`` summed directly,
    ``closed_form``: ``2[J_0^2 + J_1^2] - J_0 J_1 / x`` at ``2x``,
    ``unit_norm``: ``sqrt(x^2 series)``, the factor making the modified state
    a unit vector.
    """
    series: float
    closed_form: float
    unit_norm: float

    @property
    def gap(self):
        return abs(self.series - self.closed_form)


def closed_form_normalization(x):
    table = bessel_table(2.0 * x, 1)
    j0, j1 = table[0], table[1]
    return 2.0 * (j0 * j0 + j1 * j1) - j0 * j1 / x


def normalization_constants(x):
    """
    :param x: amplitude, > 0
    :raises: InvalidArgument
    :rtype: NormalizationConstants
    """
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise InvalidArgument('amplitude must be finite and > 0, got %r' % (x,), parameter='x')
    series = weighted_series(2.0 * x) / (x * x)
    return NormalizationConstants(
        series=series,
        closed_form=closed_form_normalization(x),
        unit_norm=math.sqrt(x * x * series),
    )


def rotate_phase(v, theta):
    """
    ``e^{-i theta n}|psi>``: ``out[n] = e^{-i theta n} v[n]``.

    :rtype: FockVector
    """
    if theta == 0:
        return v
    phases = np.exp(-1j * theta * np.arange(v.dim))
    return replace(v, amplitudes=phases * v.amplitudes)


def _check_family(spec, family):
    if spec.family is not family:
        raise InvalidArgument('expected a %s spec, got %s' % (family.value, spec.family.value),
                              parameter='family')


def _finish(coefficients, tail, spec, route):
    if tail > TAIL_LIMIT:
        raise TruncationError(
            '%s: tail probability %.3e beyond dim=%d exceeds %.0e; raise dim'
            % (route, tail, spec.resolved_dim, TAIL_LIMIT), parameter='dim')
    if tail > TAIL_WARNING:
        logger.warning('%s: tail probability %.3e at x=%r is close to the %.0e limit',
                       route, tail, spec.amplitude, TAIL_LIMIT)
    v, correction = FockVector(coefficients, tail).normalized()
    logger.debug('%s x=%r dim=%d tail=%.3e correction=%.3e',
                 route, spec.amplitude, spec.resolved_dim, tail, correction)
    return rotate_phase(v, spec.phase)


def _vacuum(spec):
    return FockVector.vacuum(spec.resolved_dim)


def build_london(spec):
    """
    London state from its Bessel coefficients ``(n+1) J_{n+1}(2x) / x``.

    The coefficients are unit normalised up to the tail beyond ``dim``,
    which is recorded as ``truncation_loss``.

    :raises: InvalidArgument, TruncationError
    :rtype: FockVector
    """
    _check_family(spec, Family.LONDON)
    if spec.amplitude == 0:
        return _vacuum(spec)
    x, dim = spec.amplitude, spec.resolved_dim
    table = bessel_table(2.0 * x, dim)
    coefficients = np.arange(1, dim + 1) * table.values[1:] / x
    tail = max(0.0, 1.0 - math.fsum(coefficients ** 2))
    return _finish(coefficients, tail, spec, 'build_london')


def build_modified(spec):
    """
    Modified London state from ``sqrt(n+1) J_{n+1}(2x)``, scaled to unit norm.

    :raises: InvalidArgument, TruncationError
    :rtype: FockVector
    """
    _check_family(spec, Family.MODIFIED)
    if spec.amplitude == 0:
        return _vacuum(spec)
    x, dim = spec.amplitude, spec.resolved_dim
    table = bessel_table(2.0 * x, dim)
    # sum_m m J_m^2(2x) / x^2 is the closed form; the 1/x keeps small x representable
    coefficients = np.sqrt(np.arange(1, dim + 1)) * table.values[1:] / (x * math.sqrt(closed_form_normalization(x)))
    tail = max(0.0, 1.0 - math.fsum(coefficients ** 2))
    return _finish(coefficients, tail, spec, 'build_modified')


def build(spec):
    """
    Closed form state for either family.

    :rtype: FockVector
    """
    if spec.family is Family.LONDON:
        return build_london(spec)
    return build_modified(spec)


def _generator(spec, theta=0.0):
    if spec.family is Family.LONDON:
        return TridiagonalGenerator.london(spec.resolved_dim, theta)
    return TridiagonalGenerator.modified(spec.resolved_dim, theta)


def _propagated(spec, theta, tol):
    # e^{x(V - V+)}|0> carries (-1)^n against the Bessel coefficients, so run it backwards
    v = propagate(_generator(spec, theta), -spec.amplitude, _vacuum(spec), tol)
    if spec.family is Family.MODIFIED:
        v, correction = v.normalized()
    return v


def build_via_propagator(spec, tol=None):
    """
    Propagate the family's real generator from the vacuum with exponent
    ``-x``, normalise the modified family, then rotate by ``spec.phase``.

    :raises: ConvergenceError
    :rtype: FockVector
    """
    if spec.amplitude == 0:
        return _vacuum(spec)
    return rotate_phase(_propagated(spec, 0.0, tol), spec.phase)


def build_via_complex_generator(spec, tol=None):
    """
    Propagate ``z*V+ - zV`` (or its modified analogue) with ``z = x e^{i theta}``
    from the vacuum.

    :raises: ConvergenceError
    :rtype: FockVector
    """
    if spec.amplitude == 0:
        return _vacuum(spec)
    return _propagated(spec, spec.phase, tol)


def build_via_relation(spec):
    """
    Modified state as ``1/sqrt(n+1)`` applied to the London state of the same
    amplitude, renormalised.

    :rtype: FockVector
    """
    _check_family(spec, Family.MODIFIED)
    london = build_london(spec.replace(family=Family.LONDON, phase=0.0))
    v, correction = apply_number_fn(lambda n: 1.0 / np.sqrt(n + 1.0), london).normalized()
    return rotate_phase(v, spec.phase)
