"""
Photon number statistics of a Fock vector.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from london_states.exceptions import (
    BracketError,
    InvalidArgument,
    InvalidDistribution,
    InvalidState,
    UndefinedStatistic,
)
from london_states.states import Family, StateSpec, build

logger = logging.getLogger(__name__)

STATE_NORM_TOLERANCE = 1e-9
DISTRIBUTION_TOLERANCE = 1e-9
CROSSOVER_XTOL = 1e-6


@dataclass(frozen=True)
class StatisticsReport:
    distribution: np.ndarray
    mean: float
    second_moment: float
    mandel_q: Optional[float]
    tail_mass_dropped: float

    @property
    def variance(self):
        return self.second_moment - self.mean ** 2

    @property
    def mandel_q_plus_one(self):
        return None if self.mandel_q is None else self.mandel_q + 1.0


def photon_distribution(v):
    """
    ``P_n = |<n|psi>|^2``.

    :param v: unit normalised :class:`london_states.fock.FockVector`
    :raises: InvalidState
    :rtype: numpy.ndarray
    """
    amplitudes = v.amplitudes
    distribution = np.square(amplitudes.real) + np.square(amplitudes.imag)
    total = math.fsum(distribution)
    if abs(total - 1.0) > STATE_NORM_TOLERANCE:
        raise InvalidState('state norm^2 is %.12g, expected 1' % total, parameter='v')
    return distribution


def _check_distribution(p):
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or len(p) == 0:
        raise InvalidDistribution('distribution must be a non empty 1-d array', parameter='P')
    if np.any(p < 0) or not np.all(np.isfinite(p)):
        raise InvalidDistribution('probabilities must be finite and >= 0', parameter='P')
    total = math.fsum(p)
    if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
        raise InvalidDistribution('probabilities sum to %.12g, expected 1' % total, parameter='P')
    return p


def moments(p):
    """
    :param p: normalised photon distribution
    :raises: InvalidDistribution
    :rtype: tuple(float, float)
    :return: ``(<n>, <n^2>)``
    """
    p = _check_distribution(p)
    n = np.arange(len(p), dtype=float)
    return math.fsum(n * p), math.fsum(n * n * p)


def mandel_q(p):
    """
    ``Q = (<n^2> - <n>^2) / <n> - 1``; negative for sub-Poissonian light.

    :raises: InvalidDistribution, UndefinedStatistic for the vacuum
    :rtype: float
    """
    mean, second = moments(p)
    if mean == 0:
        raise UndefinedStatistic('Mandel Q is 0/0 for zero mean photon number', parameter='P')
    return (second - mean * mean) / mean - 1.0


def statistics_report(v):
    """
    :rtype: StatisticsReport
    """
    p = photon_distribution(v)
    mean, second = moments(p)
    q = None if mean == 0 else (second - mean * mean) / mean - 1.0
    return StatisticsReport(
        distribution=p,
        mean=mean,
        second_moment=second,
        mandel_q=q,
        tail_mass_dropped=v.truncation_loss,
    )


def mandel_q_at(family, x):
    return mandel_q(photon_distribution(build(StateSpec(family, x))))


def mandel_q_curve(family, xs):
    """
    Mean photon number and Mandel Q over a sweep of amplitudes.

    :rtype: list[tuple(float, StatisticsReport)]
    """
    return [(x, statistics_report(build(StateSpec(family, x)))) for x in xs]


def subpoissonian_crossover(family, lo, hi, xtol=CROSSOVER_XTOL):
    """
    Amplitude where the Mandel Q of ``family`` changes sign, by bisection.

    Assumes a single sign change inside ``[lo, hi]``.

    :raises: BracketError carrying both endpoint values
    :rtype: float
    """
    family = Family(family)
    if not (math.isfinite(lo) and math.isfinite(hi) and 0 < lo < hi):
        raise InvalidArgument('bracket must satisfy 0 < lo < hi, got [%r, %r]' % (lo, hi), parameter='bracket')
    q_lo, q_hi = mandel_q_at(family, lo), mandel_q_at(family, hi)
    if q_lo == 0:
        return lo
    if q_hi == 0:
        return hi
    if (q_lo < 0) == (q_hi < 0):
        raise BracketError('Mandel Q has the same sign at both ends: Q(%r)=%.6g, Q(%r)=%.6g'
                           % (lo, q_lo, hi, q_hi), lo_value=q_lo, hi_value=q_hi, parameter='bracket')
    steps = 0
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        q_mid = mandel_q_at(family, mid)
        steps += 1
        if q_mid == 0:
            return mid
        if (q_mid < 0) == (q_lo < 0):
            lo, q_lo = mid, q_mid
        else:
            hi = mid
    logger.debug('subpoissonian_crossover %s converged in %d bisections', family.value, steps)
    return 0.5 * (lo + hi)
