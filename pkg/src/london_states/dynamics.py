"""
Resonant Jaynes-Cummings atomic inversion for an atom starting in the
excited state and a field with photon distribution ``P``::

    W(t) = sum_m P_m cos(lambda t sqrt(m+1))

Times are in units of ``1/lambda``.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import find_peaks

from london_states.backends import evaluator
from london_states.conf import settings
from london_states.exceptions import InvalidArgument, InvalidDistribution, InvalidWindow

logger = logging.getLogger(__name__)

DISTRIBUTION_TOLERANCE = 1e-9
DEFAULT_T_MAX = 100.0
DEFAULT_STEPS = 4001
COLLAPSE_THRESHOLD = 0.1
REVIVAL_THRESHOLD = 0.2
_CHUNK = 256


@dataclass(frozen=True)
class InversionTrace:
    times: np.ndarray
    values: np.ndarray
    coupling: float = 1.0

    @property
    def dt(self):
        return float(self.times[1] - self.times[0])


@dataclass(frozen=True)
class RevivalReport:
    collapse_time: Optional[float]
    revival_times: Tuple[float, ...] = field(default_factory=tuple)

    @property
    def first_revival(self):
        return self.revival_times[0] if self.revival_times else None


def _check_distribution(p):
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or len(p) == 0 or np.any(p < 0) or not np.all(np.isfinite(p)):
        raise InvalidDistribution('distribution must be a non empty array of finite P_m >= 0', parameter='P')
    total = math.fsum(p)
    if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
        raise InvalidDistribution('probabilities sum to %.12g, expected 1' % total, parameter='P')
    return p


def _check_coupling(coupling):
    if not (math.isfinite(coupling) and coupling > 0):
        raise InvalidArgument('coupling lambda must be finite and > 0, got %r' % (coupling,), parameter='lambda')


def _inversion(p, rabi, times):
    return np.cos(np.outer(times, rabi)) @ p


def atomic_inversion(p, coupling, t):
    """
    :param p: normalised photon distribution
    :param coupling: ``lambda > 0``
    :param t: time ``>= 0``
    :raises: InvalidDistribution, InvalidArgument
    :rtype: float
    """
    p = _check_distribution(p)
    _check_coupling(coupling)
    if not (math.isfinite(t) and t >= 0):
        raise InvalidArgument('time must be finite and >= 0, got %r' % (t,), parameter='t')
    phases = (coupling * t) * np.sqrt(np.arange(1, len(p) + 1, dtype=float))
    return math.fsum(p * np.cos(phases))


def inversion_trace(p, coupling=None, t_max=DEFAULT_T_MAX, steps=DEFAULT_STEPS):
    """
    ``W`` sampled uniformly on ``[0, t_max]``, filled in time chunks through
    the configured backend.

    :rtype: InversionTrace
    """
    coupling = settings.COUPLING if coupling is None else coupling
    p = _check_distribution(p)
    _check_coupling(coupling)
    if not (math.isfinite(t_max) and t_max > 0):
        raise InvalidArgument('t_max must be finite and > 0, got %r' % (t_max,), parameter='t_max')
    if int(steps) != steps or steps < 2:
        raise InvalidArgument('steps must be an integer >= 2, got %r' % (steps,), parameter='steps')

    times = np.linspace(0.0, t_max, int(steps))
    rabi = coupling * np.sqrt(np.arange(1, len(p) + 1, dtype=float))
    chunks = [times[i:i + _CHUNK] for i in range(0, len(times), _CHUNK)]
    values = np.concatenate(evaluator().map(lambda chunk: _inversion(p, rabi, chunk), chunks))
    values = np.clip(values, -1.0, 1.0)
    times.setflags(write=False)
    values.setflags(write=False)
    return InversionTrace(times=times, values=values, coupling=coupling)


def default_window(trace):
    """
    Smallest odd window spanning ``pi / lambda``, half the vacuum Rabi period.
    """
    samples = math.ceil(math.pi / (trace.coupling * trace.dt))
    return samples + 1 if samples % 2 == 0 else samples


def envelope(trace, window=None):
    """
    Centred sliding maximum of ``|W|``; windows are cut short at the ends.

    :param window: odd sample count >= 3, defaults to :func:`default_window`
    :raises: InvalidWindow
    :rtype: numpy.ndarray
    """
    window = default_window(trace) if window is None else window
    if int(window) != window or window < 3 or window % 2 == 0:
        raise InvalidWindow('window must be an odd integer >= 3, got %r' % (window,), parameter='window')
    if window > len(trace.values):
        raise InvalidWindow('window %d is longer than the trace (%d samples)' % (window, len(trace.values)),
                            parameter='window')
    half = int(window) // 2
    padded = np.pad(np.abs(trace.values), half, mode='constant', constant_values=0.0)
    return sliding_window_view(padded, int(window)).max(axis=1)


def detect_revivals(trace, window=None,
                    collapse_threshold=COLLAPSE_THRESHOLD, revival_threshold=REVIVAL_THRESHOLD):
    """
    Collapse: first time the envelope drops below ``collapse_threshold``.
    Revivals: envelope peaks above ``revival_threshold`` after the collapse.

    :rtype: RevivalReport
    """
    env = envelope(trace, window)
    below = np.flatnonzero(env < collapse_threshold)
    if not len(below):
        return RevivalReport(collapse_time=None)
    collapse = int(below[0])
    peaks, _ = find_peaks(env, height=revival_threshold)
    revivals = tuple(float(trace.times[k]) for k in peaks if k > collapse)
    logger.debug('detect_revivals collapse=%.6g revivals=%s', trace.times[collapse], revivals)
    return RevivalReport(collapse_time=float(trace.times[collapse]), revival_times=revivals)
