"""
Husimi Q function ``Q(alpha) = |<alpha|psi>|^2 / pi`` over a grid of
coherent amplitudes ``alpha = X + iY``.
"""
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from london_states.backends import evaluator
from london_states.exceptions import InvalidGrid
from london_states.statistics import moments, photon_distribution

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 201


class Overlap(NamedTuple):
    amplitude: complex
    underflow: bool


def _overlap_series(alphas, amplitudes):
    """
    ``<alpha|psi>`` for an array of ``alpha``.

    The terms ``e^{-|a|^2/2} (a*)^n / sqrt(n!)`` are accumulated by
    ``t_{n+1} = t_n a* / sqrt(n+1)`` starting from the Gaussian factor, so
    every term stays below one.

    :return: overlaps and the mask of points whose Gaussian factor underflowed
    """
    alphas = np.asarray(alphas, dtype=complex)
    conj = np.conj(alphas)
    term = np.exp(-0.5 * (alphas.real ** 2 + alphas.imag ** 2)).astype(complex)
    underflow = term == 0
    acc = term * amplitudes[0]
    for n in range(1, len(amplitudes)):
        term = term * conj / math.sqrt(n)
        acc = acc + term * amplitudes[n]
    return acc, underflow


def coherent_overlap(alpha, v):
    """
    ``<alpha|psi>`` summed over the state's own truncation.

    :rtype: Overlap
    """
    values, underflow = _overlap_series(np.array([alpha]), v.amplitudes)
    if underflow[0]:
        logger.warning('coherent_overlap: e^{-|alpha|^2/2} underflows at alpha=%r', alpha)
        return Overlap(0j, True)
    return Overlap(complex(values[0]), False)


def husimi_point(alpha, v):
    """
    :rtype: float
    """
    overlap = coherent_overlap(alpha, v).amplitude
    return (overlap.real ** 2 + overlap.imag ** 2) / math.pi


@dataclass(frozen=True)
class GridSpec:
    x_range: Tuple[float, float]
    y_range: Tuple[float, float]
    nx: int = DEFAULT_SAMPLES
    ny: int = DEFAULT_SAMPLES

    def __post_init__(self):
        for name in ('x_range', 'y_range'):
            lo, hi = (float(a) for a in getattr(self, name))
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise InvalidGrid('%s must be a finite interval lo < hi, got %r' % (name, getattr(self, name)),
                                  parameter=name)
            object.__setattr__(self, name, (lo, hi))
        for name in ('nx', 'ny'):
            if int(getattr(self, name)) != getattr(self, name) or getattr(self, name) < 2:
                raise InvalidGrid('%s must be an integer >= 2, got %r' % (name, getattr(self, name)),
                                  parameter=name)

    @classmethod
    def square(cls, half_width, samples=DEFAULT_SAMPLES):
        return cls((-half_width, half_width), (-half_width, half_width), samples, samples)

    @classmethod
    def default_for(cls, v, samples=DEFAULT_SAMPLES):
        """
        Square grid centred on the origin with half width
        ``3 + 2 sqrt(<n> + 1)``.
        """
        mean, _ = moments(photon_distribution(v))
        return cls.square(3.0 + 2.0 * math.sqrt(mean + 1.0), samples)

    @property
    def xs(self):
        return np.linspace(self.x_range[0], self.x_range[1], int(self.nx))

    @property
    def ys(self):
        return np.linspace(self.y_range[0], self.y_range[1], int(self.ny))

    @property
    def cell_area(self):
        return ((self.x_range[1] - self.x_range[0]) / (self.nx - 1)
                * (self.y_range[1] - self.y_range[0]) / (self.ny - 1))


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """
    ``values[i, j] = Q(xs[i] + i ys[j])``.
    """
    spec: GridSpec
    values: np.ndarray
    underflow_cells: int = 0

    @property
    def xs(self):
        return self.spec.xs

    @property
    def ys(self):
        return self.spec.ys

    @property
    def argmax(self):
        i, j = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return int(i), int(j)

    @property
    def argmax_alpha(self):
        i, j = self.argmax
        return complex(self.xs[i], self.ys[j])

    @property
    def max_value(self):
        return float(self.values.max())

    def mass(self):
        """
        Riemann sum of ``Q dX dY``; tends to 1 as the grid covers the state.
        """
        return float(self.values.sum()) * self.spec.cell_area


def husimi_grid(v, spec=None):
    """
    Fill a :class:`PhaseSpaceGrid` row by row through the configured backend.

    :param v: unit normalised state
    :param spec: :class:`GridSpec`, defaults to :meth:`GridSpec.default_for`
    :raises: InvalidGrid, InvalidState
    :rtype: PhaseSpaceGrid
    """
    photon_distribution(v)
    spec = GridSpec.default_for(v) if spec is None else spec
    xs, ys = spec.xs, spec.ys
    amplitudes = v.amplitudes

    def row(x):
        overlaps, underflow = _overlap_series(x + 1j * ys, amplitudes)
        return (overlaps.real ** 2 + overlaps.imag ** 2) / math.pi, int(underflow.sum())

    rows = evaluator().map(row, xs)
    values = np.vstack([r[0] for r in rows])
    values.setflags(write=False)
    underflow_cells = sum(r[1] for r in rows)
    if underflow_cells:
        logger.warning('husimi_grid: %d cells underflowed to Q=0', underflow_cells)
    grid = PhaseSpaceGrid(spec=spec, values=values, underflow_cells=underflow_cells)
    logger.debug('husimi_grid %dx%d max=%.6g at %r', spec.nx, spec.ny, grid.max_value, grid.argmax_alpha)
    return grid
