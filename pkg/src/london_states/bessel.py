"""
Integer order Bessel functions of the first kind.

All the state coefficients are built from :math:`J_n(2x)` for every order
``0..N`` at one argument, so the kernel produces a whole table at a time with
Miller's downward recurrence, normalised through the Neumann sum

.. math::
    J_0(y) + 2\\sum_{k\\geq 1} J_{2k}(y) = 1
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from london_states.exceptions import InvalidArgument

logger = logging.getLogger(__name__)

# Rescale the recurrence before it can overflow.
_RESCALE_LIMIT = 1e250
_RESCALE_FACTOR = 1e-250
_SEED = 1e-30
# Below this the leading power series term is exact in double precision.
_TINY_ARGUMENT = 1e-30

SERIES_TERM_FLOOR = 1e-16
SERIES_QUIET_TERMS = 5


@dataclass(frozen=True)
class BesselTable:
    """
    :math:`J_0(y) \\dots J_N(y)` at a fixed real argument.

    ``values`` is read only.
    """
    argument: float
    order_max: int
    values: np.ndarray

    def __getitem__(self, order):
        return self.values[order]

    def __len__(self):
        return len(self.values)

    def neumann_residual(self):
        """
        :rtype: float
        :return: :math:`|J_0 + 2\\sum_k J_{2k} - 1|` over the tabulated orders
        """
        return abs(self.values[0] + 2.0 * math.fsum(self.values[2::2]) - 1.0)

    def recurrence_residuals(self):
        """
        Scaled residuals of :math:`J_{n-1} + J_{n+1} = (2n/y) J_n` for the
        interior orders.

        :rtype: numpy.ndarray
        """
        if self.argument == 0.0 or self.order_max < 2:
            return np.zeros(0)
        n = np.arange(1, self.order_max)
        v = self.values
        residual = np.abs(v[:-2] + v[2:] - (2.0 * n / self.argument) * v[1:-1])
        return residual / np.maximum(1.0, np.abs(v[1:-1]))


def start_order(y, order_max):
    """
    Order at which the downward recurrence is seeded.

    :param y: argument
    :param order_max: highest order wanted
    :rtype: int
    """
    return order_max + max(20, math.ceil(1.2 * y) + 15 * math.ceil(y ** (1.0 / 3.0)))


def _check_argument(y, name='y'):
    try:
        y = float(y)
    except (TypeError, ValueError):
        raise InvalidArgument('argument must be a real number, got %r' % (y,), parameter=name)
    if not math.isfinite(y):
        raise InvalidArgument('argument must be finite, got %r' % (y,), parameter=name)
    if y < 0:
        raise InvalidArgument('argument must be >= 0, got %r' % (y,), parameter=name)
    return y


def bessel_table(y, order_max):
    """
    Tabulate :math:`J_n(y)` for ``n = 0..order_max``.

    :param y: real argument, finite and >= 0
    :param order_max: highest order, >= 0
    :raises: InvalidArgument
    :rtype: BesselTable
    """
    y = _check_argument(y)
    if int(order_max) != order_max or order_max < 0:
        raise InvalidArgument('order_max must be a non negative integer, got %r' % (order_max,),
                              parameter='order_max')
    order_max = int(order_max)

    if y == 0.0:
        values = np.zeros(order_max + 1)
        values[0] = 1.0
        values.setflags(write=False)
        return BesselTable(argument=y, order_max=order_max, values=values)

    if y < _TINY_ARGUMENT:
        return _leading_terms(y, order_max)

    start = start_order(y, order_max)
    f = np.zeros(start + 2)
    f[start] = _SEED
    for n in range(start, 0, -1):
        f[n - 1] = (2.0 * n / y) * f[n] - f[n + 1]
        if abs(f[n - 1]) > _RESCALE_LIMIT:
            f[n - 1:] *= _RESCALE_FACTOR

    norm = f[0] + 2.0 * math.fsum(f[2::2])
    values = f[:order_max + 1] / norm
    values.setflags(write=False)
    logger.debug('bessel_table y=%r order_max=%d start=%d', y, order_max, start)
    return BesselTable(argument=y, order_max=order_max, values=values)


def _leading_terms(y, order_max):
    # J_n(y) = (y/2)^n / n! (1 + O(y^2))
    values = np.zeros(order_max + 1)
    term = 1.0
    for n in range(order_max + 1):
        values[n] = term
        term = term * (0.5 * y) / (n + 1)
    values.setflags(write=False)
    return BesselTable(argument=y, order_max=order_max, values=values)


def weighted_sum_identity_gap(y):
    """
    Distance between the two sides of

    .. math::
        \\sum_{n\\geq 1} n J_n^2(y) =
        \\frac{y^2}{2}[J_0^2(y) + J_1^2(y)] - \\frac{y}{2} J_0(y) J_1(y)

    The series is summed until :data:`SERIES_QUIET_TERMS` consecutive terms
    fall below :data:`SERIES_TERM_FLOOR`.

    :param y: argument, > 0
    :raises: InvalidArgument
    :rtype: float
    """
    y = _check_argument(y)
    if y == 0.0:
        raise InvalidArgument('argument must be > 0', parameter='y')
    return abs(weighted_series(y) - weighted_closed_form(y))


def weighted_closed_form(y):
    """
    Right hand side of the weighted sum identity,
    :math:`\\frac{y^2}{2}[J_0^2(y) + J_1^2(y)] - \\frac{y}{2} J_0(y) J_1(y)`.

    :rtype: float
    """
    table = bessel_table(y, 1)
    j0, j1 = table[0], table[1]
    return 0.5 * y * y * (j0 * j0 + j1 * j1) - 0.5 * y * j0 * j1


def weighted_series(y):
    """
    :math:`\\sum_{n\\geq 1} n J_n^2(y)` by direct summation.

    :rtype: float
    """
    order_max = math.ceil(y) + 64
    while True:
        table = bessel_table(y, order_max)
        terms = np.arange(order_max + 1) * table.values ** 2
        quiet = 0
        for n in range(1, order_max + 1):
            quiet = quiet + 1 if terms[n] < SERIES_TERM_FLOOR else 0
            if quiet == SERIES_QUIET_TERMS:
                return math.fsum(terms[1:n + 1])
        order_max *= 2
