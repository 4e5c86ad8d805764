"""
Truncated Fock space.

States are amplitude vectors over the number states ``|0> .. |dim-1>``.
The London operators act as one sided shifts::

    V  = sum_n |n><n+1|        (lower)
    V+ = sum_n |n+1><n|        (raise)

and the only generators ever exponentiated are tridiagonal, so
:func:`propagate` works purely with O(dim) matrix-vector products.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from london_states.conf import settings
from london_states.exceptions import (
    ConvergenceError,
    EvaluationError,
    InvalidArgument,
    InvalidDimension,
)

logger = logging.getLogger(__name__)

MIN_DIM = 32
NORM_TOLERANCE = 1e-12


def _frozen(array, dtype):
    array = np.array(array, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class FockVector:
    """
    Amplitudes ``<n|psi>`` for ``n = 0..dim-1``.

    ``truncation_loss`` is the probability known to have been dropped at the
    top level while the vector was built, ``renormalization`` the norm
    correction ``|1 - norm|`` applied by the last :meth:`normalized`.
    """
    amplitudes: np.ndarray
    truncation_loss: float = 0.0
    renormalization: float = 0.0

    def __post_init__(self):
        amplitudes = _frozen(self.amplitudes, complex)
        if amplitudes.ndim != 1 or len(amplitudes) < 1:
            raise InvalidDimension('a Fock vector needs at least one level', parameter='dim')
        if not np.all(np.isfinite(amplitudes)):
            raise InvalidArgument('amplitudes must be finite', parameter='amplitudes')
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def number_state(cls, k, dim):
        """
        :param k: photon number
        :param dim: dimension of the truncated space
        :rtype: FockVector
        """
        if not 0 <= k < dim:
            raise InvalidDimension('number state |%d> does not fit in dim=%d' % (k, dim), parameter='dim')
        amplitudes = np.zeros(dim, dtype=complex)
        amplitudes[k] = 1.0
        return cls(amplitudes)

    @classmethod
    def vacuum(cls, dim):
        return cls.number_state(0, dim)

    @property
    def dim(self):
        return len(self.amplitudes)

    def __getitem__(self, n):
        return self.amplitudes[n]

    def __len__(self):
        return self.dim

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tolerance=NORM_TOLERANCE):
        return abs(float(np.sum(np.abs(self.amplitudes) ** 2)) - 1.0) <= tolerance

    def normalized(self):
        """
        Rescale to unit norm.

        :rtype: tuple(FockVector, float)
        :return: the unit vector and the norm correction ``|1 - norm|`` applied
        """
        norm = self.norm()
        if norm == 0.0:
            raise InvalidArgument('cannot normalise the zero vector', parameter='amplitudes')
        correction = abs(1.0 - norm)
        return FockVector(self.amplitudes / norm, self.truncation_loss, correction), correction

    def top_probability(self):
        return float(abs(self.amplitudes[-1]) ** 2)


@dataclass(frozen=True)
class TridiagonalGenerator:
    """
    A generator with nonzero entries on the first off diagonals and diagonal.

    ``(G v)[n] = sub[n] v[n+1] + sup[n-1] v[n-1] + diag[n] v[n]``

    ``sub`` holds the lowering strengths (``|n><n+1|``), ``sup`` the raising
    strengths (``|n+1><n|``).
    """
    sub: np.ndarray
    sup: np.ndarray
    diag: np.ndarray

    def __post_init__(self):
        dtype = complex if any(np.iscomplexobj(a) for a in (self.sub, self.sup, self.diag)) else float
        for name in ('sub', 'sup', 'diag'):
            object.__setattr__(self, name, _frozen(getattr(self, name), dtype))
        dim = len(self.diag)
        if dim < 2 or len(self.sub) != dim - 1 or len(self.sup) != dim - 1:
            raise InvalidDimension(
                'inconsistent generator arrays: sub=%d sup=%d diag=%d'
                % (len(self.sub), len(self.sup), len(self.diag)), parameter='dim')

    @classmethod
    def london(cls, dim, theta=0.0):
        """
        ``e^{i theta} V - e^{-i theta} V+``; theta = 0 gives ``V - V+``.
        """
        n = np.ones(dim - 1)
        if theta:
            return cls(sub=np.exp(1j * theta) * n, sup=-np.exp(-1j * theta) * n, diag=np.zeros(dim))
        return cls(sub=n, sup=-n, diag=np.zeros(dim))

    @classmethod
    def modified(cls, dim, theta=0.0):
        """
        ``sqrt((n+2)/(n+1)) V - V+ sqrt((n+1)/(n+2))``, the London generator
        conjugated by ``sqrt(n+1)``.
        """
        n = np.arange(dim - 1, dtype=float)
        sub = np.sqrt((n + 2.0) / (n + 1.0))
        sup = -np.sqrt((n + 1.0) / (n + 2.0))
        if theta:
            sub = np.exp(1j * theta) * sub
            sup = np.exp(-1j * theta) * sup
        return cls(sub=sub, sup=sup, diag=np.zeros(dim))

    @property
    def dim(self):
        return len(self.diag)

    def scaled(self, factor):
        return TridiagonalGenerator(
            sub=factor * self.sub, sup=factor * self.sup, diag=factor * self.diag)

    def matvec(self, v):
        """
        :param v: amplitude array of length dim
        :rtype: numpy.ndarray
        """
        out = self.diag * v
        out[:-1] += self.sub * v[1:]
        out[1:] += self.sup * v[:-1]
        return out

    def norm_bound(self):
        """
        Upper bound on the 2-norm: ``sqrt(||G||_1 ||G||_inf)``.
        """
        sub, sup, diag = np.abs(self.sub), np.abs(self.sup), np.abs(self.diag)
        rows = diag.copy()
        rows[:-1] += sub
        rows[1:] += sup
        columns = diag.copy()
        columns[1:] += sub
        columns[:-1] += sup
        return math.sqrt(float(rows.max()) * float(columns.max()))

    def is_antisymmetric(self):
        """True when G is skew-Hermitian, so e^{xG} is unitary for real x"""
        return (np.array_equal(self.sub, -np.conj(self.sup))
                and not np.any(np.real(self.diag)))

    def is_hermitian(self):
        return (np.array_equal(self.sub, np.conj(self.sup))
                and not np.any(np.imag(self.diag)))


def nonhermitian_hamiltonian(dim):
    """
    ``H = i (sqrt((n+2)/(n+1)) V - V+ sqrt((n+1)/(n+2)))`` whose evolution
    ``e^{-iHt}`` is the modified generator's propagator.

    :rtype: TridiagonalGenerator
    """
    return TridiagonalGenerator.modified(dim).scaled(1j)


def _check_dim(v, minimum):
    if v.dim < minimum:
        raise InvalidDimension('operation needs dim >= %d, got %d' % (minimum, v.dim), parameter='dim')


def apply_lower(v):
    """
    ``V|psi>``: ``out[n] = v[n+1]``, ``out[dim-1] = 0``.

    :raises: InvalidDimension
    :rtype: FockVector
    """
    _check_dim(v, 2)
    out = np.zeros(v.dim, dtype=complex)
    out[:-1] = v.amplitudes[1:]
    return FockVector(out, v.truncation_loss)


def apply_raise(v):
    """
    ``V+|psi>``: ``out[n+1] = v[n]``, ``out[0] = 0``.

    The top amplitude has nowhere to go; its probability is added to the
    result's ``truncation_loss``.

    :rtype: FockVector
    """
    out = np.zeros(v.dim, dtype=complex)
    out[1:] = v.amplitudes[:-1]
    return FockVector(out, v.truncation_loss + v.top_probability())


def _evaluate(f, n):
    try:
        return complex(f(n))
    except (ArithmeticError, ValueError, TypeError) as err:
        raise EvaluationError('f(n) failed at n=%d: %s' % (n, err), parameter='n') from err


def apply_number_fn(f, v):
    """
    ``f(n)|psi>``: ``out[n] = f(n) v[n]``.

    :param f: callable of the photon number; may be vectorised
    :raises: EvaluationError naming the first level where ``f`` is not finite
    :rtype: FockVector
    """
    n = np.arange(v.dim)
    try:
        with np.errstate(all='ignore'):
            weights = np.asarray(f(n), dtype=complex)
        if weights.shape != n.shape:
            raise TypeError
    except (TypeError, ValueError):
        weights = np.array([_evaluate(f, int(k)) for k in n], dtype=complex)
    bad = np.flatnonzero(~np.isfinite(weights))
    if len(bad):
        raise EvaluationError('f(n) is not finite at n=%d' % bad[0], parameter='n')
    return FockVector(weights * v.amplitudes, v.truncation_loss)


def truncation_dim(x):
    """
    Dimension keeping the neglected tail of a London or modified state with
    amplitude ``x`` below 1e-20.

    :rtype: int
    """
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise InvalidArgument('amplitude must be finite and >= 0, got %r' % (x,), parameter='x')
    return max(MIN_DIM, math.ceil(2.0 * x + 12.0 * (2.0 * x) ** (1.0 / 3.0) + 16.0))


def propagate(generator, x, v0, tol=None):
    """
    ``e^{x G} v0`` on the truncated space.

    ``x`` is split into steps ``h`` with ``|h| ||G|| <= 1`` and every step
    is a truncated Taylor series, stopped when the next term is below the
    step's share of ``tol``. With ``|h| ||G|| <= 1`` the dropped remainder is
    bounded by the last term kept.

    :param generator: :class:`TridiagonalGenerator`
    :param x: real (or complex) exponent scale
    :param v0: :class:`FockVector`
    :param tol: target residual, defaults to ``settings.PROPAGATE_TOL``
    :raises: InvalidDimension, InvalidArgument, ConvergenceError
    :rtype: FockVector
    """
    tol = settings.PROPAGATE_TOL if tol is None else tol
    if not tol > 0:
        raise InvalidArgument('tol must be > 0, got %r' % (tol,), parameter='tol')
    if generator.dim != v0.dim:
        raise InvalidDimension('generator dim %d != vector dim %d' % (generator.dim, v0.dim), parameter='dim')
    if x == 0:
        return v0

    scale = abs(x) * generator.norm_bound()
    steps = max(1, math.ceil(scale))
    h = x / steps
    step_tol = tol / steps
    max_terms = settings.PROPAGATE_MAX_TERMS

    v = np.array(v0.amplitudes, dtype=complex)
    top = abs(v[-1]) ** 2
    for _ in range(steps):
        term = v
        acc = v.copy()
        for k in range(1, max_terms + 1):
            term = generator.matvec(term) * (h / k)
            acc += term
            residual = float(np.linalg.norm(term))
            if residual <= step_tol * max(1.0, float(np.linalg.norm(acc))):
                break
        else:
            raise ConvergenceError(
                'propagate did not converge in %d terms (residual %.3e)' % (max_terms, residual),
                residual=residual)
        v = acc
        top = max(top, abs(v[-1]) ** 2)

    logger.debug('propagate dim=%d x=%r steps=%d top=%.3e', v0.dim, x, steps, top)
    return FockVector(v, v0.truncation_loss + top)


def evolve(hamiltonian, t, v0, tol=None):
    """
    ``e^{-i H t} v0`` for a tridiagonal Hamiltonian.

    :rtype: FockVector
    """
    return propagate(hamiltonian.scaled(-1j), t, v0, tol)
