"""
Reference values computed independently of the package.
"""
import math

import mpmath
import numpy as np
from scipy.special import jv

mpmath.mp.dps = 60


def bessel_power_series(n, y, terms=200):
    """
    ``J_n(y) = sum_k (-1)^k (y/2)^{2k+n} / (k! (n+k)!)`` in 60 digit arithmetic.
    """
    half = mpmath.mpf(y) / 2
    total = mpmath.mpf(0)
    for k in range(terms):
        term = (-1) ** k * half ** (2 * k + n) / (mpmath.factorial(k) * mpmath.factorial(n + k))
        total += term
        if k > half and abs(term) < mpmath.mpf(10) ** -40:
            break
    return float(total)


def glauber_amplitudes(beta, dim):
    """``e^{-|b|^2/2} b^n / sqrt(n!)``"""
    out = np.zeros(dim, dtype=complex)
    term = complex(math.exp(-0.5 * abs(beta) ** 2))
    for n in range(dim):
        out[n] = term
        term = term * beta / math.sqrt(n + 1)
    return out


def geometric_distribution(mean, size):
    ratio = mean / (1.0 + mean)
    return np.array([ratio ** n / (1.0 + mean) for n in range(size)])


def poisson_distribution(mean, size):
    return np.array([math.exp(-mean + n * math.log(mean) - math.lgamma(n + 1)) for n in range(size)])


def dense(generator):
    """Dense matrix of a tridiagonal generator."""
    matrix = np.diag(np.asarray(generator.diag, dtype=complex))
    matrix += np.diag(generator.sub, 1)
    matrix += np.diag(generator.sup, -1)
    return matrix


def modified_distribution(x, terms=200):
    """``(n+1) J_{n+1}^2(2x)`` normalised by its own sum."""
    n = np.arange(terms)
    p = (n + 1) * jv(n + 1, 2.0 * x) ** 2
    return p / p.sum()


def modified_mandel_q(x):
    p = modified_distribution(x)
    n = np.arange(len(p))
    mean = float(np.sum(n * p))
    return (float(np.sum(n * n * p)) - mean * mean) / mean - 1.0


def husimi_value(alpha, amplitudes):
    """``|<alpha|psi>|^2 / pi`` through the Glauber amplitudes."""
    overlap = np.vdot(glauber_amplitudes(alpha, len(amplitudes)), amplitudes)
    return abs(overlap) ** 2 / math.pi
