"""
Special functions and quadrature rules.

Only three special functions are needed by the rest of the package:
the generalized Laguerre polynomials :math:`L_k^{(\\gamma)}`, the
logarithm of the gamma function and the spherical Bessel functions
:math:`j_\\ell`.  Quadrature rules are Gauss-Laguerre with weight
:math:`x^\\gamma e^{-x}` on :math:`[0, \\infty)` and Gauss-Legendre on
:math:`[-1, 1]`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.special

from .errors import DomainError

__all__ = [
    "QuadratureRule",
    "laguerre_eval",
    "laguerre_table",
    "laguerre_explicit",
    "log_gamma",
    "spherical_bessel",
    "make_rule",
    "gauss_laguerre",
    "gauss_legendre",
]

GAUSS_LAGUERRE = "gauss-laguerre"
GAUSS_LEGENDRE = "gauss-legendre"


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a Gaussian quadrature rule.

    Attributes
    ----------
    nodes : ndarray
        Abscissae in strictly increasing order.
    weights : ndarray
        Strictly positive weights.
    kind : str
        ``"gauss-laguerre"`` or ``"gauss-legendre"``.
    order : int
        Number of nodes.
    gamma : float
        Exponent of the Laguerre weight :math:`x^\\gamma e^{-x}`
        (zero for Legendre rules).
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    order: int
    gamma: float = 0.0

    def integrate(self, values):
        """Weighted sum over the last axis of ``values``."""
        return np.asarray(values) @ self.weights


def laguerre_table(n, gamma, x):
    """All generalized Laguerre polynomials up to degree ``n``.

    Parameters
    ----------
    n : int
        Highest degree.
    gamma : float
        Parameter, must exceed -1.
    x : array_like
        Evaluation points; real or complex.

    Returns
    -------
    ndarray, shape (n + 1,) + x.shape
        ``out[k]`` holds :math:`L_k^{(\\gamma)}(x)`.
    """
    if gamma <= -1:
        raise DomainError(f"Laguerre parameter gamma must exceed -1, got {gamma}")
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    x = np.asarray(x)
    dtype = np.result_type(x.dtype, np.float64)
    out = np.empty((n + 1,) + x.shape, dtype=dtype)
    out[0] = 1.0
    if n >= 1:
        out[1] = 1.0 + gamma - x
    for k in range(1, n):
        out[k + 1] = ((2 * k + 1 + gamma - x) * out[k] - (k + gamma) * out[k - 1]) / (k + 1)
    return out


def laguerre_eval(k, gamma, x):
    """Generalized Laguerre polynomial :math:`L_k^{(\\gamma)}(x)` by recurrence."""
    if k < 0 or int(k) != k:
        raise DomainError(f"degree must be a non-negative integer, got {k}")
    if np.any(np.asarray(x) < 0):
        raise DomainError("Laguerre argument must be non-negative")
    val = laguerre_table(int(k), gamma, x)[int(k)]
    return float(val) if np.ndim(val) == 0 else val


def laguerre_explicit(k, gamma, x):
    """Finite binomial sum for :math:`L_k^{(\\gamma)}(x)`.

    Kept as an independent cross-check of the recurrence; suffers from
    cancellation for large ``k`` and ``x``.
    """
    if gamma <= -1:
        raise DomainError(f"Laguerre parameter gamma must exceed -1, got {gamma}")
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for t in range(k + 1):
        # binom(k + gamma, k - t) for real gamma
        log_binom = (
            math.lgamma(k + gamma + 1) - math.lgamma(k - t + 1) - math.lgamma(gamma + t + 1)
        )
        total = total + math.exp(log_binom) * (-x) ** t / math.factorial(t)
    return float(total) if total.ndim == 0 else total


def log_gamma(x):
    """Natural logarithm of :math:`\\Gamma(x)` for ``x > 0``."""
    if x <= 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def spherical_bessel(ell, x):
    """Spherical Bessel function :math:`j_\\ell(x)`."""
    if ell < 0:
        raise DomainError(f"order must be non-negative, got {ell}")
    return scipy.special.spherical_jn(ell, x)


@lru_cache(maxsize=256)
def _gauss_laguerre_cached(order, gamma):
    nodes, weights = scipy.special.roots_genlaguerre(order, gamma)
    for arr in (nodes, weights):
        arr.setflags(write=False)
    return nodes, weights


def gauss_laguerre(order, gamma=0.0):
    """Gauss-Laguerre rule for the weight :math:`x^\\gamma e^{-x}`."""
    nodes, weights = _gauss_laguerre_cached(int(order), float(gamma))
    return QuadratureRule(nodes, weights, GAUSS_LAGUERRE, int(order), float(gamma))


def gauss_legendre(order):
    """Gauss-Legendre rule on ``[-1, 1]``."""
    nodes, weights = np.polynomial.legendre.leggauss(int(order))
    return QuadratureRule(nodes, weights, GAUSS_LEGENDRE, int(order), 0.0)


def make_rule(kind, order, gamma=0.0):
    """Build a quadrature rule of the given kind and order.

    Parameters
    ----------
    kind : {"gauss-laguerre", "gauss-legendre"}
    order : int
        Number of nodes, at least 1.
    gamma : float, optional
        Laguerre weight exponent, must exceed -1.
    """
    if int(order) != order or order < 1:
        raise DomainError(f"quadrature order must be a positive integer, got {order}")
    if kind == GAUSS_LAGUERRE:
        if gamma <= -1:
            raise DomainError(f"Gauss-Laguerre exponent must exceed -1, got {gamma}")
        return gauss_laguerre(order, gamma)
    if kind == GAUSS_LEGENDRE:
        return gauss_legendre(order)
    raise DomainError(f"unsupported quadrature kind {kind!r}")
