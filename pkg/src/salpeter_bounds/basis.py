"""
Generalized-Laguerre trial functions in position and momentum space.

The radial functions are

.. math::

    R_k(r) = N_k\\, r^{\\ell+\\beta-1} e^{-\\mu r} L_k^{(2\\ell+2\\beta)}(2\\mu r),
    \\qquad \\int_0^\\infty r^2 R_i R_j\\, dr = \\delta_{ij},

and their momentum-space partners are the Hankel transforms

.. math::

    \\phi_k(p) = \\sqrt{2/\\pi} \\int_0^\\infty r^2 j_\\ell(p r) R_k(r)\\, dr .

For ``beta = 1`` the transform is a rational function of ``p`` times a
Jacobi polynomial :math:`P_k^{(\\ell+3/2,\\,\\ell+1/2)}` of
:math:`x = (p^2-\\mu^2)/(p^2+\\mu^2)`.  Other values of ``beta`` use a
Gauss-Laguerre integral at small ``p`` and a contour-rotated
Gauss-Laguerre integral at large ``p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.special

from .errors import DomainError
from .numerics import gauss_laguerre, laguerre_table

# below this momentum (in units of mu) the direct radial quadrature is used
_P_SPLIT = 1.0
_SMALL_P_ORDER = 150


@dataclass(frozen=True)
class TrialBasis:
    """Finite Laguerre trial space for one orbital angular momentum.

    Attributes
    ----------
    ell : int
        Orbital angular momentum, ``ell >= 0``.
    beta : float
        Shape parameter, ``beta > -1/2``.
    mu : float
        Inverse length scale, ``mu > 0``.
    dim : int
        Number of basis functions, ``dim >= 1``.
    """

    ell: int = 0
    beta: float = 1.0
    mu: float = 1.0
    dim: int = 1

    def __post_init__(self):
        if int(self.ell) != self.ell or self.ell < 0:
            raise DomainError(f"ell must be a non-negative integer, got {self.ell}")
        if not self.mu > 0:
            raise DomainError(f"mu must be > 0, got {self.mu}")
        if not self.beta > -0.5:
            raise DomainError(f"beta must be > -1/2, got {self.beta}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise DomainError(f"dim must be a positive integer, got {self.dim}")

    @property
    def gamma(self):
        """Laguerre parameter ``2 ell + 2 beta``."""
        return 2 * self.ell + 2 * self.beta

    @property
    def closed_form(self):
        """Whether the momentum functions have the exact Jacobi form."""
        return self.beta == 1.0

    def with_dim(self, dim):
        return TrialBasis(self.ell, self.beta, self.mu, dim)

    def with_mu(self, mu):
        return TrialBasis(self.ell, self.beta, mu, self.dim)


@dataclass(frozen=True)
class RadialState:
    """A normalized vector in a trial space."""

    basis: TrialBasis
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if c.shape != (self.basis.dim,):
            raise DomainError(f"expected {self.basis.dim} coefficients, got shape {c.shape}")
        norm = np.linalg.norm(c)
        if abs(norm - 1.0) > 1e-8:
            raise DomainError(f"coefficient vector must have unit norm, got {norm}")
        object.__setattr__(self, "coefficients", c)

    def momentum_density(self, p):
        """Momentum-space wave function :math:`\\chi(p) = \\sum_k c_k \\phi_k(p)`."""
        return self.coefficients @ momentum_table(self.basis, p)


def laguerre_norms(gamma, dim):
    """``sqrt(k! / Gamma(gamma + k + 1))`` for ``k < dim``."""
    k = np.arange(dim)
    return np.exp(0.5 * (scipy.special.gammaln(k + 1) - scipy.special.gammaln(gamma + k + 1)))


def radial_table(basis, r):
    """All radial functions on the points ``r``; shape ``(dim,) + r.shape``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radius must be > 0")
    g, mu = basis.gamma, basis.mu
    norms = laguerre_norms(g, basis.dim) * (2 * mu) ** ((g + 1) / 2)
    lag = laguerre_table(basis.dim - 1, g, 2 * mu * r)
    envelope = r ** (basis.ell + basis.beta - 1) * np.exp(-mu * r)
    return norms.reshape((-1,) + (1,) * r.ndim) * lag * envelope


def radial_eval(basis, k, r):
    """Normalized radial trial function :math:`R_k(r)`."""
    if int(k) != k or not 0 <= k < basis.dim:
        raise DomainError(f"index k must satisfy 0 <= k < {basis.dim}, got {k}")
    val = radial_table(basis, r)[int(k)]
    return float(val) if np.ndim(val) == 0 else val


def _jacobi_momentum(ell, dim, p):
    """Exact momentum functions for beta = 1 and mu = 1."""
    a, b = ell + 1.5, ell + 0.5
    k = np.arange(dim)
    log_h = (
        (a + b + 1) * math.log(2.0)
        - np.log(2 * k + a + b + 1)
        + scipy.special.gammaln(k + a + 1)
        + scipy.special.gammaln(k + b + 1)
        - scipy.special.gammaln(k + a + b + 1)
        - scipy.special.gammaln(k + 1)
    )
    c = np.exp(0.5 * ((2 * ell + 4) * math.log(2.0) - log_h))
    p2 = p * p
    x = (p2 - 1.0) / (p2 + 1.0)
    pref = p**ell / (p2 + 1.0) ** (ell + 2)
    return c[:, None] * pref[None, :] * scipy.special.eval_jacobi(k[:, None], a, b, x[None, :])


def _quadrature_momentum(ell, beta, dim, p):
    """Momentum functions for arbitrary beta and mu = 1."""
    g = 2 * ell + 2 * beta
    power = ell + beta + 1
    norms = laguerre_norms(g, dim) * 2.0 ** ((g + 1) / 2)
    out = np.empty((dim, p.size))

    small = p < _P_SPLIT
    if np.any(small):
        rule = gauss_laguerre(_SMALL_P_ORDER, power)
        lag = laguerre_table(dim - 1, g, 2 * rule.nodes)
        bessel = scipy.special.spherical_jn(ell, np.outer(p[small], rule.nodes))
        out[:, small] = (lag * rule.weights) @ bessel.T

    if np.any(~small):
        # j_l = Re h_l^(1); each term of h_l is a power times exp(i p r), and
        # rotating r -> s / (1 - i p) turns it into an exact Laguerre integral
        q_large = p[~small]
        z = 1.0 - 1j * q_large
        acc = np.zeros((dim, q_large.size), dtype=complex)
        for q in range(ell + 1):
            coef = (
                (-1j) ** (ell + 1)
                * 1j**q
                * math.factorial(ell + q)
                / (math.factorial(q) * math.factorial(ell - q) * 2**q)
            )
            rule = gauss_laguerre(dim // 2 + 4, power - q - 1)
            lag = laguerre_table(dim - 1, g, 2 * rule.nodes[None, :] / z[:, None])
            acc += coef * q_large ** (-q - 1) * z ** (-(power - q)) * (lag @ rule.weights)
        out[:, ~small] = acc.real
    return math.sqrt(2.0 / math.pi) * norms[:, None] * out


def _unit_momentum_table(ell, beta, dim, p):
    if beta == 1.0:
        return _jacobi_momentum(ell, dim, p)
    return _quadrature_momentum(ell, beta, dim, p)


def momentum_table(basis, p):
    """All momentum functions on the points ``p >= 0``; shape ``(dim,) + p.shape``."""
    p = np.asarray(p, dtype=float)
    if np.any(p < 0):
        raise DomainError("momentum must be >= 0")
    flat = p.reshape(-1) / basis.mu
    vals = _unit_momentum_table(basis.ell, basis.beta, basis.dim, flat)
    if basis.ell > 0:
        vals[:, flat == 0] = 0.0
    return (basis.mu**-1.5 * vals).reshape((basis.dim,) + p.shape)


def momentum_eval(basis, k, p):
    """Momentum-space trial function :math:`\\phi_k(p)`."""
    if int(k) != k or not 0 <= k < basis.dim:
        raise DomainError(f"index k must satisfy 0 <= k < {basis.dim}, got {k}")
    val = momentum_table(basis, p)[int(k)]
    return float(val) if np.ndim(val) == 0 else val


@lru_cache(maxsize=64)
def _momentum_nodes(ell, beta, dim, order):
    """Mapped Gauss-Legendre nodes in ``p / mu`` and the trial functions on them.

    The map is ``p = tan(pi u / 2)``; for ``beta != 1`` the variable
    ``u = 1 - (1 - t)^4`` additionally grades nodes toward the algebraic
    tail of the momentum functions.
    """
    t, w = np.polynomial.legendre.leggauss(order)
    t = 0.5 * (t + 1.0)
    w = 0.5 * w
    if beta == 1.0:
        u, du = t, np.ones_like(t)
    else:
        u, du = 1.0 - (1.0 - t) ** 4, 4.0 * (1.0 - t) ** 3
    p = np.tan(0.5 * np.pi * u)
    dp = 0.5 * np.pi / np.cos(0.5 * np.pi * u) ** 2 * du
    phi = _unit_momentum_table(ell, beta, dim, p)
    weights = w * dp * p**2
    for arr in (p, weights, phi):
        arr.setflags(write=False)
    return p, weights, phi


def momentum_quadrature(basis, order):
    """Quadrature for ``int p^2 phi_i(p) phi_j(p) f(p) dp``.

    The integral equals ``sum(weights * phi[i] * phi[j] * f(p))``.  Only
    ``p`` depends on ``mu``; ``weights`` and ``phi`` are tabulated once at
    ``mu = 1`` and the powers of ``mu`` cancel between them.

    Returns
    -------
    p : ndarray
        Physical momenta.
    weights : ndarray
        Weights including the ``p^2`` measure, in units of ``mu``.
    phi : ndarray, shape (dim, order)
        Momentum trial functions at ``mu = 1``.
    """
    p1, w1, phi1 = _momentum_nodes(basis.ell, float(basis.beta), basis.dim, int(order))
    return basis.mu * p1, w1, phi1


def gram_matrix(basis):
    """Overlap matrix of the radial trial functions (the identity up to roundoff)."""
    g = basis.gamma
    rule = gauss_laguerre(basis.dim + 2, g)
    lag = laguerre_table(basis.dim - 1, g, rule.nodes)
    nu = laguerre_norms(g, basis.dim)
    gram = (lag * rule.weights) @ lag.T
    return nu[:, None] * gram * nu[None, :]
