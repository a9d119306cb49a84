"""
Matrix representations of the kinetic and potential operators.

Every matrix is real symmetric and expressed in the orthonormal trial
basis of :mod:`salpeter_bounds.basis`.  Kinetic-type operators are
diagonal in momentum space and are integrated on a mapped Gauss-Legendre
grid whose order is doubled until the matrix stops changing.  Potential
operators reduce to Laguerre-weighted polynomial integrals, which
Gauss-Laguerre quadrature evaluates exactly.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass

import numpy as np

from . import potentials
from .basis import laguerre_norms, momentum_quadrature
from .errors import DomainError, NumericError
from .numerics import gauss_laguerre, laguerre_table

log = logging.getLogger(__name__)

QUAD_ORDER_ENV = "SALPETER_QUAD_ORDER"
DEFAULT_QUAD_ORDER = 200
MAX_QUAD_ORDER = 12800
CONVERGED_TOL = 1e-9
ACCEPT_TOL = 1e-8


@dataclass(frozen=True)
class MassConfig:
    """Constituent masses in natural units."""

    m1: float = 1.0
    m2: float = 1.0

    def __post_init__(self):
        if not (self.m1 >= 0 and self.m2 >= 0):
            raise DomainError(f"masses must be >= 0, got m1={self.m1}, m2={self.m2}")

    @classmethod
    def equal(cls, m):
        return cls(float(m), float(m))

    @property
    def threshold(self):
        """Onset of the continuum, ``m1 + m2``."""
        return self.m1 + self.m2


def start_order():
    """Initial momentum-quadrature order, honouring ``SALPETER_QUAD_ORDER``."""
    raw = os.environ.get(QUAD_ORDER_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_QUAD_ORDER
    try:
        order = int(raw)
    except ValueError:
        raise DomainError(f"{QUAD_ORDER_ENV} must be an integer >= 50, got {raw!r}") from None
    if order < 50:
        raise DomainError(f"{QUAD_ORDER_ENV} must be an integer >= 50, got {order}")
    return order


def _symmetrize(a):
    return 0.5 * (a + a.T)


def momentum_operator_matrix(basis, func, order=None, tol=CONVERGED_TOL):
    """Matrix of a multiplication operator ``func(p)`` in momentum space.

    The quadrature order starts at ``order`` (default from
    :func:`start_order`) and doubles until the max-norm change between
    successive orders falls below ``tol``.

    Raises
    ------
    NumericError
        If successive orders still disagree by more than ``1e-8`` at the
        largest allowed order.
    """
    n = start_order() if order is None else int(order)

    def assemble(n):
        p, w, phi = momentum_quadrature(basis, n)
        return (phi * (w * func(p))) @ phi.T

    current = assemble(n)
    while True:
        refined = assemble(2 * n)
        change = np.max(np.abs(refined - current))
        scale = max(1.0, np.max(np.abs(refined)))
        if change < tol * scale:
            return _symmetrize(refined)
        if 2 * n >= MAX_QUAD_ORDER:
            if change < ACCEPT_TOL * scale:
                log.warning("momentum quadrature stopped at order %d, change %.2e", 2 * n, change)
                return _symmetrize(refined)
            raise NumericError(
                f"momentum quadrature did not converge: change {change:.3e} "
                f"between orders {n} and {2 * n} (ell={basis.ell}, beta={basis.beta})"
            )
        n *= 2
        current = refined


def kinetic_matrix(basis, masses, order=None):
    """Matrix of :math:`\\sqrt{p^2+m_1^2} + \\sqrt{p^2+m_2^2}`."""
    if basis.ell == 0 and basis.beta <= 0:
        raise DomainError("kinetic energy diverges for ell = 0 and beta <= 0")
    m1, m2 = masses.m1, masses.m2
    return momentum_operator_matrix(
        basis, lambda p: np.sqrt(p * p + m1 * m1) + np.sqrt(p * p + m2 * m2), order
    )


def p_squared_matrix(basis, order=None):
    """Matrix of :math:`p^2`."""
    if 2 * basis.ell + 2 * basis.beta <= 1:
        raise DomainError("<p^2> diverges unless 2 ell + 2 beta > 1")
    return momentum_operator_matrix(basis, lambda p: p * p, order)


def virial_kinetic_matrix(basis, masses, order=None):
    """Matrix of :math:`\\sum_i p^2 / \\sqrt{p^2 + m_i^2}`."""
    if basis.ell == 0 and basis.beta <= 0:
        raise DomainError("kinetic energy diverges for ell = 0 and beta <= 0")

    def func(p):
        out = np.zeros_like(p)
        for m in (masses.m1, masses.m2):
            out += p * p / np.sqrt(p * p + m * m) if m > 0 else p
        return out

    return momentum_operator_matrix(basis, func, order)


def laguerre_moment_matrix(basis, inverse_power, rate):
    """Exact matrix of :math:`r^{-s} e^{-a r}` for integer ``s <= 1``.

    With ``x = 2 mu r`` and ``x = y / c``, ``c = 1 + a / (2 mu)``, each
    element becomes a polynomial of degree ``2 dim - 2`` against the
    weight :math:`y^{\\gamma - s} e^{-y}`, integrated exactly by a
    Gauss-Laguerre rule of order ``dim + 2``.
    """
    g = basis.gamma
    exponent = g - inverse_power
    if exponent <= -1:
        raise DomainError(
            f"matrix element of r^-{inverse_power} diverges for ell={basis.ell}, beta={basis.beta}"
        )
    c = 1.0 + rate / (2.0 * basis.mu)
    rule = gauss_laguerre(basis.dim + 2, exponent)
    lag = laguerre_table(basis.dim - 1, g, rule.nodes / c)
    nu = laguerre_norms(g, basis.dim)
    core = (lag * rule.weights) @ lag.T
    scale = (2.0 * basis.mu) ** inverse_power * c ** (-(exponent + 1))
    return _symmetrize(scale * nu[:, None] * core * nu[None, :])


def coulomb_matrix(basis, kappa):
    """Matrix of ``-kappa / r``."""
    return -kappa * laguerre_moment_matrix(basis, 1, 0.0)


def yukawa_matrix(basis, upsilon, b):
    """Matrix of ``-upsilon exp(-b r) / r``."""
    return -upsilon * laguerre_moment_matrix(basis, 1, b)


def potential_matrix(basis, spec):
    """Matrix of the potential ``V(r)``."""
    if spec.is_hellmann:
        out = np.zeros((basis.dim, basis.dim))
        if spec.kappa != 0 or spec.upsilon != 0:
            if basis.gamma <= 0:
                raise DomainError(
                    "1/r matrix elements diverge for ell = 0 and beta <= 0 (need 2 ell + 2 beta > 0)"
                )
        if spec.kappa != 0:
            out += coulomb_matrix(basis, spec.kappa)
        if spec.upsilon != 0:
            out += yukawa_matrix(basis, spec.upsilon, spec.b)
        return out
    return -spec.v0 * laguerre_moment_matrix(basis, 0, spec.b)


def radial_function_matrix(basis, func, order=None, tol=1e-10):
    """Matrix of ``func(r) / r`` for a smooth, bounded ``func``.

    Uses Gauss-Laguerre quadrature in ``x = 2 mu r`` with weight
    :math:`x^{\\gamma-1} e^{-x}`, doubling the order until converged.
    """
    g = basis.gamma
    if g <= 0:
        raise DomainError("1/r matrix elements diverge for ell = 0 and beta <= 0")
    nu = laguerre_norms(g, basis.dim)
    n = basis.dim + 20 if order is None else int(order)

    def assemble(n):
        rule = gauss_laguerre(n, g - 1)
        lag = laguerre_table(basis.dim - 1, g, rule.nodes)
        vals = func(rule.nodes / (2.0 * basis.mu))
        core = (lag * (rule.weights * vals)) @ lag.T
        return 2.0 * basis.mu * nu[:, None] * core * nu[None, :]

    current = assemble(n)
    while True:
        refined = assemble(2 * n)
        change = np.max(np.abs(refined - current))
        if change < tol * max(1.0, np.max(np.abs(refined))):
            return _symmetrize(refined)
        if 2 * n >= 3200:
            raise NumericError(f"radial quadrature did not converge: change {change:.3e}")
        n *= 2
        current = refined


def radial_force_matrix(basis, spec):
    """Matrix of ``r dV/dr`` (see :func:`potentials.radial_force`).

    Split into exponential moments so every term is integrated exactly.
    """
    if spec.is_hellmann:
        out = np.zeros((basis.dim, basis.dim))
        if spec.kappa != 0:
            out += spec.kappa * laguerre_moment_matrix(basis, 1, 0.0)
        if spec.upsilon != 0:
            out += spec.upsilon * laguerre_moment_matrix(basis, 1, spec.b)
            out += spec.upsilon * spec.b * laguerre_moment_matrix(basis, 0, spec.b)
        return out
    return spec.v0 * spec.b * laguerre_moment_matrix(basis, -1, spec.b)


def hamiltonian_matrix(basis, masses, spec, order=None):
    """Kinetic plus potential matrix."""
    return kinetic_matrix(basis, masses, order) + potential_matrix(basis, spec)
