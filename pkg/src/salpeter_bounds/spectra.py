"""
Rayleigh-Ritz upper bounds on the discrete spectrum.

Diagonalizing the Hamiltonian restricted to a ``d``-dimensional trial
space gives ``d`` ordered values, the ``k``-th of which bounds the
``k``-th true eigenvalue below the continuum from above.  The Laguerre
trial spaces are nested in ``d``, so every bound improves monotonically
as the dimension grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import RadialState, TrialBasis
from .errors import DomainError, SalpeterError
from .operators import hamiltonian_matrix

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class SpectralResult:
    """Ritz values and vectors for one orbital angular momentum.

    Attributes
    ----------
    eigenvalues : ndarray
        Ascending Ritz values (energy units).
    vectors : ndarray, shape (dim, n_states)
        Orthonormal coefficient vectors, one per column.
    """

    basis: TrialBasis
    masses: object
    spec: object
    eigenvalues: np.ndarray
    vectors: np.ndarray

    @property
    def binding(self):
        """Ritz values minus the two-particle threshold."""
        return self.eigenvalues - self.masses.threshold

    @property
    def states(self):
        return [RadialState(self.basis, self.vectors[:, k]) for k in range(self.vectors.shape[1])]


@dataclass
class OptimizationOutcome:
    best_mu: float
    best_beta: float
    best_value: float
    evaluations: int = 0
    trace: list = field(default_factory=list)


def diagonalize(hamiltonian, n_states=None):
    """Ascending eigenpairs of a symmetric matrix with a residual check."""
    h = np.asarray(hamiltonian, dtype=float)
    dim = h.shape[0]
    n = dim if n_states is None else int(n_states)
    if not 1 <= n <= dim:
        raise DomainError(f"n_states must lie in [1, {dim}], got {n_states}")
    vals, vecs = np.linalg.eigh(h)
    vals, vecs = vals[:n], vecs[:, :n]
    residual = np.linalg.norm(h @ vecs - vecs * vals, axis=0)
    limit = 1e-9 * max(np.linalg.norm(h, 2), 1e-300)
    if np.any(residual > limit):
        raise SalpeterError(f"eigenvector residual {residual.max():.2e} exceeds {limit:.2e}")
    return vals, vecs


def solve(basis, masses, spec, n_states=None, order=None):
    """Ritz values of the Hamiltonian in ``basis``."""
    h = hamiltonian_matrix(basis, masses, spec, order)
    vals, vecs = diagonalize(h, n_states)
    return SpectralResult(basis, masses, spec, vals, vecs)


def binding_table(masses, spec, beta, mu, dim, sectors, order=None):
    """Binding energies for a list of ``(n_r, ell)`` states.

    One diagonalization is done per distinct ``ell``; ``n_r`` indexes the
    ascending Ritz values within that sector.

    Returns
    -------
    dict
        ``{(n_r, ell): binding}`` in the order of ``sectors``.
    """
    sectors = [(int(n), int(ell)) for n, ell in sectors]
    results = {}
    for ell in sorted({ell for _, ell in sectors}):
        results[ell] = solve(TrialBasis(ell, beta, mu, dim), masses, spec, order=order)
    table = {}
    for n_r, ell in sectors:
        if n_r >= dim:
            raise DomainError(f"n_r={n_r} requires dim > {n_r}")
        table[(n_r, ell)] = float(results[ell].binding[n_r])
    return table


def convergence_scan(masses, spec, beta, mu, ell, d_max, k=0, order=None):
    """Ritz value ``E_k`` for every dimension ``k+1 .. d_max``.

    The trial spaces are nested, so one Hamiltonian of size ``d_max`` is
    built and its leading principal submatrices are diagonalized.
    """
    if d_max < k + 1:
        raise DomainError(f"d_max must be at least k+1={k + 1}, got {d_max}")
    h = hamiltonian_matrix(TrialBasis(ell, beta, mu, d_max), masses, spec, order)
    return [(d, float(np.linalg.eigvalsh(h[:d, :d])[k])) for d in range(k + 1, d_max + 1)]


def golden_section(func, lo, hi, tol=1e-4, max_iter=200):
    """Minimize a unimodal function on ``[lo, hi]``.

    Returns ``(x_best, f_best)`` over all points evaluated, endpoints
    excluded.
    """
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = func(x1), func(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = func(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = func(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _min_beta(ell, spec):
    if ell == 0 and getattr(spec, "is_hellmann", False):
        return 0.0
    return -0.5


def optimize_parameters(
    masses, spec, ell, dim, k=0, mu_range=(0.1, 10.0), beta_range=(0.6, 2.0),
    sweeps=2, tol=1e-4, order=None,
):
    """Minimize the ``k``-th Ritz value over ``mu`` and ``beta``.

    Coordinate-wise golden-section search: each sweep optimizes
    ``log(mu)`` at fixed ``beta`` and then ``beta`` at fixed ``mu``.  A
    degenerate range (``lo == hi``) freezes that parameter.  The search
    starts at the midpoint of the ranges (geometric for ``mu``).
    """
    mu_lo, mu_hi = map(float, mu_range)
    beta_lo, beta_hi = map(float, beta_range)
    if not 0 < mu_lo <= mu_hi:
        raise DomainError(f"mu range must satisfy 0 < lo <= hi, got {mu_range}")
    if not beta_lo <= beta_hi:
        raise DomainError(f"beta range must satisfy lo <= hi, got {beta_range}")
    floor = _min_beta(ell, spec)
    if beta_lo <= floor:
        raise DomainError(f"beta range must lie above {floor} for ell={ell}, got {beta_range}")
    if dim <= k:
        raise DomainError(f"dim must exceed k={k}")

    outcome = OptimizationOutcome(math.nan, math.nan, math.inf)

    def value(mu, beta):
        try:
            result = solve(TrialBasis(ell, beta, mu, dim), masses, spec, n_states=k + 1, order=order)
            e = float(result.eigenvalues[k])
        except SalpeterError:
            e = math.inf
        outcome.evaluations += 1
        outcome.trace.append((mu, beta, e))
        if e < outcome.best_value:
            outcome.best_mu, outcome.best_beta, outcome.best_value = mu, beta, e
        return e

    mu = math.sqrt(mu_lo * mu_hi)
    beta = 0.5 * (beta_lo + beta_hi)
    value(mu, beta)
    for _ in range(sweeps):
        if mu_hi > mu_lo:
            golden_section(lambda t: value(math.exp(t), beta), math.log(mu_lo), math.log(mu_hi), tol)
            mu, beta = outcome.best_mu, outcome.best_beta
        if beta_hi > beta_lo:
            golden_section(lambda b: value(mu, b), beta_lo, beta_hi, tol)
            mu, beta = outcome.best_mu, outcome.best_beta
    return outcome
