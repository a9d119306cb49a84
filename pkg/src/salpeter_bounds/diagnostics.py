"""
Virial-theorem residuals as a quality measure for approximate eigenstates.

For an exact eigenstate the expectation value of
:math:`\\sum_i p^2/\\sqrt{p^2+m_i^2}` equals that of :math:`r\\,dV/dr`.
The relative mismatch of the two sides is reported as the residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import radial_force_matrix, virial_kinetic_matrix


@dataclass(frozen=True)
class VirialReport:
    lhs: float
    rhs: float
    residual: float


def _report(lhs, rhs):
    scale = max(abs(lhs), abs(rhs))
    residual = abs(lhs - rhs) / scale if scale > 0 else 0.0
    return VirialReport(float(lhs), float(rhs), float(residual))


def virial_matrices(basis, masses, spec):
    """The kinetic-side and potential-side virial operators in ``basis``."""
    return virial_kinetic_matrix(basis, masses), radial_force_matrix(basis, spec)


def virial_check(state, masses, spec):
    """Virial balance of a single normalized state."""
    kin, force = virial_matrices(state.basis, masses, spec)
    c = state.coefficients
    return _report(c @ kin @ c, c @ force @ c)


def virial_residuals(result):
    """Virial reports for every state of a :class:`~salpeter_bounds.spectra.SpectralResult`."""
    kin, force = virial_matrices(result.basis, result.masses, result.spec)
    vecs = result.vectors
    lhs = np.einsum("ik,ij,jk->k", vecs, kin, vecs)
    rhs = np.einsum("ik,ij,jk->k", vecs, force, vecs)
    return [_report(a, b) for a, b in zip(lhs, rhs)]
