import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from salpeter_bounds.basis import (
    RadialState,
    TrialBasis,
    gram_matrix,
    momentum_eval,
    momentum_table,
    radial_eval,
)
from salpeter_bounds.errors import DomainError


def _momentum_oracle(ell, beta, mu, k, p):
    """Hankel transform of the radial function by direct mpmath quadrature."""
    mpmath.mp.dps = 30
    g = 2 * ell + 2 * beta
    norm = mpmath.sqrt((2 * mu) ** (g + 1) * mpmath.factorial(k) / mpmath.gamma(g + k + 1))

    def integrand(r):
        radial = norm * r ** (ell + beta - 1) * mpmath.exp(-mu * r) * mpmath.laguerre(k, g, 2 * mu * r)
        bessel = mpmath.sqrt(mpmath.pi / (2 * p * r)) * mpmath.besselj(ell + 0.5, p * r)
        return r * r * bessel * radial

    val = mpmath.quad(integrand, [0, 1, 5, 20, 60, mpmath.inf])
    return float(mpmath.sqrt(2 / mpmath.pi) * val)


def test_ground_state_momentum_closed_form():
    basis = TrialBasis(0, 1.0, 1.0, 1)
    p = np.linspace(0, 6, 13)
    expected = 4 * math.sqrt(2 / math.pi) / (1 + p**2) ** 2
    np.testing.assert_allclose(momentum_table(basis, p)[0], expected, rtol=1e-13)


@pytest.mark.parametrize(
    "ell, beta, mu, k, p",
    [
        (0, 1.0, 1.0, 3, 0.7),
        (1, 1.0, 0.5, 2, 1.9),
        (2, 1.0, 2.0, 5, 4.0),
        (0, 0.75, 1.0, 4, 0.4),
        (0, 0.75, 1.0, 4, 3.0),
        (1, 1.5, 1.3, 3, 0.9),
        (2, 0.6, 0.8, 2, 2.5),
    ],
)
def test_momentum_functions_against_mpmath(ell, beta, mu, k, p):
    ref = _momentum_oracle(ell, beta, mu, k, p)
    got = momentum_eval(TrialBasis(ell, beta, mu, k + 1), k, p)
    assert got == pytest.approx(ref, rel=1e-8, abs=1e-10)


def test_generic_path_agrees_with_closed_form():
    # a beta that differs from 1 by roundoff only takes the quadrature path
    p = np.geomspace(1e-3, 50, 40)
    exact = momentum_table(TrialBasis(1, 1.0, 1.0, 10), p)
    generic = momentum_table(TrialBasis(1, 1.0 + 1e-15, 1.0, 10), p)
    np.testing.assert_allclose(generic, exact, atol=1e-9)


@pytest.mark.parametrize("beta", [1.0, 0.75, 1.6])
def test_gram_matrix_is_identity(beta):
    g = gram_matrix(TrialBasis(1, beta, 1.7, 30))
    assert np.max(np.abs(g - np.eye(30))) < 1e-10


@pytest.mark.parametrize("beta", [1.0, 0.8])
def test_momentum_functions_orthonormal(beta):
    from salpeter_bounds.operators import momentum_operator_matrix

    basis = TrialBasis(0, beta, 1.0, 12)
    overlap = momentum_operator_matrix(basis, np.ones_like)
    assert np.max(np.abs(overlap - np.eye(12))) < 1e-8


def test_radial_function_normalized_by_mpmath():
    basis = TrialBasis(1, 0.75, 1.2, 4)
    val = mpmath.quad(lambda r: r * r * radial_eval(basis, 3, float(r)) ** 2, [0, 2, 10, mpmath.inf])
    assert float(val) == pytest.approx(1.0, rel=1e-9)


@settings(max_examples=25, deadline=None)
@given(mu=st.floats(0.2, 5.0), p=st.floats(0.01, 20.0), k=st.integers(0, 6))
def test_momentum_scaling_law(mu, p, k):
    unit = momentum_eval(TrialBasis(1, 1.0, 1.0, 7), k, p / mu)
    scaled = momentum_eval(TrialBasis(1, 1.0, mu, 7), k, p)
    assert scaled == pytest.approx(mu**-1.5 * unit, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize(
    "kwargs",
    [dict(ell=-1), dict(beta=-0.5), dict(mu=0.0), dict(dim=0), dict(ell=1.5)],
)
def test_basis_validation(kwargs):
    with pytest.raises(DomainError):
        TrialBasis(**kwargs)


def test_radial_state_requires_unit_norm():
    basis = TrialBasis(dim=2)
    RadialState(basis, np.array([0.6, 0.8]))
    with pytest.raises(DomainError):
        RadialState(basis, np.array([1.0, 1.0]))
