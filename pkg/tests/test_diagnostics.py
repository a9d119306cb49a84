import math

import pytest

from salpeter_bounds.basis import RadialState, TrialBasis
from salpeter_bounds.diagnostics import virial_check, virial_residuals
from salpeter_bounds.operators import MassConfig
from salpeter_bounds.potentials import PotentialSpec
from salpeter_bounds.spectra import golden_section, solve

COULOMB = PotentialSpec.hellmann(1.0, 0.0)
MASSES = MassConfig(1.0, 1.0)


def _energy(mu):
    return solve(TrialBasis(0, 1.0, mu, 1), MASSES, COULOMB).eigenvalues[0]


def test_single_state_closed_form():
    state = RadialState(TrialBasis(0, 1.0, 1.0, 1), [1.0])
    report = virial_check(state, MASSES, COULOMB)
    # massive side: 2 <p^2/sqrt(p^2+1)> = 384/(105 pi); Coulomb side: kappa <1/r> = 1
    assert report.lhs == pytest.approx(384 / (105 * math.pi), rel=1e-10)
    assert report.rhs == pytest.approx(1.0, rel=1e-13)


def test_scale_optimum_balances_virial():
    mu, _ = golden_section(lambda t: _energy(math.exp(t)), math.log(0.1), math.log(10.0), tol=1e-10)
    state = RadialState(TrialBasis(0, 1.0, math.exp(mu), 1), [1.0])
    assert virial_check(state, MASSES, COULOMB).residual < 1e-6


def test_residuals_shrink_with_dimension():
    spec = PotentialSpec.hellmann(1.0, -1.0)
    small = virial_residuals(solve(TrialBasis(0, 1.0, 1.0, 8), MASSES, spec, n_states=1))[0]
    large = virial_residuals(solve(TrialBasis(0, 1.0, 1.0, 24), MASSES, spec, n_states=1))[0]
    assert large.residual < small.residual
