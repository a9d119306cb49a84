import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from salpeter_bounds import potentials
from salpeter_bounds.errors import DomainError, UnsupportedError
from salpeter_bounds.potentials import PotentialSpec


def test_evaluate_sums_coulomb_and_yukawa():
    spec = PotentialSpec.hellmann(1.0, -2.0, b=1.0)
    r = 0.7
    assert potentials.evaluate(spec, r) == pytest.approx(-1 / r + 2 * math.exp(-r) / r)


def test_exponential_well():
    spec = PotentialSpec.exponential_well(2.0, b=0.5)
    assert potentials.evaluate(spec, 2.0) == pytest.approx(-2.0 * math.exp(-1.0))


def test_radial_force_matches_finite_difference():
    spec = PotentialSpec.hellmann(0.5, 0.5, b=2.0)
    r, h = 1.3, 1e-6
    deriv = (potentials.evaluate(spec, r + h) - potentials.evaluate(spec, r - h)) / (2 * h)
    assert potentials.radial_force(spec, r) == pytest.approx(r * deriv, rel=1e-7)


def test_rejects_nonpositive_radius():
    with pytest.raises(DomainError):
        potentials.evaluate(PotentialSpec.hellmann(1.0, 0.0), 0.0)


def test_rejects_bad_parameters():
    with pytest.raises(DomainError):
        PotentialSpec.hellmann(-1.0, 0.0)
    with pytest.raises(DomainError):
        PotentialSpec.hellmann(1.0, 0.0, b=0.0)


@pytest.mark.parametrize(
    "kappa, upsilon, label, bounded",
    [
        (1.0, 2.0, "upsilon>kappa", False),
        (1.0, 1.0, "upsilon=kappa", False),
        (1.0, 0.5, "0<upsilon<kappa", False),
        (1.0, 0.0, "upsilon=0", False),
        (1.0, -0.5, "-kappa<upsilon<0", False),
        (1.0, -1.0, "upsilon=-kappa", True),
        (1.0, -2.0, "upsilon<-kappa", True),
    ],
)
def test_classification(kappa, upsilon, label, bounded):
    profile = potentials.classify(PotentialSpec.hellmann(kappa, upsilon))
    assert profile.category == label
    assert profile.bounded_below is bounded


def test_classify_rejects_other_families():
    with pytest.raises(UnsupportedError):
        potentials.classify(PotentialSpec.exponential_well(1.0))


def test_minimum_against_grid_scan():
    spec = PotentialSpec.hellmann(1.0, -2.0, b=1.0)
    r_star, v_min = potentials.minimum(spec)
    grid = np.linspace(0.5, 5.0, 400001)
    vals = potentials.evaluate(spec, grid)
    assert v_min == pytest.approx(vals.min(), abs=1e-10)
    assert r_star == pytest.approx(grid[np.argmin(vals)], abs=1e-4)


def test_minimum_at_origin_for_balanced_couplings():
    r_star, v_min = potentials.minimum(PotentialSpec.hellmann(1.0, -1.0, b=1.0))
    assert r_star == 0.0
    assert v_min == pytest.approx(-1.0)


@given(
    kappa=st.floats(0.01, 3.0),
    excess=st.floats(0.05, 3.0),
    b=st.floats(0.1, 5.0),
)
def test_minimum_is_stationary_and_lowest(kappa, excess, b):
    spec = PotentialSpec.hellmann(kappa, -(kappa + excess), b)
    r_star, v_min = potentials.minimum(spec)
    assert potentials.radial_force(spec, r_star) == pytest.approx(0.0, abs=1e-9 * max(1.0, kappa / r_star))
    for r in (0.5 * r_star, 2.0 * r_star):
        assert potentials.evaluate(spec, r) >= v_min - 1e-12


def test_profile_samples_shape():
    samples = potentials.profile_samples(PotentialSpec.hellmann(1.0, 0.0), 0.1, 10.0, 50)
    assert samples.shape == (50, 2)
    np.testing.assert_allclose(samples[:, 1], -1.0 / samples[:, 0])
