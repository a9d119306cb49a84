"""
Generalized Hellmann potentials and a bounded exponential well.

The Hellmann family is a Coulomb term plus a Yukawa term of either sign,

.. math::

    V(r) = -\\frac{\\kappa}{r} - \\upsilon \\frac{e^{-b r}}{r},
    \\qquad \\kappa \\ge 0,\\ b > 0.

Its qualitative shape depends only on how ``upsilon`` compares with
``kappa`` and ``-kappa``.  The seven category labels used here are local
names for those sign relations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, UnsupportedError

HELLMANN = "hellmann"
EXPONENTIAL_WELL = "exponential-well"

ATTRACTIVE_SINGULAR = "attractive-singular"
FINITE = "finite"
REPULSIVE_SINGULAR = "repulsive-singular"

CATEGORIES = (
    "upsilon>kappa",
    "upsilon=kappa",
    "0<upsilon<kappa",
    "upsilon=0",
    "-kappa<upsilon<0",
    "upsilon=-kappa",
    "upsilon<-kappa",
)

# couplings closer than this are treated as equal when classifying
_EQ_TOL = 1e-12


@dataclass(frozen=True)
class PotentialSpec:
    """A central potential.

    Energies are in units of the constituent mass ``m`` and ``b`` is an
    inverse length in the same units.
    """

    kind: str = HELLMANN
    kappa: float = 0.0
    upsilon: float = 0.0
    b: float = 1.0
    v0: float = 0.0

    def __post_init__(self):
        if self.kind == HELLMANN:
            if not self.kappa >= 0:
                raise DomainError(f"Coulomb coupling kappa must be >= 0, got {self.kappa}")
            if not self.b > 0:
                raise DomainError(f"slope b must be > 0, got {self.b}")
            if not math.isfinite(self.upsilon):
                raise DomainError("Yukawa coupling upsilon must be finite")
        elif self.kind == EXPONENTIAL_WELL:
            if not self.v0 > 0:
                raise DomainError(f"well depth v0 must be > 0, got {self.v0}")
            if not self.b > 0:
                raise DomainError(f"slope b must be > 0, got {self.b}")
        else:
            raise UnsupportedError(f"unknown potential kind {self.kind!r}")

    @classmethod
    def hellmann(cls, kappa, upsilon, b=1.0):
        return cls(HELLMANN, float(kappa), float(upsilon), float(b))

    @classmethod
    def exponential_well(cls, v0, b=1.0):
        return cls(EXPONENTIAL_WELL, b=float(b), v0=float(v0))

    @property
    def is_hellmann(self):
        return self.kind == HELLMANN


@dataclass(frozen=True)
class PotentialProfile:
    """Qualitative description of a Hellmann potential."""

    category: str
    bounded_below: bool
    origin_behavior: str
    minimum: Optional[tuple] = None


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radius must be > 0")
    return r


def _out(val):
    return float(val) if np.ndim(val) == 0 else val


def coulomb_part(spec, r):
    """The Coulomb term ``-kappa / r`` (zero for the exponential well)."""
    r = _check_r(r)
    if not spec.is_hellmann:
        return _out(np.zeros_like(r))
    return _out(-spec.kappa / r)


def yukawa_part(spec, r):
    """The Yukawa term ``-upsilon exp(-b r) / r`` (zero for the exponential well)."""
    r = _check_r(r)
    if not spec.is_hellmann:
        return _out(np.zeros_like(r))
    return _out(-spec.upsilon * np.exp(-spec.b * r) / r)


def evaluate(spec, r):
    """Potential energy at radius ``r > 0``."""
    r = _check_r(r)
    if spec.is_hellmann:
        val = -(spec.kappa + spec.upsilon * np.exp(-spec.b * r)) / r
    else:
        val = -spec.v0 * np.exp(-spec.b * r)
    return _out(val)


def radial_force(spec, r):
    """``r dV/dr`` at radius ``r > 0``."""
    r = _check_r(r)
    if spec.is_hellmann:
        br = spec.b * r
        val = (spec.kappa + spec.upsilon * np.exp(-br) * (1.0 + br)) / r
    else:
        br = spec.b * r
        val = spec.v0 * br * np.exp(-br)
    return _out(val)


def category(kappa, upsilon):
    """Label of the sign relation between the two couplings."""
    if abs(upsilon - kappa) <= _EQ_TOL:
        return "upsilon=kappa"
    if abs(upsilon + kappa) <= _EQ_TOL:
        return "upsilon=-kappa"
    if upsilon > kappa:
        return "upsilon>kappa"
    if abs(upsilon) <= _EQ_TOL:
        return "upsilon=0"
    if upsilon > 0:
        return "0<upsilon<kappa"
    if upsilon > -kappa:
        return "-kappa<upsilon<0"
    return "upsilon<-kappa"


def _origin_strength(spec):
    # the 1/r coefficient at the origin is -(kappa + upsilon)
    s = spec.kappa + spec.upsilon
    return 0.0 if abs(s) <= _EQ_TOL else s


def classify(spec):
    """Category, boundedness, origin behaviour and minimum of a Hellmann potential."""
    if not spec.is_hellmann:
        raise UnsupportedError("classify is defined for Hellmann potentials only")
    s = _origin_strength(spec)
    bounded = s <= 0
    if s > 0:
        origin = ATTRACTIVE_SINGULAR
    elif s == 0:
        origin = FINITE
    else:
        origin = REPULSIVE_SINGULAR
    mini = minimum(spec) if bounded else None
    return PotentialProfile(category(spec.kappa, spec.upsilon), bounded, origin, mini)


def _stationarity(spec, r):
    # zero of r^2 V'(r); increasing in r for upsilon < 0
    br = spec.b * r
    return spec.kappa + spec.upsilon * math.exp(-br) * (1.0 + br)


def minimum(spec, tol=1e-12):
    """Location and value ``(r_star, v_min)`` of the infimum of a bounded-below potential.

    For ``upsilon = -kappa`` the infimum ``-kappa b`` is reached only as
    ``r -> 0`` and ``r_star = 0`` is returned.  For ``kappa = 0`` and
    ``upsilon < 0`` the potential is positive and decays to its infimum 0
    at infinity (``r_star = inf``).
    """
    if not spec.is_hellmann:
        return 0.0, -spec.v0
    s = _origin_strength(spec)
    if s > 0:
        raise DomainError("potential is not bounded below (kappa + upsilon > 0)")
    kappa, b = spec.kappa, spec.b
    if s == 0:
        return 0.0, -kappa * b
    if kappa == 0:
        return math.inf, 0.0

    lo, hi = 1e-8 / b, 50.0 / b
    if _stationarity(spec, hi) < 0:
        hi = 1e3 / b
    f_lo = _stationarity(spec, lo)
    if f_lo > 0 or _stationarity(spec, hi) < 0:
        raise DomainError("stationary point not bracketed")
    # bisection to a narrow bracket, Newton to finish
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _stationarity(spec, mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-6 / b:
            break
    r = 0.5 * (lo + hi)
    for _ in range(50):
        f = _stationarity(spec, r)
        # d/dr [kappa + upsilon e^{-br}(1+br)] = -upsilon b^2 r e^{-br}
        df = -spec.upsilon * b * b * r * math.exp(-b * r)
        step = f / df if df != 0 else math.inf
        r_new = r - step
        if not lo <= r_new <= hi:
            r_new = 0.5 * (lo + hi)
        r = r_new
        if abs(f) < tol and abs(step) < 1e-15 * r or hi - lo <= 1e-15 * hi:
            break
        if _stationarity(spec, r) < 0:
            lo = r
        else:
            hi = r
    return r, -kappa * b / (1.0 + b * r)


def profile_samples(spec, r_min, r_max, n):
    """``n`` logarithmically spaced samples ``(r, V(r))`` on ``[r_min, r_max]``."""
    if not (0 < r_min < r_max) or int(n) != n or n < 2:
        raise DomainError("profile range requires 0 < r_min < r_max and n >= 2")
    r = np.geomspace(r_min, r_max, int(n))
    r[0], r[-1] = r_min, r_max
    return np.column_stack([r, np.asarray(evaluate(spec, r))])
