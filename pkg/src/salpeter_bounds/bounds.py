"""
Analytic lower bounds on the spectrum and bounds on the number of bound states.

All energies refer to the equal-mass operator
:math:`2\\sqrt{p^2+m^2} + V(r)`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.integrate

from . import potentials
from .errors import DomainError, NotApplicableError, NumericError, UnboundedBelowError

CRITICAL_COUPLING = 4.0 / math.pi
C_MASSIVE = 14.107590867
C_MASSLESS = 6.074898097

HERBST = "herbst"
IMPROVED_COULOMB = "improved-coulomb"
POTENTIAL_MINIMUM = "potential-minimum"
BEST_OF = "best-of"

PAPER = "paper"
BEST = "best"


@dataclass(frozen=True)
class BoundsReport:
    """Outcome of a lower-bound analysis.

    ``lower_bound`` is a bound on the whole spectrum (not a binding
    energy); it is ``None`` exactly when boundedness could not be shown.
    """

    bounded_below: bool
    lower_bound: Optional[float]
    method: Optional[str]
    alpha_eff: float
    mode: str
    mass: float = 1.0

    @property
    def binding_bound(self):
        """Lower bound minus the threshold ``2 m``."""
        return None if self.lower_bound is None else self.lower_bound - 2.0 * self.mass


@dataclass(frozen=True)
class CountReport:
    condition_ok: bool
    failure_reason: Optional[str]
    n_bound: Optional[float]
    c_used: float


def herbst_bound(alpha, m):
    """Lower bound ``2 m sqrt(1 - (pi alpha / 4)^2)`` for the Coulomb problem."""
    if alpha < 0:
        raise DomainError(f"coupling must be >= 0, got {alpha}")
    if alpha > CRITICAL_COUPLING:
        raise UnboundedBelowError(
            f"coupling {alpha} exceeds the critical value 4/pi = {CRITICAL_COUPLING:.6f}"
        )
    x = math.pi * alpha / 4.0
    return 2.0 * m * math.sqrt(max(0.0, 1.0 - x * x))


def improved_coulomb_bound(alpha, m):
    """Lower bound ``2 m sqrt((1 + sqrt(1 - alpha^2)) / 2)`` valid for ``alpha <= 1``."""
    if alpha < 0:
        raise DomainError(f"coupling must be >= 0, got {alpha}")
    if alpha > 1.0:
        raise NotApplicableError(f"improved Coulomb bound requires alpha <= 1, got {alpha}")
    return 2.0 * m * math.sqrt((1.0 + math.sqrt(1.0 - alpha * alpha)) / 2.0)


def coulomb_bound(alpha, m):
    """Best Coulomb-comparison bound for coupling ``alpha`` and its method name."""
    if alpha <= 1.0:
        return improved_coulomb_bound(alpha, m), IMPROVED_COULOMB
    return herbst_bound(alpha, m), HERBST


def _coulomb_candidates(spec, m):
    """Every applicable Coulomb comparison ``V >= -alpha / r``."""
    alphas = {spec.kappa + max(spec.upsilon, 0.0)}
    if spec.upsilon <= 0:
        alphas.add(spec.kappa)
    out = []
    for alpha in sorted(alphas):
        if alpha <= 1.0:
            out.append((herbst_bound(alpha, m), HERBST))
            out.append((improved_coulomb_bound(alpha, m), IMPROVED_COULOMB))
        elif alpha <= CRITICAL_COUPLING:
            out.append((herbst_bound(alpha, m), HERBST))
    return out


def hellmann_lower_bound(spec, m, mode=BEST):
    """Lower bound on the spectrum of a Hellmann Hamiltonian.

    ``mode="paper"`` applies a fixed precedence: the potential minimum
    when ``kappa + upsilon <= 0``, otherwise the improved Coulomb bound,
    otherwise the Herbst bound.  ``mode="best"`` returns the largest of
    all applicable bounds.
    """
    if not spec.is_hellmann:
        raise DomainError("hellmann_lower_bound requires a Hellmann potential")
    if mode not in (PAPER, BEST):
        raise DomainError(f"mode must be 'paper' or 'best', got {mode!r}")
    alpha_eff = spec.kappa + max(spec.upsilon, 0.0)
    bounded_by_minimum = potentials.classify(spec).bounded_below

    if mode == PAPER:
        if bounded_by_minimum:
            _, v_min = potentials.minimum(spec)
            return BoundsReport(True, 2.0 * m + v_min, POTENTIAL_MINIMUM, alpha_eff, mode, m)
        if alpha_eff <= CRITICAL_COUPLING:
            value, method = coulomb_bound(alpha_eff, m)
            return BoundsReport(True, value, method, alpha_eff, mode, m)
        return BoundsReport(False, None, None, alpha_eff, mode, m)

    candidates = _coulomb_candidates(spec, m)
    if bounded_by_minimum:
        _, v_min = potentials.minimum(spec)
        candidates.append((2.0 * m + v_min, POTENTIAL_MINIMUM))
    if not candidates:
        return BoundsReport(False, None, None, alpha_eff, mode, m)
    value, method = max(candidates, key=lambda c: c[0])
    return BoundsReport(True, value, method, alpha_eff, mode, m)


def check_condition_L(spec, m=1.0):
    """Check ``V <= 0`` and ``V`` in both ``L^{3/2}`` and ``L^3``.

    The Hellmann family is analysed in closed form: a ``1/r`` singularity
    at the origin is not cube integrable, and a Coulomb tail is neither
    ``L^{3/2}`` nor ``L^3`` at infinity.  The exponential well satisfies
    every requirement.
    """
    c_used = C_MASSIVE if m > 0 else C_MASSLESS
    if not spec.is_hellmann:
        return CountReport(True, None, None, c_used)
    reasons = []
    # V <= 0 everywhere iff kappa + upsilon exp(-b r) >= 0 for all r
    if spec.upsilon < 0 and spec.kappa + spec.upsilon < 0:
        reasons.append("V > 0 near the origin (condition V <= 0 violated)")
    if spec.kappa > 0:
        reasons.append("Coulomb tail at infinity violates L^{3/2} and L^3")
    if abs(spec.kappa + spec.upsilon) > 1e-12:
        reasons.append("1/r singularity violates L^3 at origin")
    if reasons:
        return CountReport(False, "; ".join(reasons), None, c_used)
    return CountReport(True, None, None, c_used)


def _count_integrand(spec, m):
    def f(r):
        v = abs(potentials.evaluate(spec, r))
        return r * r * (v * (v + 4.0 * m)) ** 1.5
    return f


def count_integral(spec, m, rel_tol=1e-10):
    """The integral ``int r^2 [|V| (|V| + 4 m)]^{3/2} dr``."""
    f = _count_integrand(spec, m)
    cap = 1e3 / spec.b
    grid = np.geomspace(1e-6 / spec.b, cap, 4000)
    vals = np.array([f(r) for r in grid])
    peak = vals.max()
    beyond = np.nonzero(vals >= 1e-16 * peak)[0]
    upper = grid[min(beyond[-1] + 1, grid.size - 1)] if beyond.size else cap
    r_peak = grid[int(np.argmax(vals))]
    total, err = 0.0, 0.0
    for a, b in ((0.0, r_peak), (r_peak, upper)):
        val, e = scipy.integrate.quad(f, a, b, epsabs=0.0, epsrel=rel_tol, limit=500)
        total += val
        err += e
    if not math.isfinite(total) or err > 1e-6 * abs(total):
        raise NumericError(f"counting integral did not converge (estimate {total}, error {err})")
    return total


def count_bound(spec, m):
    """Upper bound on the number of bound states, including multiplicity."""
    report = check_condition_L(spec, m)
    if not report.condition_ok:
        return report
    n = report.c_used / (12.0 * math.pi) * count_integral(spec, m)
    return CountReport(True, None, n, report.c_used)
