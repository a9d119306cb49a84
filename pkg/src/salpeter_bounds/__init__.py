"""Two-sided spectral bounds for the spinless Salpeter equation."""

from .basis import RadialState, TrialBasis
from .bounds import BoundsReport, CountReport
from .diagnostics import VirialReport
from .operators import MassConfig
from .potentials import PotentialProfile, PotentialSpec
from .spectra import OptimizationOutcome, SpectralResult

__all__ = [
    "BoundsReport",
    "CountReport",
    "MassConfig",
    "OptimizationOutcome",
    "PotentialProfile",
    "PotentialSpec",
    "RadialState",
    "SpectralResult",
    "TrialBasis",
    "VirialReport",
]

__version__ = "0.1.0"
