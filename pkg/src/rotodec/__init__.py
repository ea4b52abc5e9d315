"""Decoherence rates for rotational and translational superpositions.

A numerical engine for collisional decoherence of a rigid body held in a
superposition of orientations (rotations about z) or positions, scattering
a thermal gas through a multipole interaction potential.  Closed-form fast
paths cover the dipole-dipole and quadrupole-quadrupole presets; generic
quadrature and series paths cover user-supplied power-law multipole terms;
an independent brute-force Born oracle validates the series engine.
"""

from .constants import HBAR, K_B, MU_0
from .coefficients import CoeffKey, G_rotational, G_translational, R_closed, R_numeric
from .potential import (
    MultipoleTerm,
    Orientation,
    dipole_dipole_terms,
    make_power_law_term,
    quadrupole_quadrupole_terms,
)
from .rates import (
    Environment,
    RateReport,
    Superposition,
    coherence_decay,
    integrated_sq_amplitude,
    lambda_rotational,
    lambda_translational,
    orientation_averaged_amplitude,
    rate_ratio,
    thermal_moment,
)

__all__ = [
    "HBAR", "K_B", "MU_0",
    "CoeffKey", "G_rotational", "G_translational", "R_closed", "R_numeric",
    "MultipoleTerm", "Orientation", "dipole_dipole_terms",
    "quadrupole_quadrupole_terms", "make_power_law_term",
    "Environment", "Superposition", "RateReport",
    "integrated_sq_amplitude", "orientation_averaged_amplitude",
    "thermal_moment", "lambda_rotational", "lambda_translational",
    "rate_ratio", "coherence_decay",
]

__version__ = "0.1.0"
