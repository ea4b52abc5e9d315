"""Multipole decomposition of interaction potentials.

A potential is a finite list of terms  V(r) = sum d(r) Y_l'',m''(r_hat)
with power-law radial parts d(r) = amplitude / r**p and an optional hard
short-range cutoff.  The dipole-dipole and quadrupole-quadrupole presets
carry one fixed orientation (system side for dipole, environment side for
quadrupole); averaging over that orientation is an explicit downstream
operation, never performed at construction.

All types are immutable and freely shareable across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import MU_0
from .specfun import spherical_harmonic

__all__ = [
    "MultipoleTerm",
    "Orientation",
    "make_power_law_term",
    "dipole_dipole_terms",
    "quadrupole_quadrupole_terms",
]


@dataclass(frozen=True)
class Orientation:
    """Unit vector on the sphere (theta in [0, pi], phi in [0, 2 pi))."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta={self.theta} outside [0, pi]")
        if not 0.0 <= self.phi < 2 * np.pi:
            raise ValueError(f"phi={self.phi} outside [0, 2 pi)")


@dataclass(frozen=True)
class MultipoleTerm:
    """One (l'', m'') component with radial part amplitude / r**radial_exponent.

    amplitude is in SI units consistent with d(r) in joules once divided by
    r**radial_exponent (J m^p).  cutoff is a hard lower integration limit in
    meters; 0 means none, in which case the exponent must leave every
    radial overlap integral that the selection rules admit convergent at
    small r (l + l' >= l'' and convergence needs l + l' > p - 3, so the
    requirement is l'' > p - 3).
    """

    l_pp: int
    m_pp: int
    amplitude: complex
    radial_exponent: float
    cutoff: float = 0.0

    def __post_init__(self):
        if self.l_pp < 0:
            raise ValueError(f"negative multipole degree l''={self.l_pp}")
        if abs(self.m_pp) > self.l_pp:
            raise ValueError(f"|m''|={abs(self.m_pp)} exceeds l''={self.l_pp}")
        if not self.radial_exponent > 1.0:
            raise ValueError(
                f"radial exponent p={self.radial_exponent} must exceed 1 "
                "(large-r convergence of the radial overlap)")
        if self.cutoff < 0.0:
            raise ValueError(f"negative cutoff {self.cutoff}")
        if self.cutoff == 0.0 and not self.l_pp > self.radial_exponent - 3.0:
            raise ValueError(
                f"cutoff-free term with p={self.radial_exponent} and "
                f"l''={self.l_pp} has divergent small-r overlap integrals; "
                "supply a positive cutoff")


def make_power_law_term(l_pp: int, m_pp: int, amplitude: complex,
                        radial_exponent: float, cutoff: float = 0.0) -> MultipoleTerm:
    """Validated general power-law multipole term.

    l'' = 0 terms are accepted; they contribute exactly zero rotational
    rate (monopole components are rotation-invariant) but do contribute
    translationally.
    """
    return MultipoleTerm(l_pp, m_pp, complex(amplitude), float(radial_exponent),
                         float(cutoff))


# coefficients of the two-point kernels in the frame where z is the
# intermolecular axis
_DIPOLE_A = {-1: 1.0, 0: -2.0, 1: 1.0}
_QUADRUPOLE_A = {-2: 1.0, -1: -4.0, 0: 6.0, 1: -4.0, 2: 1.0}


def dipole_dipole_terms(gamma1: float, gamma2: float,
                        partner_orientation: Orientation) -> list[MultipoleTerm]:
    """Magnetic dipole-dipole interaction as three l''=1 terms, p=3.

    gamma1, gamma2 are the dipole moduli (A m^2); the fixed orientation is
    the system side, entering through conj(Y_1,m'').  Amplitudes are
    (-1)^(m''+1) (mu_0 / 4 pi) a_m'' gamma1 gamma2 conj(Y_1,m'') with
    a_+-1 = 1, a_0 = -2; the orientation average is an explicit separate
    step (see rates.orientation_averaged_amplitude).
    """
    if gamma1 <= 0 or gamma2 <= 0:
        raise ValueError("dipole moments must be positive")
    th, ph = partner_orientation.theta, partner_orientation.phi
    terms = []
    for m_pp in (-1, 0, 1):
        amp = ((-1) ** (m_pp + 1) * MU_0 / (4 * np.pi) * _DIPOLE_A[m_pp]
               * gamma1 * gamma2 * np.conj(spherical_harmonic(1, m_pp, th, ph)))
        terms.append(MultipoleTerm(1, m_pp, complex(amp), 3.0, 0.0))
    return terms


def quadrupole_quadrupole_terms(mu1: float, mu2: float,
                                partner_orientation: Orientation) -> list[MultipoleTerm]:
    """Softened quadrupole-quadrupole interaction as five l''=2 terms, p=4.

    mu1, mu2 are quadrupole strengths with mu1*mu2 in J m^4.  The fixed
    orientation is the environment side: amplitudes are
    4 pi mu1 mu2 a_m'' conj(Y_2,m'') with a_+-2 = 1, a_+-1 = -4, a_0 = 6.
    The physical 1/r^5 kernel is supported only through
    make_power_law_term with a positive cutoff.
    """
    if mu1 <= 0 or mu2 <= 0:
        raise ValueError("quadrupole strengths must be positive")
    th, ph = partner_orientation.theta, partner_orientation.phi
    terms = []
    for m_pp in (-2, -1, 0, 1, 2):
        amp = (4 * np.pi * mu1 * mu2 * _QUADRUPOLE_A[m_pp]
               * np.conj(spherical_harmonic(2, m_pp, th, ph)))
        terms.append(MultipoleTerm(2, m_pp, complex(amp), 4.0, 0.0))
    return terms
