"""Independent reference implementations used only by the test suite.

These deliberately share no code with the package: the 3-j oracle works in
exact rational arithmetic, the Bessel oracle is a high-precision power
series, and the harmonics oracle uses explicit low-degree formulas.

The module also keeps the tabulated closed-form variants of the angular
coefficients (dipole_G_closed / quadrupole_G_closed) used as regression
fixtures, together with the cylindrical-Bessel-transform radial values
(cyl_radial_*) that the engine's spherical-Bessel closed forms intentionally
differ from; tests assert that difference explicitly.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np


# ---------------------------------------------------------------------------
# exact-rational Racah 3-j oracle
# ---------------------------------------------------------------------------

def _fact(n: int) -> int:
    return math.factorial(n)


def frac_wigner3j(l1, l2, l3, m1, m2, m3) -> float:
    """Racah single-sum formula evaluated in exact rational arithmetic.

    The value is sign * sqrt(R) * S with R rational and S an exact rational
    alternating sum; only the final square root is floating point.
    """
    if m1 + m2 + m3 != 0:
        return 0.0
    if l3 < abs(l1 - l2) or l3 > l1 + l2:
        return 0.0
    if abs(m1) > l1 or abs(m2) > l2 or abs(m3) > l3:
        return 0.0
    R = Fraction(
        _fact(l1 + l2 - l3) * _fact(l1 - l2 + l3) * _fact(-l1 + l2 + l3)
        * _fact(l1 + m1) * _fact(l1 - m1) * _fact(l2 + m2) * _fact(l2 - m2)
        * _fact(l3 + m3) * _fact(l3 - m3),
        _fact(l1 + l2 + l3 + 1),
    )
    S = Fraction(0)
    kmin = max(0, l2 - l3 - m1, l1 - l3 + m2)
    kmax = min(l1 + l2 - l3, l1 - m1, l2 + m2)
    for k in range(kmin, kmax + 1):
        den = (
            _fact(k) * _fact(l1 + l2 - l3 - k) * _fact(l1 - m1 - k)
            * _fact(l2 + m2 - k) * _fact(l3 - l2 + m1 + k) * _fact(l3 - l1 - m2 + k)
        )
        S += Fraction((-1) ** k, den)
    sign = -1.0 if (l1 - l2 - m3) % 2 else 1.0
    # Fraction -> float is correctly rounded; sqrt adds at most 1/2 ulp
    return sign * math.sqrt(R.numerator / R.denominator) * float(S) * 1.0


# ---------------------------------------------------------------------------
# high-precision Bessel / explicit harmonics oracles
# ---------------------------------------------------------------------------

def bessel_series_oracle(l: int, x: float, dps: int = 40) -> float:
    """j_l(x) from the defining power series summed to working precision."""
    with mpmath.workdps(dps):
        xm = mpmath.mpf(x)
        if xm == 0:
            return 1.0 if l == 0 else 0.0
        pref = xm**l / mpmath.fac2(2 * l + 1)
        total = mpmath.mpf(1)
        term = mpmath.mpf(1)
        j = 0
        while True:
            j += 1
            term *= -(xm * xm / 2) / (j * (2 * l + 2 * j + 1))
            total += term
            if abs(term) < mpmath.mpf(10) ** (-dps) * abs(total) and j > 3:
                break
            if j > 5000:
                raise RuntimeError("series did not converge")
        return float(pref * total)


def explicit_Y(l: int, m: int, theta: float, phi: float) -> complex:
    """Spherical harmonics from explicit formulas, l <= 2 (Condon-Shortley)."""
    c, s = math.cos(theta), math.sin(theta)
    e = complex(math.cos(m * phi), math.sin(m * phi))
    if (l, m) == (0, 0):
        return complex(0.5 / math.sqrt(math.pi))
    if (l, m) == (1, 0):
        return math.sqrt(3 / (4 * math.pi)) * c + 0j
    if (l, abs(m)) == (1, 1):
        mag = math.sqrt(3 / (8 * math.pi)) * s
        return (-mag if m == 1 else mag) * e
    if (l, m) == (2, 0):
        return math.sqrt(5 / (16 * math.pi)) * (3 * c * c - 1) + 0j
    if (l, abs(m)) == (2, 1):
        mag = math.sqrt(15 / (8 * math.pi)) * s * c
        return (-mag if m == 1 else mag) * e
    if (l, abs(m)) == (2, 2):
        return math.sqrt(15 / (32 * math.pi)) * s * s * e
    raise ValueError("explicit_Y defined for l <= 2 only")


def sphere_quadrature(n_theta: int, n_phi: int):
    """Gauss-Legendre x uniform-phi product rule, exact for bandlimited
    integrands up to harmonic degree ~min(2*n_theta-1, n_phi-1)."""
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = np.arccos(x)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    TH = np.repeat(theta, n_phi)
    PH = np.tile(phi, n_theta)
    W = np.repeat(w * (2 * np.pi / n_phi), n_phi)
    return TH, PH, W


# ---------------------------------------------------------------------------
# tabulated closed-form fixtures for the angular coefficients
# ---------------------------------------------------------------------------

def _theta(*conds) -> bool:
    return all(c >= 0 for c in conds)


def dipole_G_closed(s: int, m_pp: int, l: int, m: int, omega: float) -> complex:
    """Closed-form G for the l''=1 kernel (rotational), from the six
    explicit (s, m'') entries; zero outside the tabulated support."""
    ph = 1 - np.exp(1j * omega)
    if s == -1 and m_pp == -1:
        if not _theta(l + m - 2, l - 1):
            return 0j
        return ph * 0.5j * math.sqrt(3 * (l + m - 1) * (l + m) / (2 * math.pi * (4 * l * l - 1)))
    if s == -1 and m_pp == 1:
        if not _theta(l - m - 2, l - 1):
            return 0j
        return ph * -0.5j * np.exp(-1j * omega) * math.sqrt(
            3 * (l - m - 1) * (l - m) / (2 * math.pi * (4 * l * l - 1)))
    if s == 1 and m_pp == -1:
        return ph * 0.5j * math.sqrt(
            3 * (l - m + 1) * (l - m + 2) / (2 * math.pi * (4 * l * (l + 2) + 3)))
    if s == 1 and m_pp == 1:
        return ph * -0.5j * np.exp(-1j * omega) * math.sqrt(
            3 * (l + m + 1) * (l + m + 2) / (2 * math.pi * (4 * l * (l + 2) + 3)))
    return 0j


def _gamma(x: float) -> float:
    return float(mpmath.gamma(x))


def quadrupole_G_closed(s: int, m_pp: int, l: int, m: int, omega: float) -> complex:
    """Closed-form G for the l''=2 kernel (rotational).

    The |s| = 2 entries involve gamma functions of negative half-integer
    argument; two of the tabulated s=+2 denominators are read as
    Gamma(l + 7/2) (the symmetric counterpart of the s=-2 rows), since the
    literal half-integer-minus-l factorial would put a sign-alternating
    factor under a square root.  Tests verify this reading against the
    engine's 3-j construction.
    """
    if m_pp == 0 or s not in (-2, 0, 2):
        return 0j
    sign_out = -1.0 if (l + 1) % 2 else 1.0  # table lists (-1)^(l+1) G
    phase = 1 - np.exp(-1j * omega * m_pp)

    if s == 0:
        if not _theta(l - 1):
            return 0j
        den = 8 * l * (l + 1) - 6
        root = math.sqrt(15 / (2 * math.pi))
        sgn_l = -1.0 if l % 2 else 1.0
        if m_pp == -2:
            if not _theta(l + m - 2):
                return 0j
            val = root * sgn_l / den * math.sqrt((l - m + 1) * (l - m + 2) * (l + m - 1) * (l + m))
        elif m_pp == -1:
            if not _theta(l + m - 1):
                return 0j
            val = root * sgn_l / den * (2 * m - 1) * math.sqrt((l - m + 1) * (l + m))
        elif m_pp == 1:
            if not _theta(l - m - 1):
                return 0j
            val = -root * sgn_l / den * (2 * m + 1) * math.sqrt((l - m) * (l + m + 1))
        else:
            if not _theta(l - m - 2):
                return 0j
            val = root * sgn_l / den * math.sqrt((l - m - 1) * (l - m) * (l + m + 1) * (l + m + 2))
        return sign_out * phase * val

    if s == -2:
        if not _theta(l - 2):
            return 0j
        base = _fact(l) / (l * (2 * l - 1) * (l - 1) * _gamma(l + 1.5) * _fact(2 * l - 4))
        pref = math.sqrt(15) * math.pi**0.25 / _gamma(2.5 - l)
        if m_pp == -2:
            if not _theta(l + m - 4):
                return 0j
            val = 2.0**(l - 6) * pref * math.sqrt(base * _fact(l + m) / _fact(l + m - 4))
        elif m_pp == -1:
            if not _theta(l + m - 3, l - m - 1):
                return 0j
            val = -(2.0**(l - 5)) * pref * math.sqrt(
                base * _fact(l - m) * _fact(l + m) / (_fact(l - m - 1) * _fact(l + m - 3)))
        elif m_pp == 1:
            if not _theta(l - m - 3, l + m - 1):
                return 0j
            val = -(2.0**(l - 5)) * pref * math.sqrt(
                base * _fact(l - m) * _fact(l + m) / (_fact(l - m - 3) * _fact(l + m - 1)))
        else:
            if not _theta(l - m - 4):
                return 0j
            val = 2.0**(l - 6) * pref * math.sqrt(base * _fact(l - m) / _fact(l - m - 4))
        return sign_out * phase * val

    # s == +2
    common = math.sqrt(15) * math.pi**0.25 / _gamma(0.5 - l) * math.sqrt(
        _fact(l) / ((2 * l + 3) * _fact(2 * l) * _gamma(l + 3.5)))
    if m_pp == -2:
        val = 2.0**(l - 4) * common * math.sqrt(
            (l - m + 1) * (l - m + 2) * (l - m + 3) * (l - m + 4))
    elif m_pp == -1:
        val = 2.0**(l - 3) * common * math.sqrt(
            (l - m + 1) * (l - m + 2) * (l - m + 3) * (l + m + 1))
    elif m_pp == 1:
        val = 2.0**(l - 3) * common * math.sqrt(
            (l - m + 1) * (l + m + 1) * (l + m + 2) * (l + m + 3))
    else:
        val = 2.0**(l - 4) * common * math.sqrt(
            (l + m + 1) * (l + m + 2) * (l + m + 3) * (l + m + 4))
    return sign_out * phase * val


# ---------------------------------------------------------------------------
# cylindrical-Bessel-transform radial values (fixtures the engine differs from)
# ---------------------------------------------------------------------------

def cyl_radial_dipole(l: int, s: int) -> float:
    """2 sin(pi s/2) / (pi s (2l+s)): the closed form of the cylindrical
    transform int J_l J_{l+s} x^-1 dx; NOT the spherical-Bessel integral."""
    return 2 * math.sin(math.pi * s / 2) / (math.pi * s * (2 * l + s))


def cyl_radial_dipole_table(l: int, s: int) -> float:
    """Variant actually printed in the tabulated entries: 2/(pi(2l-1)) for
    both s = -1 and s = +1 (the s=+1 row disagrees with cyl_radial_dipole)."""
    return 2 / (math.pi * (2 * l - 1))


def cyl_radial_quadrupole(l: int, s: int) -> float:
    """4 cos(pi s/2) / (pi (1-s^2)(s^2+4ls+4l^2-1)) per unit amplitude*k."""
    return 4 * math.cos(math.pi * s / 2) / (math.pi * (1 - s * s) * (s * s + 4 * l * s + 4 * l * l - 1))
