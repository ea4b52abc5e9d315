"""Angular and radial coefficients of the partial-wave amplitude difference.

The scattering-amplitude difference for a superposition of two orientations
separated by a z-rotation omega expands as

    delta_f = -(8 pi m_gas / hbar^2) * sum R(l,l',l'',m''; k)
              * conj(Y_l,m(khat)) Y_l',m'(phat) * G(l,m,l',m',l'',m''; omega)

G couples two Wigner 3-j symbols with the superposition phase factor
(1 - exp(i omega (m - m'))); R is the radial overlap of two spherical
Bessel functions against the potential's radial profile.  The translational
variant of G simply drops the phase factor.

Closed forms for R cover the power-law presets (exponent 3 with l''=1 and
exponent 4 with l''=2, no cutoff); `R_numeric` integrates any valid term by
adaptive panel quadrature in the scaled variable x = k r plus an exact
asymptotic tail, so its tolerance is uniform in k.

Everything is pure; the scaled radial integrals are memoized in an
lru_cache, which is safe for concurrent readers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceViolationError, ToleranceNotReachedError
from .potential import MultipoleTerm
from .specfun import log_factorial, spherical_bessel_j, spherical_harmonic, wigner3j, wigner3j_000

__all__ = [
    "CoeffKey",
    "G_rotational",
    "G_translational",
    "R_closed",
    "R_numeric",
    "radial_coefficient",
    "allowed_offsets",
    "coefficient_rows",
    "delta_f_series",
]


@dataclass(frozen=True)
class CoeffKey:
    """Index tuple (l, m, l', m', l'', m'') of one coefficient."""

    l: int
    m: int
    l_p: int
    m_p: int
    l_pp: int
    m_pp: int

    def __post_init__(self):
        for l, m, tag in ((self.l, self.m, "l"), (self.l_p, self.m_p, "l'"),
                          (self.l_pp, self.m_pp, "l''")):
            if l < 0:
                raise ValueError(f"negative {tag}={l}")
            if abs(m) > l:
                raise ValueError(f"|m| exceeds {tag}={l}")


def G_translational(key: CoeffKey) -> complex:
    """Angular coefficient without the superposition phase factor.

    Unlike the rotational variant this does not vanish for monopole
    (l''=0) components, which is why translational decoherence survives
    spherically symmetric interactions.
    """
    l, m, lp, mp, lpp, mpp = key.l, key.m, key.l_p, key.m_p, key.l_pp, key.m_pp
    if mp != m + mpp:
        return 0j
    if not abs(l - lp) <= lpp <= l + lp:
        return 0j
    tj0 = wigner3j_000(l, lp, lpp)
    if tj0 == 0.0:
        return 0j
    tj = wigner3j(l, lp, lpp, m, -mp, mpp)
    if tj == 0.0:
        return 0j
    pref = (-1.0) ** mp * 1j ** ((lp - l) % 4)
    norm = np.sqrt((2 * l + 1) * (2 * lp + 1) * (2 * lpp + 1) / (4 * np.pi))
    return pref * norm * tj * tj0


def G_rotational(key: CoeffKey, omega: float) -> complex:
    """Full angular coefficient including (1 - exp(i omega (m - m'))).

    Exactly zero whenever m' != m + m'', the triangle rule fails, or
    m = m' (in particular for every l''=0 component and at omega = 0).
    """
    if key.m_p == key.m:
        return 0j
    base = G_translational(key)
    if base == 0j:
        return 0j
    return (1 - np.exp(1j * omega * (key.m - key.m_p))) * base


def allowed_offsets(l_pp: int) -> tuple[int, ...]:
    """Offsets s = l' - l with nonvanishing parity 3-j; |s| <= l'', s + l'' even."""
    return tuple(s for s in range(-l_pp, l_pp + 1) if (s + l_pp) % 2 == 0)


# ---------------------------------------------------------------------------
# closed-form radial coefficients (Weber-Schafheitlin values of Eq. of R)
# ---------------------------------------------------------------------------

def R_closed(l: int, s: int, l_pp: int, amplitude: complex, k: float) -> complex:
    """Closed-form radial overlap for the power-law presets.

    Dipole kernel (l''=1, d(r) = amplitude/r^3):
        R = amplitude * (pi/2) / ((2l+s)(2l+s+2)),   s = +-1, k-independent.
    Quadrupole kernel (l''=2, d(r) = amplitude/r^4), L = 2l+s:
        R = amplitude * k * pi   / ((L-1)(L+1)(L+3))   for s = 0,
        R = amplitude * k * pi/2 / ((L-1)(L+1)(L+3))   for s = +-2,
    both linear in k.  Odd s with l''=2 (and s=0 with l''=1) returns 0:
    those indices never contribute because the parity 3-j vanishes.

    These are the Weber-Schafheitlin evaluations of the defining integral
    int_0^inf dr r^2 j_l(kr) j_{l+s}(kr) d(r); `R_numeric` agrees with them
    to quadrature accuracy.
    """
    if l < 0:
        raise ValueError(f"negative l={l}")
    if l_pp == 1:
        if s not in (-1, 0, 1):
            raise ValueError(f"dipole kernel needs |s| <= 1, got s={s}")
        if s == 0:
            return 0j
        if not 2 * l + s > 0:
            raise ConvergenceViolationError(
                f"radial integral diverges for l={l}, s={s} (needs 2l+s > 0)")
        L = 2 * l + s
        return complex(amplitude) * (np.pi / 2) / (L * (L + 2))
    if l_pp == 2:
        if s not in (-2, -1, 0, 1, 2):
            raise ValueError(f"quadrupole kernel needs |s| <= 2, got s={s}")
        if s % 2 != 0:
            return 0j
        if not 2 * l + s > 1:
            raise ConvergenceViolationError(
                f"radial integral diverges for l={l}, s={s} (needs 2l+s > 1)")
        L = 2 * l + s
        c = np.pi if s == 0 else np.pi / 2
        return complex(amplitude) * k * c / ((L - 1) * (L + 1) * (L + 3))
    raise ValueError(f"closed forms cover l'' in {{1, 2}}, got {l_pp}")


# ---------------------------------------------------------------------------
# numeric radial coefficients
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _asym_log_coeffs(l: int) -> tuple[float, ...]:
    """ln a_k of the exact trigonometric representation
    j_l(x) = (1/x) [A_l sin(x - l pi/2) + B_l cos(x - l pi/2)],
    A_l = sum_{k even} (-1)^(k/2) a_k x^-k, B_l = sum_{k odd} (-1)^((k-1)/2) a_k x^-k,
    a_k = (l+k)! / (2^k k! (l-k)!)."""
    return tuple(
        log_factorial(l + k) - k * np.log(2.0) - log_factorial(k) - log_factorial(l - k)
        for k in range(l + 1)
    )


def _osc_integral_scaled(n: float, X: float) -> complex:
    """X^n * int_X^inf exp(2ix) x^-n dx by integration by parts.

    The asymptotic series converges geometrically for X > n/2 (ratio
    (n+j)/(2X)); terms are truncated at 1e-18 of the leading one.
    """
    total = 0j
    coef = 1.0 + 0j
    pref = -np.exp(2j * X) / 2j
    for j in range(80):
        term = pref * coef
        total += term
        if abs(coef) < 1e-18:
            return total
        coef *= (n + j) / (2j * X)
    raise ToleranceNotReachedError(
        f"oscillatory tail series did not converge (n={n}, X={X})",
        value=total, estimate=abs(coef))


def _tail_integral(l: int, lp: int, p: float, X: float) -> float:
    """Exact tail int_X^inf j_l j_lp x^(2-p) dx via the trig representation.

    All (k, k') products are evaluated in log-scaled form so the factorially
    large coefficients never overflow; accuracy is a few ulps of the tail.
    """
    la = _asym_log_coeffs(l)
    lb = _asym_log_coeffs(lp)
    s_off = lp - l
    cos_s = np.cos(np.pi * s_off / 2)
    sin_s = np.sin(np.pi * s_off / 2)
    phase2 = np.exp(-1j * (l + lp) * np.pi / 2)  # e^{-i (l+l') pi/2}
    ln_x = np.log(X)

    osc: dict[int, complex] = {}  # scaled I_n keyed by k + k'
    total = 0.0
    for k in range(l + 1):
        k_even = k % 2 == 0
        sa = (-1.0) ** (k // 2) if k_even else (-1.0) ** ((k - 1) // 2)
        for kp in range(lp + 1):
            kp_even = kp % 2 == 0
            sb = (-1.0) ** (kp // 2) if kp_even else (-1.0) ** ((kp - 1) // 2)
            n = p + k + kp
            # w = a_k a_k' X^-(k+k'), bounded because X > l(l+1)/2
            w = sa * sb * np.exp(la[k] + lb[kp] - (k + kp) * ln_x)
            if w == 0.0:
                continue
            kk = k + kp
            if kk not in osc:
                osc[kk] = _osc_integral_scaled(n, X)
            osc_term = phase2 * osc[kk] * X ** (-p)  # = e^{-i Phi} I_n X^{k+k'}
            smooth = X ** (1 - p) / (n - 1)          # = S_n X^{k+k'}
            if k_even and kp_even:        # A A', sin sin'
                total += w * 0.5 * (cos_s * smooth - osc_term.real)
            elif k_even and not kp_even:  # A B', sin cos'
                total += w * 0.5 * (sin_s * smooth + osc_term.imag)
            elif not k_even and kp_even:  # B A', cos sin'
                total += w * 0.5 * (-sin_s * smooth + osc_term.imag)
            else:                         # B B', cos cos'
                total += w * 0.5 * (cos_s * smooth + osc_term.real)
    return total


def _integrand(l: int, lp: int, p: float, xs):
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = spherical_bessel_j(l, xs) * spherical_bessel_j(lp, xs) * xs ** (2 - p)
    return np.where(np.isfinite(vals), vals, 0.0)


def _panel_quadrature(l: int, lp: int, p: float, x_lo: float, X: float,
                      nodes_per_panel: int) -> float:
    """Gauss-Legendre panel quadrature of j_l j_lp x^(2-p) on [x_lo, X]."""
    gl_x, gl_w = np.polynomial.legendre.leggauss(nodes_per_panel)
    total = 0.0
    start = x_lo
    beta = l + lp + 2 - p  # small-x power of the integrand
    if x_lo == 0.0 and abs(beta - round(beta)) > 1e-12:
        # open the first panel with x = u^3 so the endpoint power is mild
        h = min(np.pi, X)
        u_hi = h ** (1.0 / 3.0)
        us = u_hi / 2 + u_hi / 2 * gl_x
        ws = u_hi / 2 * gl_w
        xs = us**3
        total += float(np.sum(ws * 3 * us**2 * _integrand(l, lp, p, xs)))
        start = h
    edges = [start]
    x = start
    while x < X:
        x = min(x + np.pi, X)
        edges.append(x)
    edges = np.asarray(edges)
    a, b = edges[:-1], edges[1:]
    mid, half = (a + b) / 2, (b - a) / 2
    xs = (mid[:, None] + half[:, None] * gl_x[None, :]).ravel()
    ws = (half[:, None] * gl_w[None, :]).ravel()
    total += float(np.sum(ws * _integrand(l, lp, p, xs)))
    return total


@lru_cache(maxsize=4096)
def _scaled_radial_integral(l: int, lp: int, p: float, x_lo: float,
                            rel_tol: float) -> float:
    """int_{x_lo}^inf j_l(x) j_lp(x) x^(2-p) dx with certified tolerance.

    Thread-safe memoized pure function; for cutoff-free terms x_lo = 0 and
    the value is reused across every k.
    """
    if p <= 1.0:
        raise ConvergenceViolationError(f"radial exponent p={p} needs p > 1")
    if x_lo == 0.0 and not l + lp > p - 3:
        raise ConvergenceViolationError(
            f"radial integral diverges at small r for l={l}, l'={lp}, p={p} "
            "(needs l + l' > p - 3 without a cutoff)")
    lmax = max(l, lp)
    X = max(40.0, 0.7 * lmax * (lmax + 1), 2.0 * (p + l + lp), x_lo + 10.0)
    val = None
    for nodes in (12, 18):
        new = _panel_quadrature(l, lp, p, x_lo, X, nodes) + _tail_integral(l, lp, p, X)
        if val is not None:
            err = abs(new - val) / max(abs(new), 1e-300)
            if err <= rel_tol:
                return new
        val = new
    # one more refinement with a larger cut before giving up
    new = (_panel_quadrature(l, lp, p, x_lo, 1.5 * X, 24)
           + _tail_integral(l, lp, p, 1.5 * X))
    err = abs(new - val) / max(abs(new), 1e-300)
    if err > rel_tol:
        raise ToleranceNotReachedError(
            f"radial quadrature reached {err:.2e} (tol {rel_tol:.2e}) "
            f"for l={l}, l'={lp}, p={p}", value=new, estimate=err)
    return new


def R_numeric(l: int, l_p: int, term: MultipoleTerm, k: float,
              rel_tol: float = 1e-10) -> complex:
    """Radial overlap int_{r_min}^inf dr r^2 j_l(kr) j_l'(kr) d(r) by
    adaptive quadrature in x = kr plus an exact asymptotic tail.

    Raises ConvergenceViolationError when the small-r behaviour diverges
    (cutoff-free and l + l' <= p - 3) and ToleranceNotReachedError (carrying
    the achieved estimate) when the certified error exceeds rel_tol.
    """
    if l < 0 or l_p < 0:
        raise ValueError("negative angular momentum")
    if k <= 0:
        raise ValueError(f"wavenumber k={k} must be positive")
    p = term.radial_exponent
    x_lo = k * term.cutoff
    base = _scaled_radial_integral(l, l_p, float(p), float(x_lo), float(rel_tol))
    return term.amplitude * k ** (p - 3.0) * base


def _closed_form_applicable(term: MultipoleTerm, l: int, l_p: int) -> bool:
    if term.cutoff != 0.0:
        return False
    s = l_p - l
    if term.l_pp == 1 and term.radial_exponent == 3.0 and s in (-1, 1):
        return True
    if term.l_pp == 2 and term.radial_exponent == 4.0 and s in (-2, 0, 2):
        return True
    return False


def radial_coefficient(term: MultipoleTerm, l: int, l_p: int, k: float,
                       rel_tol: float = 1e-10) -> complex:
    """R for one term and one (l, l') pair: closed form when available,
    adaptive quadrature otherwise."""
    if _closed_form_applicable(term, l, l_p):
        return R_closed(l, l_p - l, term.l_pp, term.amplitude, k)
    return R_numeric(l, l_p, term, k, rel_tol)


# ---------------------------------------------------------------------------
# assembled views used by the CLI dump and the oracle cross-checks
# ---------------------------------------------------------------------------

def group_terms(terms) -> dict[tuple[int, int], list[MultipoleTerm]]:
    """Group terms by (l'', m''); same-index terms add coherently in R."""
    groups: dict[tuple[int, int], list[MultipoleTerm]] = {}
    for t in terms:
        groups.setdefault((t.l_pp, t.m_pp), []).append(t)
    return groups


def coefficient_rows(terms, omega: float, k: float, l_max: int,
                     kind: str = "rotational", rel_tol: float = 1e-10):
    """Yield (CoeffKey, G, R) for every nonvanishing-G key with l <= l_max.

    kind selects the rotational G (with the superposition phase at `omega`)
    or the translational variant.  Rows are emitted in deterministic
    lexicographic order of (l, m, s, l'', m'').
    """
    if kind not in ("rotational", "translational"):
        raise ValueError(f"unknown kind {kind!r}")
    groups = group_terms(terms)
    for l in range(l_max + 1):
        for m in range(-l, l + 1):
            for (l_pp, m_pp) in sorted(groups):
                for s in allowed_offsets(l_pp):
                    lp = l + s
                    mp = m + m_pp
                    if lp < 0 or abs(mp) > lp:
                        continue
                    key = CoeffKey(l, m, lp, mp, l_pp, m_pp)
                    g = (G_rotational(key, omega) if kind == "rotational"
                         else G_translational(key))
                    if g == 0j:
                        continue
                    r = sum(radial_coefficient(t, l, lp, k, rel_tol)
                            for t in groups[(l_pp, m_pp)])
                    yield key, g, r


def delta_f_series(terms, k: float, khat, phat, omega: float, l_max: int,
                   m_gas: float, rel_tol: float = 1e-10) -> complex:
    """Truncated partial-wave evaluation of the amplitude difference at
    explicit directions (khat, phat are Orientation-like with .theta/.phi).

    Used for cross-validation against the direct Born oracle; the squared
    integrated version in `rates` collapses the m sums analytically instead.
    """
    from .constants import HBAR

    total = 0j
    for key, g, r in coefficient_rows(terms, omega, k, l_max, "rotational", rel_tol):
        yk = np.conj(spherical_harmonic(key.l, key.m, khat.theta, khat.phi))
        yp = spherical_harmonic(key.l_p, key.m_p, phat.theta, phat.phi)
        total += r * g * yk * yp
    return -8 * np.pi * m_gas / HBAR**2 * total
