"""Auxiliary-field upper bounds for the two-body spinless Salpeter equation.

The semirelativistic eigenvalue problem with kinetic terms
sqrt(p^2 + m1^2) + sqrt(p^2 + m2^2) and a power-law potential reduces, after
extremizing over the auxiliary (einbein) fields, to a single transcendental
equation for the mean radius r0:

    p0^2/nu1 + p0^2/nu2 = r0 V'(r0),   p0 = Q/r0,  nu_i = sqrt(p0^2 + m_i^2),

after which the mass is M = nu1 + nu2 + V(r0).  The auxiliary potential
sign(p) r^p enters only through the global quantum number Q.  When the real
potential is a concave function of the auxiliary one, M is a certified upper
bound on the true eigenvalue.

This module solves that system generically, provides the closed forms for
the Coulomb (-a/r) and linear (b*r) potentials with one massless particle,
their symmetric-kinetic (sigma-fold) counterparts, and the ultra- and
nonrelativistic expansions of the linear solution.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from . import oracle
from .airy import airy_ai_zeros
from .errors import CollapseDetected, DomainError, NoBoundState, UnsupportedCase
from .types import (
    CERT_CONCAVE,
    CERT_NONE,
    CERT_PROPORTIONAL,
    AfmSolution,
    BoundCertificate,
    GlobalQ,
    PowerLawPotential,
    QuantumState,
)

__all__ = [
    "q_exact",
    "q_numeric",
    "solve_afm",
    "massless_transcendental",
    "concavity_certificate",
    "coulomb_closed",
    "coulomb_symmetric",
    "linear_closed",
    "linear_symmetric_massless",
    "linear_ur_expansion",
    "linear_nr_expansion",
    "rotation_radii",
    "residuals",
]

# Below m/M0 ~ 1e-4 the closed linear-potential mass switches to its small-mass
# expansion; the next neglected term is O((m/M0)^6).
_LINEAR_SERIES_CUTOVER = 1e-4


# ---------------------------------------------------------------------------
# global quantum numbers


def q_exact(p: float, state: QuantumState) -> GlobalQ:
    """Analytic global quantum number for p in {2, 1, -1}.

    Q(2) = 2n + l + 3/2, Q(-1) = n + l + 1, and for p = 1 (s-waves only)
    Q(1) = 2*(-a_n/3)**(3/2) with a_n the (n+1)-th zero of Ai.  Note the 3/2
    power: it is forced by the eigenvalue parameterization that defines Q,
    as the linear-potential spectrum is -a_n (rho^2/2mu)^(1/3).
    """
    if p == 2:
        return GlobalQ(2.0 * state.n + state.l + 1.5, "analytic_p2", 2.0)
    if p == -1:
        return GlobalQ(float(state.n + state.l + 1), "analytic_pm1", -1.0)
    if p == 1:
        if state.l != 0:
            raise UnsupportedCase("p = 1 has analytic Q only for l = 0; use q_numeric")
        a_n = airy_ai_zeros(state.n + 1)[state.n]
        return GlobalQ(2.0 * (-a_n / 3.0) ** 1.5, "analytic_p1", 1.0)
    raise UnsupportedCase(f"no analytic Q for p = {p:g}; use q_numeric")


def q_numeric(
    p: float,
    state: QuantumState,
    *,
    mu: float = 1.0,
    rho: float = 1.0,
    grid: oracle.SpectralGrid | None = None,
    tol: float = 1e-6,
) -> GlobalQ:
    """Global quantum number from the nonrelativistic oracle, any p > -2.

    Solves p^2/(2 mu) + rho*sign(p)*r^p for the (n, l) level and inverts the
    Q parameterization.  The result is independent of the (mu, rho) chosen;
    ``tol`` is the absolute accuracy requested on Q itself.  Steep-cusp
    s-waves (noninteger p < -1) converge slowly on the uniform grid and may
    need a looser tol to avoid ConvergenceFailure.
    """
    q_seed = 2.0 * state.n + state.l + 1.5 if p > 0 else float(state.n + state.l + 1)
    # dQ/Q = |(p+2)/(2p)| * deps/eps
    eps_tol = max(tol / q_seed * abs(2.0 * p / (p + 2.0)), 1e-9)
    energy, _ = oracle.nr_energy(mu, rho, p, state, grid, tol=eps_tol)
    return oracle.invert_q(energy, mu, rho, p)


def _resolve_q(q: GlobalQ | float) -> GlobalQ:
    if isinstance(q, GlobalQ):
        return q
    return GlobalQ.explicit(float(q))


# ---------------------------------------------------------------------------
# certificates


def concavity_certificate(potential: PowerLawPotential, p: float) -> BoundCertificate:
    """Certify the upper-bound property of the auxiliary exponent p.

    Writing V(x) = g(sign(p) x^p), the mass is an upper bound when g is
    concave.  For a term sign(lam) alpha r^lam this reduces to
    sign(lam) * (lam/p) * (lam/p - 1) <= 0, applied termwise; a sum of
    concave terms is concave, so the test is sufficient but not necessary.
    """
    if p <= -2.0 or p == 0.0:
        raise DomainError("auxiliary exponent must be > -2 and nonzero")
    active = potential.active_terms()
    if not active:
        return BoundCertificate(False, CERT_NONE)
    if all(lam == p for _, lam in active):
        return BoundCertificate(True, CERT_PROPORTIONAL)
    for _, lam in active:
        ratio = lam / p
        if math.copysign(1.0, lam) * ratio * (ratio - 1.0) > 0.0:
            return BoundCertificate(False, CERT_NONE)
    return BoundCertificate(True, CERT_CONCAVE)


def _certified(potential: PowerLawPotential, q: GlobalQ) -> bool:
    if q.p is None:
        return False
    return concavity_certificate(potential, q.p).is_upper_bound


# ---------------------------------------------------------------------------
# the generic solver


def _intrinsic_scale(potential: PowerLawPotential, q_value: float, m1: float, m2: float) -> float:
    """Length scale where the virial balance is expected to close.

    Candidates that would push the twelve-decade scan outside the double
    range are dropped (a vanishingly small mass contributes no usable scale).
    """
    scales = []
    for a, lam in potential.active_terms():
        if lam != -1.0:
            scales.append((q_value / (abs(lam) * a)) ** (1.0 / (lam + 1.0)))
    heaviest = max(m1, m2)
    if heaviest > 0.0 and q_value / heaviest < 1e250:
        scales.append(q_value / heaviest)
    scales = [s for s in scales if math.isfinite(s) and 1e-250 < s < 1e250]
    return max(scales) if scales else 1.0


def _bracket_root(fn, scale: float):
    """Sign change of fn on a log grid spanning 12 decades around scale.

    fn must accept array arguments.  Returns a bracketing pair, or the
    constant sign (+1/-1) when no change exists.
    """
    grid = scale * np.logspace(-6.0, 6.0, 481)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        values = np.asarray(fn(grid))
    signs = np.sign(values)
    flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if len(flips) == 0:
        exact = np.nonzero(signs == 0)[0]
        if len(exact):
            return grid[exact[0]], grid[exact[0]]
        finite = signs[np.isfinite(values)]
        if len(finite) == 0:
            raise DomainError("virial balance is not representable over the scanned range")
        return int(finite[0])
    i = flips[0]
    return grid[i], grid[i + 1]


def _classify_no_root(sign: int, q_value: float):
    if sign > 0:
        # potential overwhelms kinetic pressure at every radius
        raise CollapseDetected(
            f"virial balance has no root: the interaction drives the system to r0 -> 0 at Q={q_value:g}"
        )
    raise NoBoundState(
        f"virial balance has no root: the interaction is too weak to bind at Q={q_value:g}"
    )


def solve_afm(m1: float, m2: float, potential: PowerLawPotential, q: GlobalQ | float) -> AfmSolution:
    """Solve the reduced extremization system for one level.

    Locates the unique radius where the semirelativistic virial balance
    holds (log-grid scan over twelve decades, then Brent refinement to
    machine precision) and assembles the mass.  All three defining relations
    hold to better than 1e-10 relative on the returned solution.

    Raises NoBoundState when the balance stays negative everywhere (no
    binding, e.g. pure Coulomb with Q >= a) and CollapseDetected when it
    stays positive (strong-coupling collapse) or the assembled mass is
    nonpositive.
    """
    if m1 < 0.0 or m2 < 0.0:
        raise ValueError("masses must be non-negative")
    q = _resolve_q(q)
    qv = q.value
    if not potential.active_terms():
        raise DomainError("potential has no active term")

    def balance(r):
        p0 = qv / r
        nu1 = np.hypot(p0, m1)
        nu2 = np.hypot(p0, m2)
        return r**3 * potential.derivative(r) - qv * qv * (1.0 / nu1 + 1.0 / nu2)

    scale = _intrinsic_scale(potential, qv, m1, m2)
    bracket = _bracket_root(balance, scale)
    if isinstance(bracket, int):
        _classify_no_root(bracket, qv)
    lo, hi = bracket
    r0 = lo if lo == hi else brentq(balance, lo, hi, xtol=1e-20 * scale, rtol=1e-15)
    return _assemble(m1, m2, potential, q, r0)


def _assemble(m1, m2, potential, q: GlobalQ, r0: float) -> AfmSolution:
    p0 = q.value / r0
    nu1 = math.hypot(p0, m1)
    nu2 = math.hypot(p0, m2)
    mass = nu1 + nu2 + potential.value(r0)
    if mass <= 0.0:
        raise CollapseDetected(f"solution at r0={r0:g} has nonpositive mass {mass:g}")
    return AfmSolution(r0, p0, nu1, nu2, mass, q, _certified(potential, q))


def massless_transcendental(m: float, potential: PowerLawPotential, q: GlobalQ | float) -> float:
    """Mean radius when one particle is massless and the other has mass m.

    Solves  Q + Q^2/sqrt(Q^2 + m^2 r^2) = sum_i |lam_i| alpha_i r^(lam_i+1)
    for r; agrees with the generic solver's r0 to full precision.
    """
    if m < 0.0:
        raise ValueError("mass must be non-negative")
    q = _resolve_q(q)
    qv = q.value
    if not potential.active_terms():
        raise DomainError("potential has no active term")

    def gap(r):
        pull = sum(abs(lam) * a * r ** (lam + 1.0) for a, lam in potential.terms)
        return pull - qv - qv * qv / np.hypot(qv, m * r)

    scale = _intrinsic_scale(potential, qv, 0.0, m)
    bracket = _bracket_root(gap, scale)
    if isinstance(bracket, int):
        _classify_no_root(bracket, qv)
    lo, hi = bracket
    return lo if lo == hi else brentq(gap, lo, hi, xtol=1e-20 * scale, rtol=1e-15)


# ---------------------------------------------------------------------------
# Coulomb potential, one massless particle


def coulomb_closed(m: float, a: float, q: GlobalQ | float) -> AfmSolution:
    """Closed-form solution for V = -a/r with masses (0, m).

    Exists only inside the window a/2 < Q < a: at Q >= a the binding
    cancels (M -> m, r0 -> infinity), at Q <= a/2 the system collapses
    (M -> 0, r0 -> 0).
    """
    if m <= 0.0:
        raise DomainError("the massive particle must have m > 0 (no scale otherwise)")
    if a <= 0.0:
        raise DomainError("coupling must be positive")
    q = _resolve_q(q)
    qv = q.value
    if qv >= a:
        raise NoBoundState(
            f"no binding: Q >= a cancels the attraction (Q={qv:g}, a={a:g}); need a/2 < Q < a"
        )
    if qv <= a / 2.0:
        raise CollapseDetected(
            f"collapse: Q <= a/2 (Q={qv:g}, a={a:g}); need a/2 < Q < a"
        )
    r0 = (qv / m) * math.sqrt(a * (2.0 * qv - a)) / (a - qv)
    p0 = qv / r0
    nu2 = math.hypot(p0, m)
    x = a / (2.0 * qv)
    mass = 2.0 * m * math.sqrt(x * (1.0 - x))
    potential = PowerLawPotential.coulomb(a)
    return AfmSolution(r0, p0, p0, nu2, mass, q, _certified(potential, q))


def coulomb_symmetric(sigma: float, m: float, a: float, q: GlobalQ | float) -> float:
    """Mass for the sigma-fold symmetric kinetic term with V = -a/r.

    M = sigma * m * sqrt(1 - (a/(sigma Q))^2); requires a < sigma*Q.
    """
    if sigma <= 0.0 or m < 0.0 or a <= 0.0:
        raise DomainError("need sigma > 0, m >= 0, a > 0")
    qv = _resolve_q(q).value
    if a >= sigma * qv:
        raise NoBoundState(f"no bound state: a >= sigma*Q (a={a:g}, sigma*Q={sigma * qv:g})")
    ratio = a / (sigma * qv)
    return sigma * m * math.sqrt(1.0 - ratio * ratio)


# ---------------------------------------------------------------------------
# linear potential, one massless particle


def _linear_mass_scale(b: float, q_value: float) -> float:
    """Mass of the fully massless two-body linear system, 2*sqrt(2 b Q)."""
    return 2.0 * math.sqrt(2.0 * b * q_value)


def _linear_radius(m: float, b: float, q_value: float) -> float:
    # r0^2 = Q/b - Q^2/(2m^2) + Q^(3/2)/(2m^2) sqrt(Q + 4m^2/b), rewritten
    # with the conjugate so every term is positive for all m >= 0
    root = math.sqrt(q_value + 4.0 * m * m / b) + math.sqrt(q_value)
    return math.sqrt(q_value / b + 2.0 * q_value**1.5 / (b * root))


def _linear_mass(m: float, b: float, q_value: float) -> float:
    m0 = _linear_mass_scale(b, q_value)
    if m == 0.0:
        return m0
    x = m / m0
    if x < _LINEAR_SERIES_CUTOVER:
        # small-mass expansion of the closed form; error O(x^6)
        return m0 * (1.0 + 2.0 * x * x - 10.0 * x**4)
    a_plus = math.sqrt(m0 * m0 + 32.0 * m * m) + m0
    a_minus = 32.0 * m * m / a_plus  # conjugate form, no cancellation
    b_plus = math.sqrt(m0 * a_plus + 16.0 * m * m)
    b_minus = math.sqrt(m0 * a_minus + 16.0 * m * m)
    root2 = math.sqrt(2.0)
    return (root2 * m0 * m0 * a_minus + 16.0 * m * m * (2.0 * root2 * m0 + b_plus)) / (
        16.0 * m * b_minus
    )


def linear_closed(m: float, b: float, q: GlobalQ | float) -> AfmSolution:
    """Closed-form solution for V = b*r with masses (0, m), any m >= 0."""
    if b <= 0.0:
        raise DomainError("slope must be positive")
    if m < 0.0:
        raise ValueError("mass must be non-negative")
    q = _resolve_q(q)
    r0 = _linear_radius(m, b, q.value)
    p0 = q.value / r0
    mass = _linear_mass(m, b, q.value)
    potential = PowerLawPotential.linear(b)
    return AfmSolution(r0, p0, p0, math.hypot(p0, m), mass, q, _certified(potential, q))


def linear_symmetric_massless(sigma: float, b: float, q: GlobalQ | float) -> float:
    """Massless mass scale for the sigma-fold symmetric kinetic term: 2*sqrt(sigma b Q)."""
    if sigma <= 0.0 or b <= 0.0:
        raise DomainError("need sigma > 0 and b > 0")
    return 2.0 * math.sqrt(sigma * b * _resolve_q(q).value)


def linear_ur_expansion(m: float, b: float, q: GlobalQ | float) -> float:
    """Ultrarelativistic (m << sqrt(b)) expansion: M0 + 2 m^2/M0."""
    if b <= 0.0:
        raise DomainError("slope must be positive")
    m0 = _linear_mass_scale(b, _resolve_q(q).value)
    return m0 + 2.0 * m * m / m0


def linear_nr_expansion(m: float, b: float, q: GlobalQ | float) -> float:
    """Nonrelativistic (m >> sqrt(b)) expansion: m + M1 + M1^2/(8m), M1 = 2*sqrt(bQ)."""
    if m <= 0.0:
        raise DomainError("the nonrelativistic expansion needs m > 0")
    if b <= 0.0:
        raise DomainError("slope must be positive")
    m1 = 2.0 * math.sqrt(b * _resolve_q(q).value)
    return m + m1 + m1 * m1 / (8.0 * m)


# ---------------------------------------------------------------------------
# diagnostics


def rotation_radii(sol: AfmSolution) -> tuple[float, float]:
    """Split r0 into the two rigid-rotation radii, r_i = r0 * nu_j/(nu1+nu2).

    The heavier particle orbits closer to the center of mass; r1 + r2 = r0.
    """
    total = sol.nu1 + sol.nu2
    return sol.r0 * sol.nu2 / total, sol.r0 * sol.nu1 / total


def residuals(
    sol: AfmSolution,
    m1: float,
    m2: float,
    potential: PowerLawPotential,
    q: GlobalQ | float,
) -> tuple[float, float, float]:
    """Relative residuals of the three defining relations of a solution.

    Returns (mass assembly, p0*r0 = Q, virial balance); each is below 1e-10
    for every solution produced by this module.
    """
    qv = _resolve_q(q).value
    nu1 = math.hypot(sol.p0, m1)
    nu2 = math.hypot(sol.p0, m2)
    res_mass = abs(sol.mass - (nu1 + nu2 + potential.value(sol.r0))) / abs(sol.mass)
    res_q = abs(sol.p0 * sol.r0 - qv) / qv
    pull = sol.r0 * potential.derivative(sol.r0)
    res_virial = abs(sol.p0**2 / nu1 + sol.p0**2 / nu2 - pull) / abs(pull)
    return res_mass, res_q, res_virial
