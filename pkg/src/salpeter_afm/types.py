"""Domain types: potentials, quantum numbers, and solution records.

All quantities are in natural units (GeV-based, hbar = c = 1): masses and
momenta in GeV, lengths in GeV^-1, couplings of an r**lam term in
GeV**(1+lam).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Q_SOURCES = ("analytic_p2", "analytic_p1", "analytic_pm1", "numeric", "explicit")

CERT_PROPORTIONAL = "proportional"
CERT_CONCAVE = "concave_g"
CERT_NONE = "not_certified"


@dataclass(frozen=True)
class PowerLawPotential:
    """Attractive or confining sum of signed power-law terms.

    Each term ``(alpha, exponent)`` contributes ``sign(exponent) * alpha *
    r**exponent``, so negative exponents give attractive wells (-alpha/r for
    exponent -1) and positive ones give confinement (+alpha*r for exponent
    +1).  With this sign convention V'(r) > 0 for all r > 0 whenever any
    coupling is nonzero.

    Constraints: every alpha >= 0, every exponent > -2 and != 0.
    """

    terms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        cleaned = []
        for term in self.terms:
            alpha, lam = (float(term[0]), float(term[1]))
            if not math.isfinite(alpha) or alpha < 0.0:
                raise ValueError(f"coupling must be finite and >= 0, got {alpha}")
            if not math.isfinite(lam) or lam <= -2.0 or lam == 0.0:
                raise ValueError(f"exponent must be > -2 and nonzero, got {lam}")
            cleaned.append((alpha, lam))
        if not cleaned:
            raise ValueError("potential needs at least one term")
        object.__setattr__(self, "terms", tuple(cleaned))

    @classmethod
    def coulomb(cls, a: float) -> "PowerLawPotential":
        """-a/r."""
        return cls(((a, -1.0),))

    @classmethod
    def linear(cls, b: float) -> "PowerLawPotential":
        """b*r."""
        return cls(((b, 1.0),))

    @classmethod
    def funnel(cls, a: float, b: float) -> "PowerLawPotential":
        """-a/r + b*r."""
        return cls(((a, -1.0), (b, 1.0)))

    def active_terms(self) -> tuple[tuple[float, float], ...]:
        """Terms with a strictly positive coupling."""
        return tuple((a, lam) for a, lam in self.terms if a > 0.0)

    def value(self, r):
        """V(r); accepts scalars or arrays."""
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for a, lam in self.terms:
            out = out + math.copysign(1.0, lam) * a * r**lam
        return out if out.ndim else float(out)

    def derivative(self, r):
        """V'(r) = sum |lam| alpha r**(lam-1); positive for r > 0."""
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for a, lam in self.terms:
            out = out + abs(lam) * a * r ** (lam - 1.0)
        return out if out.ndim else float(out)

    def __call__(self, r):
        return self.value(r)


@dataclass(frozen=True)
class QuantumState:
    """Radial excitation n >= 0 and orbital momentum l >= 0."""

    n: int
    l: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n}")
        if int(self.l) != self.l or self.l < 0:
            raise ValueError(f"l must be a non-negative integer, got {self.l}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "l", int(self.l))


@dataclass(frozen=True)
class GlobalQ:
    """Global quantum number Q > 0 with its provenance.

    ``source`` records how the value was obtained; ``p`` is the auxiliary
    power-law exponent behind it (None when an explicit value was supplied
    without one, in which case no upper-bound certificate can be attached).
    """

    value: float
    source: str
    p: float | None = None

    def __post_init__(self):
        if not (self.value > 0.0) or not math.isfinite(self.value):
            raise ValueError(f"Q must be finite and > 0, got {self.value}")
        if self.source not in Q_SOURCES:
            raise ValueError(f"unknown Q source {self.source!r}")
        object.__setattr__(self, "value", float(self.value))

    @classmethod
    def explicit(cls, value: float, p: float | None = None) -> "GlobalQ":
        return cls(float(value), "explicit", p)

    def describe(self) -> str:
        if self.source == "numeric":
            return f"numeric(p={self.p:g})"
        if self.source == "explicit" and self.p is not None:
            return f"explicit(p={self.p:g})"
        return self.source


@dataclass(frozen=True)
class BoundCertificate:
    """Whether the auxiliary-field mass is a certified upper bound, and why."""

    is_upper_bound: bool
    reason: str  # proportional | concave_g | not_certified


@dataclass(frozen=True)
class AfmSolution:
    """Solved triple (r0, p0, M) with the kinetic einbein values.

    r0 is the mean inter-particle distance (GeV^-1), p0 the mean momentum
    per particle (GeV), nu_i = sqrt(p0^2 + m_i^2), and mass the system mass
    M = nu1 + nu2 + V(r0).
    """

    r0: float
    p0: float
    nu1: float
    nu2: float
    mass: float
    q: GlobalQ
    certified_upper_bound: bool

    def __post_init__(self):
        if not (self.r0 > 0.0 and self.p0 > 0.0):
            raise ValueError("r0 and p0 must be positive")
        if abs(self.p0 * self.r0 - self.q.value) > 1e-10 * self.q.value:
            raise ValueError("p0 * r0 does not reproduce Q")
        if self.nu1 < self.p0 * (1 - 1e-12) or self.nu2 < self.p0 * (1 - 1e-12):
            raise ValueError("kinetic einbeins cannot be below p0")
