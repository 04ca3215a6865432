"""Moment-curvature law of a rectangular no-tension section.

The section has zero tensile strength and unlimited compressive strength.
For a compressive axial force ``N`` the bending response is linear until the
resultant leaves the central nucleus (``|e| = h/6``), then softens towards
the limit moment ``|N| h / 2``.

Everything is expressed through the generalized moment ``f = M / (rho b h)``
so that the equation of motion reads ``phi_tt - f(chi)_xx = q``.

Sign convention: ``N < 0`` is compression; the elastic-limit curvature
``alpha`` is stored positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, LimitMomentError

ELASTIC = "elastic"
CRACKED = "cracked"


@dataclass(frozen=True)
class BeamSpec:
    """Geometry and material of a rectangular-section beam (SI units).

    ``J`` and ``c2`` are derived and cannot be passed in.
    """

    L: float
    h: float
    b: float
    E: float
    rho: float
    J: float = field(init=False)
    c2: float = field(init=False)

    def __post_init__(self):
        for name in ("L", "h", "b", "E", "rho"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
        J = self.b * self.h**3 / 12.0
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "c2", self.E * J / (self.rho * self.b * self.h))

    @property
    def c(self) -> float:
        return math.sqrt(self.c2)

    @property
    def mass_per_length(self) -> float:
        """rho * b * h, the factor between f and M."""
        return self.rho * self.b * self.h

    @property
    def EJ(self) -> float:
        return self.E * self.J


def paper_beam() -> BeamSpec:
    """Benchmark beam-column used throughout the validation runs."""
    return BeamSpec(L=6.0, h=0.4, b=1.0, E=3.0e9, rho=1800.0)


def elastic_limit_curvature(N: float, spec: BeamSpec) -> float:
    """Curvature at which cracking starts, ``alpha = -2N / (E b h^2)``."""
    if not N < 0:
        raise DomainError(f"axial force must be compressive (N < 0), got {N!r}")
    return -2.0 * N / (spec.E * spec.b * spec.h**2)


@dataclass(frozen=True)
class AxialState:
    """Axial force and the elastic-limit curvature it induces."""

    N: float
    alpha: float

    @classmethod
    def from_force(cls, N: float, spec: BeamSpec) -> "AxialState":
        return cls(N=float(N), alpha=elastic_limit_curvature(N, spec))

    def limit_moment(self, spec: BeamSpec) -> float:
        """|N| h / 2, the supremum of the bending moment."""
        return abs(self.N) * spec.h / 2.0


@dataclass(frozen=True)
class SectionResponse:
    f: float
    M: float
    fprime: float
    regime: str


def moment_function(chi, alpha: float, c2: float):
    """Vectorized generalized moment ``f(chi)``.

    Works on scalars and arrays; the cracked branch is evaluated only where
    ``|chi| > alpha`` to avoid division by zero at the origin.
    """
    chi = np.asarray(chi, dtype=float)
    achi = np.abs(chi)
    cracked = achi > alpha
    safe = np.where(cracked, achi, alpha)
    soft = c2 * alpha * np.sign(chi) * (3.0 - 2.0 * np.sqrt(alpha / safe))
    out = np.where(cracked, soft, c2 * chi)
    return out if out.ndim else float(out)


def tangent_function(chi, alpha: float, c2: float):
    """Vectorized tangent ``f'(chi)``; equals ``c2`` on the elastic branch."""
    chi = np.asarray(chi, dtype=float)
    achi = np.abs(chi)
    cracked = achi > alpha
    safe = np.where(cracked, achi, alpha)
    out = np.where(cracked, c2 * (alpha / safe) ** 1.5, c2)
    return out if out.ndim else float(out)


def generalized_moment(chi: float, axial: AxialState, spec: BeamSpec) -> SectionResponse:
    """Evaluate the section at curvature ``chi``."""
    f = moment_function(chi, axial.alpha, spec.c2)
    fp = tangent_function(chi, axial.alpha, spec.c2)
    regime = ELASTIC if abs(chi) <= axial.alpha else CRACKED
    return SectionResponse(f=f, M=spec.mass_per_length * f, fprime=fp, regime=regime)


def tangent_modulus(chi: float, axial: AxialState, spec: BeamSpec) -> float:
    return tangent_function(chi, axial.alpha, spec.c2)


def limit_generalized_moment(axial: AxialState, spec: BeamSpec) -> float:
    """``3 alpha c2``, the generalized-moment capacity of the section."""
    return 3.0 * axial.alpha * spec.c2


def curvature_from_generalized_moment(fval: float, axial: AxialState, spec: BeamSpec) -> float:
    """Invert the moment-curvature law.

    Raises:
        LimitMomentError: if ``|fval| >= 3 alpha c2`` (section capacity).
    """
    alpha, c2 = axial.alpha, spec.c2
    af = abs(fval)
    cap = limit_generalized_moment(axial, spec)
    if af >= cap:
        raise LimitMomentError(f"generalized moment {fval!r} reaches the section capacity {cap!r}")
    if af <= c2 * alpha:
        return fval / c2
    return math.copysign(4.0 * alpha**3 * c2**2 / (af - 3.0 * alpha * c2) ** 2, fval)
