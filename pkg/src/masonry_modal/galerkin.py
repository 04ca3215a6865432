"""Single-mode Galerkin estimate of the fundamental frequency.

For a simply supported beam in equilibrium with curvature ``chi_bar(x)``, a
sine trial function reduces the linearized equation of motion to

    omega^2 = (2 pi^4 / L^5) * int_0^L sin^2(pi x / L) f'(chi_bar(x)) dx.

The integrand has a kink wherever ``|chi_bar|`` crosses ``alpha``, so the
integral is split at those abscissae before adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate, optimize

from .constitutive import AxialState, BeamSpec, curvature_from_generalized_moment, tangent_function
from .errors import DomainError, LimitMomentError, MasonryModalError

# quadrature tolerance on omega^2, in units of omega_el^2
OMEGA2_REL_TOL = 1e-10


class EvaluationError(MasonryModalError):
    """Curvature profile produced a non-finite value."""


@dataclass(frozen=True)
class CurvatureProfile:
    """Equilibrium curvature field over ``[0, L]``.

    ``breakpoints`` are abscissae where ``|chi_bar|`` crosses ``alpha``.
    """

    eval: Callable[[float], float]
    L: float
    breakpoints: tuple = ()

    def __post_init__(self):
        bps = tuple(float(x) for x in self.breakpoints)
        if any(b2 < b1 for b1, b2 in zip(bps, bps[1:])):
            raise DomainError("breakpoints must be sorted")
        if any(x < 0 or x > self.L for x in bps):
            raise DomainError("breakpoints must lie within [0, L]")
        object.__setattr__(self, "breakpoints", bps)

    @classmethod
    def constant(cls, chi: float, L: float) -> "CurvatureProfile":
        return cls(eval=lambda x: chi, L=L)


@dataclass(frozen=True)
class GalerkinReduction:
    omega2: float
    samples: tuple  # (x, f'(chi_bar(x))) pairs, diagnostics only

    @property
    def omega(self) -> float:
        return math.sqrt(self.omega2)


def galerkin_frequency(
    profile: CurvatureProfile,
    axial: AxialState,
    spec: BeamSpec,
    tol_scale: float = 1.0,
    n_samples: int = 33,
) -> GalerkinReduction:
    """Squared fundamental frequency for a given equilibrium curvature.

    ``tol_scale`` multiplies the default absolute tolerance
    ``1e-10 * omega_el^2``.
    """
    L, c2, alpha = spec.L, spec.c2, axial.alpha
    k = math.pi / L

    def integrand(x):
        chi = profile.eval(x)
        if not math.isfinite(chi):
            raise EvaluationError(f"non-finite curvature {chi!r} at x = {x!r}")
        return math.sin(k * x) ** 2 * tangent_function(chi, alpha, c2)

    prefactor = 2.0 * math.pi**4 / L**5
    omega_el2 = math.pi**4 * c2 / L**4
    tol = tol_scale * OMEGA2_REL_TOL * omega_el2 / prefactor

    edges = [0.0, *[x for x in profile.breakpoints if 0.0 < x < L], L]
    edges = sorted(set(edges))
    per_piece = tol / max(len(edges) - 1, 1)
    total = 0.0
    for a, b in zip(edges, edges[1:]):
        val, _ = integrate.quad(integrand, a, b, epsabs=per_piece, epsrel=0.0, limit=200)
        total += val

    xs = np.linspace(0.0, L, n_samples)
    samples = tuple((float(x), float(tangent_function(profile.eval(x), alpha, c2))) for x in xs)
    return GalerkinReduction(omega2=max(prefactor * total, 0.0), samples=samples)


def _crossings(g: Callable[[float], float], L: float, n_grid: int, xtol: float, hints: Sequence[float]):
    """Roots of ``g`` on ``[0, L]`` located on a grid and refined by bisection."""
    grid = np.union1d(np.linspace(0.0, L, n_grid), np.clip(np.asarray(hints, dtype=float), 0.0, L))
    vals = np.array([g(x) for x in grid])
    roots = []
    for i in range(len(grid) - 1):
        a, b = grid[i], grid[i + 1]
        ga, gb = vals[i], vals[i + 1]
        if ga == 0.0:
            roots.append(a)
        elif ga * gb < 0.0:
            roots.append(optimize.bisect(g, a, b, xtol=xtol, rtol=4 * np.finfo(float).eps))
    if vals[-1] == 0.0:
        roots.append(grid[-1])
    return sorted(set(roots))


def profile_from_moment(
    moment: Callable[[float], float],
    axial: AxialState,
    spec: BeamSpec,
    hints: Sequence[float] = (),
    n_grid: int = 257,
) -> CurvatureProfile:
    """Curvature profile of a statically known bending moment ``M(x)``.

    The moment is checked against the section capacity on the search grid
    (plus any ``hints``); breakpoints are the abscissae where ``|M|`` equals
    the cracking moment, refined by bisection to ``1e-12 L``.

    Raises:
        LimitMomentError: with ``.x`` set to the first abscissa where the
            capacity is reached.
    """
    L = spec.L
    m_limit = axial.limit_moment(spec)
    m_crack = spec.mass_per_length * spec.c2 * axial.alpha
    grid = np.union1d(np.linspace(0.0, L, n_grid), np.asarray(hints, dtype=float))
    for x in grid:
        if abs(moment(x)) >= m_limit:
            raise LimitMomentError(f"moment reaches the limit |N|h/2 at x = {x!r}", x=float(x))

    breakpoints = _crossings(lambda x: abs(moment(x)) - m_crack, L, n_grid, 1e-12 * L, hints)
    rbh = spec.mass_per_length

    def chi(x):
        return curvature_from_generalized_moment(moment(x) / rbh, axial, spec)

    return CurvatureProfile(eval=chi, L=L, breakpoints=tuple(breakpoints))


def sine_profile(A: float, axial: AxialState, spec: BeamSpec) -> CurvatureProfile:
    """Curvature of the imposed deflection ``A sin(pi x / L)``."""
    L = spec.L
    amp = A * math.pi**2 / L**2
    bps: tuple = ()
    if amp > axial.alpha:
        x0 = L / math.pi * math.asin(axial.alpha / amp)
        bps = (x0, L - x0)
    return CurvatureProfile(eval=lambda x: amp * math.sin(math.pi * x / L), L=L, breakpoints=bps)


def ratio_from_reduction(red: GalerkinReduction, spec: BeamSpec) -> float:
    return math.sqrt(red.omega2 * spec.L**4 / (math.pi**4 * spec.c2))


def case_profile(kind: str, value: float, axial: AxialState, spec: BeamSpec, hint: Optional[float] = None):
    """Curvature profile for one of the three standard load cases.

    ``kind`` is ``"e"`` (eccentricity), ``"p"`` (uniform load) or ``"A"``
    (imposed amplitude).
    """
    L = spec.L
    if kind == "e":
        M0 = axial.N * value
        return profile_from_moment(lambda x: M0, axial, spec)
    if kind == "p":
        hints = () if hint is None else (hint, L - hint)
        return profile_from_moment(lambda x: value * x * (L - x) / 2.0, axial, spec, hints=hints)
    if kind == "A":
        return sine_profile(value, axial, spec)
    raise ValueError(f"unknown case kind {kind!r}")
