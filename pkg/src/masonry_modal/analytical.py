"""Closed-form fundamental frequencies of the cracked simply supported beam.

Three permanent-load scenarios are covered:

* ``Case1`` -- axial force with constant eccentricity ``e``;
* ``Case2`` -- uniform transverse load ``p`` plus axial force ``N``;
* ``Case3`` -- imposed sinusoidal deflection of midspan amplitude ``A``.

Each result is reported as a frequency ratio to the uncracked value
``omega_el = pi^2 c / L^2``.  The Case 2 and Case 3 ratios depend only on
``p / p_bar`` and ``A / A_m`` respectively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from scipy import integrate

from .constitutive import AxialState, BeamSpec
from .errors import DomainError, LimitLoadError

# absolute tolerance on ratio**2
RATIO2_TOL = 1e-10


@dataclass(frozen=True)
class Case1:
    e: float


@dataclass(frozen=True)
class Case2:
    p: float
    N: float


@dataclass(frozen=True)
class Case3:
    A: float
    N: float


LoadCase = Union[Case1, Case2, Case3]


@dataclass(frozen=True)
class ModalResult:
    """Fundamental frequency of a loaded beam.

    ``x0`` is the crack-front abscissa (``L/2`` when the beam is uncracked,
    ``nan`` when the notion does not apply).  ``mode_shape`` is only filled
    by the finite-element path.
    """

    omega: float
    f_hz: float
    ratio: float
    x0: float
    mode_shape: Optional[Sequence[float]] = None

    @classmethod
    def from_ratio(cls, ratio: float, spec: BeamSpec, x0: float, mode_shape=None) -> "ModalResult":
        omega = ratio * omega_elastic(spec)
        return cls(omega=omega, f_hz=omega / (2.0 * math.pi), ratio=ratio, x0=x0, mode_shape=mode_shape)


def omega_elastic(spec: BeamSpec) -> float:
    """Fundamental circular frequency of the uncracked beam (rad/s)."""
    return math.pi**2 / spec.L**2 * spec.c


# -- Case 1 ------------------------------------------------------------------


def case1_ratio(e_over_h: float) -> float:
    r = abs(e_over_h)
    if r > 0.5:
        raise DomainError(f"|e|/h = {r!r} exceeds 1/2: resultant outside the section")
    if r <= 1.0 / 6.0:
        return 1.0
    return case1_cracked_ratio(r)


def case1_cracked_ratio(e_over_h: float) -> float:
    """Cracked-branch formula, valid for ``1/6 <= |e|/h <= 1/2``."""
    return 0.75 * math.sqrt(6.0 * (1.0 - 2.0 * abs(e_over_h)) ** 3)


def case1_frequency(e: float, spec: BeamSpec) -> ModalResult:
    """Constant eccentricity: uniform curvature over the whole span.

    The result does not depend on ``N``.  Crack front is ``L/2`` while the
    beam stays elastic and ``0`` once the whole span is cracked.
    """
    ratio = case1_ratio(e / spec.h)
    x0 = spec.L / 2.0 if ratio == 1.0 else 0.0
    return ModalResult.from_ratio(ratio, spec, x0)


# -- Case 2 ------------------------------------------------------------------


def case2_limit_loads(N: float, spec: BeamSpec) -> tuple[float, float]:
    """First-cracking load ``p_bar`` and collapse load ``p_bbar = 3 p_bar``."""
    if not N < 0:
        raise DomainError(f"axial force must be compressive (N < 0), got {N!r}")
    p_bar = 4.0 * abs(N) * spec.h / (3.0 * spec.L**2)
    return p_bar, 3.0 * p_bar


def _case2_check(p: float, N: float, spec: BeamSpec) -> tuple[float, float]:
    p_bar, p_bbar = case2_limit_loads(N, spec)
    if p < 0:
        raise DomainError(f"transverse load must be non-negative, got {p!r}")
    if p > p_bbar:
        raise LimitLoadError(f"load {p!r} N/m exceeds the limit load {p_bbar!r} N/m", x=spec.L / 2.0)
    return p_bar, p_bbar


def case2_x0_over_L(load_ratio: float) -> float:
    """Crack front as a fraction of the span, for ``p / p_bar``."""
    if load_ratio < 1.0:
        return 0.5
    return 0.5 - 0.5 * math.sqrt(max(1.0 - 1.0 / load_ratio, 0.0))


def case2_x0(p: float, N: float, spec: BeamSpec) -> float:
    p_bar, _ = _case2_check(p, N, spec)
    return spec.L * case2_x0_over_L(p / p_bar)


def case2_ratio2(load_ratio: float) -> float:
    """Squared frequency ratio as a function of ``p / p_bar`` alone."""
    if load_ratio > 3.0:
        raise LimitLoadError(f"p / p_bar = {load_ratio!r} exceeds 3")
    if load_ratio <= 1.0:
        return 1.0
    return case2_cracked_ratio2(load_ratio)


def case2_cracked_ratio2(load_ratio: float) -> float:
    """Cracked-branch integral form, valid for ``1 <= p / p_bar <= 3``."""
    y0 = case2_x0_over_L(load_ratio)
    # closed form of 4 * int_0^y0 sin^2(pi y) dy
    elastic = 2.0 * y0 - math.sin(2.0 * math.pi * y0) / math.pi

    def cracked(y):
        return math.sin(math.pi * y) ** 2 * abs(load_ratio * (y - y * y) - 0.75) ** 3

    val, _ = integrate.quad(cracked, y0, 0.5, epsabs=RATIO2_TOL / 64.0, epsrel=0.0, limit=200)
    return elastic + 32.0 * val


def case2_frequency(p: float, N: float, spec: BeamSpec) -> ModalResult:
    """Uniform transverse load; admissible up to and including ``p_bbar``."""
    p_bar, _ = _case2_check(p, N, spec)
    r = p / p_bar
    ratio = math.sqrt(case2_ratio2(r))
    return ModalResult.from_ratio(ratio, spec, spec.L * case2_x0_over_L(r))


# -- Case 3 ------------------------------------------------------------------


def case3_threshold(N: float, spec: BeamSpec) -> float:
    """Amplitude ``A_m = alpha L^2 / pi^2`` at which midspan starts cracking."""
    alpha = AxialState.from_force(N, spec).alpha
    return alpha * spec.L**2 / math.pi**2


def case3_x0_over_L(amp_ratio: float) -> float:
    """Crack front fraction for ``A / A_m``."""
    if amp_ratio <= 1.0:
        return 0.5
    return math.asin(1.0 / amp_ratio) / math.pi


def case3_x0(A: float, N: float, spec: BeamSpec) -> float:
    A_m = case3_threshold(N, spec)
    if A <= 0:
        return spec.L / 2.0
    return spec.L * case3_x0_over_L(A / A_m)


def case3_ratio2(amp_ratio: float) -> float:
    """Squared frequency ratio as a function of ``A / A_m`` alone."""
    if amp_ratio < 0:
        raise DomainError(f"amplitude must be non-negative, got ratio {amp_ratio!r}")
    if amp_ratio <= 1.0:
        return 1.0
    return case3_cracked_ratio2(amp_ratio)


def case3_cracked_ratio2(amp_ratio: float) -> float:
    """Cracked-branch form, valid for ``A / A_m >= 1``."""
    if math.isinf(amp_ratio):
        return 0.0
    s = 1.0 / amp_ratio  # A_m / A
    y0 = math.asin(min(s, 1.0)) / math.pi
    scale = s**1.5
    val, _ = integrate.quad(
        lambda y: math.sqrt(math.sin(math.pi * y)),
        y0,
        1.0 - y0,
        epsabs=RATIO2_TOL / (4.0 * max(scale, 1e-300)),
        epsrel=0.0,
        limit=200,
    )
    return 2.0 * (y0 - s / math.pi * math.sqrt(max(1.0 - s * s, 0.0)) + scale * val)


def case3_frequency(A: float, N: float, spec: BeamSpec) -> ModalResult:
    if A < 0:
        raise DomainError(f"amplitude must be non-negative, got {A!r}")
    A_m = case3_threshold(N, spec)
    r = A / A_m
    ratio = math.sqrt(case3_ratio2(r))
    return ModalResult.from_ratio(ratio, spec, spec.L * case3_x0_over_L(r))


def frequency(case: LoadCase, spec: BeamSpec) -> ModalResult:
    """Dispatch on the load case type."""
    if isinstance(case, Case1):
        return case1_frequency(case.e, spec)
    if isinstance(case, Case2):
        return case2_frequency(case.p, case.N, spec)
    if isinstance(case, Case3):
        return case3_frequency(case.A, case.N, spec)
    raise TypeError(f"unknown load case {case!r}")

