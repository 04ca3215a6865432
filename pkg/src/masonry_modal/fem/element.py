"""Two-node Hermite beam element with the no-tension section law.

Local dofs: ``(phi_1, phi_x_1, phi_2, phi_x_2)``.  Curvature is
``chi = -phi_xx``, so the strain-displacement row is ``-Psi''``.
"""

from __future__ import annotations

import numpy as np

from ..constitutive import AxialState, BeamSpec, moment_function, tangent_function
from ..errors import DomainError

# 4-point Gauss-Legendre on [-1, 1]; exact for Psi'' Psi''^T and Psi Psi^T
GAUSS_POINTS, GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(4)


def hermite_basis(xi, le: float):
    """Cubic Hermite shape functions and their second derivatives.

    ``xi`` is the local abscissa in ``[0, le]`` (scalar or array).  Returns
    ``(values, second)`` with a trailing axis of length 4.
    """
    xi = np.asarray(xi, dtype=float)
    tol = 1e-12 * le
    if np.any(xi < -tol) or np.any(xi > le + tol):
        raise DomainError(f"local coordinate outside [0, {le}]")
    s = xi / le
    s2, s3 = s * s, s * s * s
    values = np.stack(
        [
            1.0 - 3.0 * s2 + 2.0 * s3,
            le * (s - 2.0 * s2 + s3),
            3.0 * s2 - 2.0 * s3,
            le * (s3 - s2),
        ],
        axis=-1,
    )
    second = np.stack(
        [
            (12.0 * s - 6.0) / le**2,
            (6.0 * s - 4.0) / le,
            (6.0 - 12.0 * s) / le**2,
            (6.0 * s - 2.0) / le,
        ],
        axis=-1,
    )
    return values, second


def hermite_slope(xi, le: float):
    """First derivatives of the shape functions."""
    s = np.asarray(xi, dtype=float) / le
    return np.stack(
        [
            (6.0 * s * s - 6.0 * s) / le,
            1.0 - 4.0 * s + 3.0 * s * s,
            (6.0 * s - 6.0 * s * s) / le,
            3.0 * s * s - 2.0 * s,
        ],
        axis=-1,
    )


def gauss_rule(le: float):
    """Gauss abscissae in ``[0, le]`` and weights scaled to the element."""
    return 0.5 * le * (GAUSS_POINTS + 1.0), 0.5 * le * GAUSS_WEIGHTS


def curvature_operator(le: float) -> np.ndarray:
    """``B`` with ``chi_gp = B @ u_e``; shape (4 gauss points, 4 dofs)."""
    xg, _ = gauss_rule(le)
    _, d2 = hermite_basis(xg, le)
    return -d2


def element_tangent_stiffness(chi_gp, le: float, axial: AxialState, spec: BeamSpec) -> np.ndarray:
    """``(EJ/c^2) * sum_g w_g B_g B_g^T f'(chi_g)``; symmetric 4x4."""
    B = curvature_operator(le)
    _, w = gauss_rule(le)
    fp = tangent_function(np.asarray(chi_gp, dtype=float), axial.alpha, spec.c2)
    K = (spec.EJ / spec.c2) * np.einsum("g,gi,gj->ij", w * fp, B, B)
    return 0.5 * (K + K.T)


def element_internal_force(chi_gp, le: float, axial: AxialState, spec: BeamSpec) -> np.ndarray:
    B = curvature_operator(le)
    _, w = gauss_rule(le)
    f = moment_function(np.asarray(chi_gp, dtype=float), axial.alpha, spec.c2)
    return (spec.EJ / spec.c2) * (B.T @ (w * f))


def element_load_vector(p: float, le: float) -> np.ndarray:
    """Consistent nodal loads of a uniform transverse load ``p``."""
    xg, w = gauss_rule(le)
    values, _ = hermite_basis(xg, le)
    return p * (values.T @ w)


def element_mass(spec: BeamSpec, le: float) -> np.ndarray:
    """Consistent mass ``rho b h int Psi Psi^T``."""
    xg, w = gauss_rule(le)
    values, _ = hermite_basis(xg, le)
    return spec.mass_per_length * np.einsum("g,gi,gj->ij", w, values, values)


def elastic_stiffness(spec: BeamSpec, le: float) -> np.ndarray:
    """Classical Euler-Bernoulli element stiffness (reference form)."""
    return spec.EJ / le**3 * np.array(
        [
            [12.0, 6.0 * le, -12.0, 6.0 * le],
            [6.0 * le, 4.0 * le**2, -6.0 * le, 2.0 * le**2],
            [-12.0, -6.0 * le, 12.0, -6.0 * le],
            [6.0 * le, 2.0 * le**2, -6.0 * le, 4.0 * le**2],
        ]
    )
