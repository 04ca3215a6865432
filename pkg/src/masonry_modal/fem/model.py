"""Global assembly, Newton-Raphson equilibrium and linear-perturbation modal
analysis for a simply supported no-tension beam.

The linear-perturbation procedure:

1. discretize the beam with Hermite elements;
2. solve the nonlinear static problem under the permanent loads and keep the
   tangent stiffness of the converged state;
3. solve ``K_T x = omega^2 M x`` with that tangent in place of the elastic
   stiffness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..analytical import Case1, Case2, Case3, LoadCase, ModalResult, case2_limit_loads, omega_elastic
from ..constitutive import AxialState, BeamSpec, moment_function, tangent_function
from ..errors import ConstraintError, ConvergenceError, DomainError, IndefiniteTangentError, LimitLoadError
from .eigen import EigenPair, solve_generalized_symmetric_eig
from .element import curvature_operator, element_load_vector, element_mass, gauss_rule

DEFAULT_STEPS = 10
MAX_REFINEMENTS = 3
MAX_ITERATIONS = 50
RESIDUAL_TOL = 1e-8
STAGNATION_TOL = 1e-13


@dataclass(frozen=True)
class Mesh:
    """Uniform mesh on ``[0, L]`` with two dofs per node."""

    L: float
    n_elems: int

    def __post_init__(self):
        if self.n_elems < 1:
            raise DomainError(f"need at least one element, got {self.n_elems}")

    @property
    def le(self) -> float:
        return self.L / self.n_elems

    @property
    def node_x(self) -> np.ndarray:
        return np.linspace(0.0, self.L, self.n_elems + 1)

    @property
    def n_dofs(self) -> int:
        return 2 * (self.n_elems + 1)

    @property
    def connectivity(self) -> np.ndarray:
        first = 2 * np.arange(self.n_elems)
        return first[:, None] + np.arange(4)[None, :]

    def gauss_x(self) -> np.ndarray:
        """Global abscissae of all quadrature points, shape (n_elems, 4)."""
        xg, _ = gauss_rule(self.le)
        return self.node_x[:-1, None] + xg[None, :]


@dataclass(frozen=True)
class Constraints:
    """Prescribed dofs, eliminated from the system."""

    fixed: tuple
    values: tuple

    def __post_init__(self):
        if not self.fixed:
            raise ConstraintError("at least one dof must be constrained")
        if len(self.fixed) != len(self.values):
            raise ConstraintError("one prescribed value per fixed dof")

    @classmethod
    def simply_supported(cls, mesh: Mesh) -> "Constraints":
        return cls(fixed=(0, mesh.n_dofs - 2), values=(0.0, 0.0))

    def free(self, n_dofs: int) -> np.ndarray:
        mask = np.ones(n_dofs, dtype=bool)
        mask[list(self.fixed)] = False
        return np.flatnonzero(mask)


@dataclass
class SystemState:
    """Discrete state at (or imposed as) static equilibrium.

    Matrices are full-size; ``free`` indexes the reduced system.
    """

    u: np.ndarray
    gp_curvature: np.ndarray
    K_T: np.ndarray
    M_glob: np.ndarray
    f_int: np.ndarray
    f_ext: np.ndarray
    free: np.ndarray
    iterations: int = 0
    residual: float = 0.0
    step_iterations: list = field(default_factory=list)

    def reduced(self):
        ix = np.ix_(self.free, self.free)
        return self.K_T[ix], self.M_glob[ix]


class BeamModel:
    """Simply supported no-tension beam discretized with Hermite elements."""

    def __init__(self, spec: BeamSpec, axial: AxialState, n_elems: int = 30,
                 constraints: Optional[Constraints] = None):
        self.spec = spec
        self.axial = axial
        self.mesh = Mesh(spec.L, n_elems)
        self.constraints = constraints or Constraints.simply_supported(self.mesh)
        self.free = self.constraints.free(self.mesh.n_dofs)
        self._conn = self.mesh.connectivity
        self._B = curvature_operator(self.mesh.le)
        _, self._w = gauss_rule(self.mesh.le)
        self._rbh = spec.EJ / spec.c2
        self.M_glob = self.assemble_matrix(np.broadcast_to(element_mass(spec, self.mesh.le), (n_elems, 4, 4)))
        self._check_constraints()

    # -- assembly -------------------------------------------------------

    def assemble_matrix(self, blocks: np.ndarray) -> np.ndarray:
        n = self.mesh.n_dofs
        out = np.zeros((n, n))
        rows = self._conn[:, :, None]
        cols = self._conn[:, None, :]
        np.add.at(out, (np.broadcast_to(rows, blocks.shape), np.broadcast_to(cols, blocks.shape)), blocks)
        return out

    def assemble_vector(self, blocks: np.ndarray) -> np.ndarray:
        out = np.zeros(self.mesh.n_dofs)
        np.add.at(out, self._conn, blocks)
        return out

    def curvatures(self, u: np.ndarray) -> np.ndarray:
        """Quadrature-point curvatures, shape (n_elems, 4)."""
        return np.einsum("gi,ei->eg", self._B, u[self._conn])

    def internal_force_and_tangent(self, u: np.ndarray):
        chi = self.curvatures(u)
        f = moment_function(chi, self.axial.alpha, self.spec.c2)
        fp = tangent_function(chi, self.axial.alpha, self.spec.c2)
        fe = self._rbh * np.einsum("g,gi,eg->ei", self._w, self._B, f)
        ke = self._rbh * np.einsum("g,gi,gj,eg->eij", self._w, self._B, self._B, fp)
        K = self.assemble_matrix(ke)
        return chi, self.assemble_vector(fe), 0.5 * (K + K.T)

    def internal_force(self, u: np.ndarray) -> np.ndarray:
        return self.internal_force_and_tangent(u)[1]

    def tangent_stiffness(self, u: np.ndarray) -> np.ndarray:
        return self.internal_force_and_tangent(u)[2]

    def uniform_load_vector(self, p: float) -> np.ndarray:
        fe = element_load_vector(p, self.mesh.le)
        return self.assemble_vector(np.broadcast_to(fe, (self.mesh.n_elems, 4)))

    def end_moment_vector(self, M0: float) -> np.ndarray:
        """Equal and opposite nodal couples producing a constant moment ``M0``."""
        f = np.zeros(self.mesh.n_dofs)
        f[1] = M0
        f[-1] = -M0
        return f

    def _check_constraints(self):
        Kel = self.tangent_stiffness(np.zeros(self.mesh.n_dofs))
        Kr = Kel[np.ix_(self.free, self.free)]
        if self.free.size == 0:
            raise ConstraintError("all dofs are constrained")
        if np.linalg.cond(Kr) > 1e14:
            raise ConstraintError("reduced elastic stiffness is singular; supports do not prevent rigid motion")

    def _state(self, u, f_ext, **kw) -> SystemState:
        chi, f_int, K = self.internal_force_and_tangent(u)
        return SystemState(u=u, gp_curvature=chi, K_T=K, M_glob=self.M_glob,
                           f_int=f_int, f_ext=f_ext, free=self.free, **kw)

    # -- equilibrium ----------------------------------------------------

    def _newton_increments(self, f_ext: np.ndarray, n_steps: int, max_iter: int, tol: float):
        free = self.free
        u = np.zeros(self.mesh.n_dofs)
        u[list(self.constraints.fixed)] = self.constraints.values
        total = 0
        per_step = []
        res = float("nan")
        for k in range(1, n_steps + 1):
            target = f_ext * (k / n_steps)
            scale = np.linalg.norm(target[free])
            thresh = tol * scale if scale > 0 else tol
            its = 0
            while True:
                _, f_int, K = self.internal_force_and_tangent(u)
                r = (target - f_int)[free]
                res = float(np.linalg.norm(r))
                if res <= thresh:
                    break
                if its >= max_iter or not math.isfinite(res):
                    raise ConvergenceError(
                        f"Newton-Raphson did not converge in step {k}/{n_steps} (residual {res:.3e})",
                        residual=res, iterations=total,
                    )
                du = np.linalg.solve(K[np.ix_(free, free)], r)
                u[free] += du
                its += 1
                total += 1
                # rounding floor on fine meshes: correction no longer changes u
                if np.linalg.norm(du) <= STAGNATION_TOL * np.linalg.norm(u[free]):
                    res = float(np.linalg.norm((target - self.internal_force(u))[free]))
                    break
            per_step.append(its)
        return u, total, per_step, res

    def newton_solve(self, f_ext: np.ndarray, n_steps: int = DEFAULT_STEPS,
                     max_iter: int = MAX_ITERATIONS, tol: float = RESIDUAL_TOL) -> SystemState:
        """Incremental Newton-Raphson under the load vector ``f_ext``.

        The increment count doubles on divergence, up to three times.
        """
        last: Optional[ConvergenceError] = None
        for attempt in range(MAX_REFINEMENTS + 1):
            try:
                u, total, per_step, res = self._newton_increments(f_ext, n_steps * 2**attempt, max_iter, tol)
            except ConvergenceError as exc:
                last = exc
                continue
            return self._state(u, f_ext, iterations=total, residual=res, step_iterations=per_step)
        raise last

    def prescribe_deformation(self, A: float) -> SystemState:
        """Impose ``phi = A sin(pi x / L)`` kinematically at the nodes."""
        if A < 0:
            raise DomainError(f"amplitude must be non-negative, got {A!r}")
        x = self.mesh.node_x
        k = math.pi / self.spec.L
        u = np.empty(self.mesh.n_dofs)
        u[0::2] = A * np.sin(k * x)
        u[1::2] = A * k * np.cos(k * x)
        u[list(self.constraints.fixed)] = self.constraints.values
        state = self._state(u, np.zeros(self.mesh.n_dofs))
        state.f_ext = state.f_int.copy()
        return state

    def load_case_state(self, case: LoadCase, **newton_kw) -> SystemState:
        """Equilibrium (or imposed) state for one of the standard load cases.

        Raises:
            LimitLoadError: if the load reaches the collapse load.
        """
        spec = self.spec
        if isinstance(case, Case1):
            if abs(case.e) >= spec.h / 2.0:
                raise LimitLoadError(f"eccentricity {case.e!r} reaches the section edge h/2")
            return self.newton_solve(self.end_moment_vector(self.axial.N * case.e), **newton_kw)
        if isinstance(case, Case2):
            if case.p < 0:
                raise DomainError(f"transverse load must be non-negative, got {case.p!r}")
            _, p_bbar = case2_limit_loads(self.axial.N, spec)
            if case.p >= p_bbar:
                raise LimitLoadError(f"load {case.p!r} reaches the limit load {p_bbar!r}", x=spec.L / 2.0)
            return self.newton_solve(self.uniform_load_vector(case.p), **newton_kw)
        if isinstance(case, Case3):
            return self.prescribe_deformation(case.A)
        raise TypeError(f"unknown load case {case!r}")

    # -- modal analysis -------------------------------------------------

    def modal_analysis(self, state: SystemState, n_modes: int = 1) -> list[EigenPair]:
        return modal_analysis(state, n_modes)

    def expand(self, shape: np.ndarray) -> np.ndarray:
        full = np.zeros(self.mesh.n_dofs)
        full[self.free] = shape
        return full

    def crack_front(self, state: SystemState) -> float:
        """Smallest quadrature abscissa in the cracked regime (``L/2`` if none)."""
        cracked = np.abs(state.gp_curvature) > self.axial.alpha
        if not cracked.any():
            return self.spec.L / 2.0
        return float(min(self.mesh.gauss_x()[cracked].min(), self.spec.L / 2.0))

    def sine_rayleigh_ratio(self, state: SystemState) -> float:
        """Frequency ratio of the tangent pencil restricted to ``sin(pi x / L)``.

        This is the discrete counterpart of the single-mode Galerkin
        estimate and bounds the FE fundamental frequency from above.
        """
        x = self.mesh.node_x
        k = math.pi / self.spec.L
        w = np.empty(self.mesh.n_dofs)
        w[0::2] = np.sin(k * x)
        w[1::2] = k * np.cos(k * x)
        wr = w[self.free]
        K, M = state.reduced()
        return math.sqrt(max(wr @ K @ wr / (wr @ M @ wr), 0.0)) / omega_elastic(self.spec)

    def fundamental(self, state: SystemState) -> ModalResult:
        pair = modal_analysis(state, 1)[0]
        full = self.expand(pair.shape)
        nodal = full[0::2]
        if nodal[np.argmax(np.abs(nodal))] < 0:
            nodal = -nodal
        omega = pair.omega
        return ModalResult(omega=omega, f_hz=omega / (2.0 * math.pi), ratio=omega / omega_elastic(self.spec),
                           x0=self.crack_front(state), mode_shape=tuple(float(v) for v in nodal))


def modal_analysis(state: SystemState, n_modes: int = 1) -> list[EigenPair]:
    """Lowest eigenpairs of the tangent pencil about ``state``.

    Raises:
        IndefiniteTangentError: if the tangent has a negative eigenvalue.
    """
    K, M = state.reduced()
    pairs = solve_generalized_symmetric_eig(K, M, n_modes)
    lam = pairs[0].omega2
    scale = np.abs(np.diag(K)).max() / np.abs(np.diag(M)).max()
    if lam < -1e-12 * scale:
        raise IndefiniteTangentError(f"tangent stiffness is indefinite (lowest eigenvalue {lam:.6e})", lam)
    return pairs


def fe_frequency(case: LoadCase, spec: BeamSpec, N: float, n_elems: int = 30, **newton_kw):
    """Linear-perturbation fundamental frequency for a load case.

    Returns ``(ModalResult, SystemState)``.
    """
    model = BeamModel(spec, AxialState.from_force(N, spec), n_elems)
    state = model.load_case_state(case, **newton_kw)
    return model.fundamental(state), state
