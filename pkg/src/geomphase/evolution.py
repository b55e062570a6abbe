"""Time evolution under a (possibly time-dependent) generator and the phase
bookkeeping built on top of it: dynamical phase, its removal, the parallel
transport residual and the geometric phase of a cyclic evolution.

Conventions, used consistently everywhere:
  i d/dt psi = H(t) psi          (hbar = 1, integrated with classical RK4)
  h(t) = Re<psi|H|psi> / <psi|psi>
  dynamical phase = integral of h over the run
  phi(t) = exp(+i * integral_0^t h) * psi(t)   (transported lift)
  geometric phase gamma = arg<psi(0)|psi(tau)> + integral h dt, in (-pi, pi]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionMismatchError, NonFiniteStateError, NotCyclicError
from .numerics import cumulative_simpson, grid_derivative, simpson_integral, wrap_angle
from .states import StateVector, project, ray_distance

__all__ = [
    "GeneratorSpec",
    "constant_generator",
    "Trajectory",
    "PhaseReport",
    "integrate_schrodinger",
    "expectation_h",
    "dynamical_phase",
    "remove_dynamical_phase",
    "transport_residual",
    "phase_report",
    "aa_phase",
]

HERMITICITY_TOL = 1e-10


@dataclass(frozen=True)
class GeneratorSpec:
    """Generator H(t) of the Schrodinger equation.

    evaluate(t) must return an (n, n) complex array.  hermitian_hint enables a
    hermiticity check of the sampled matrices during integration (violation is
    an error, not a warning).
    """

    dimension: int
    evaluate: Callable[[float], np.ndarray]
    hermitian_hint: bool = False
    name: str = ""
    params: dict = field(default_factory=dict)


def constant_generator(matrix, name: str = "matrix") -> GeneratorSpec:
    """Wrap a constant matrix; hermiticity is detected once at build time."""
    h = np.array(matrix, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] < 2:
        raise ValueError("generator matrix must be square with dimension >= 2")
    if not np.all(np.isfinite(h.view(np.float64))):
        raise ValueError("generator matrix must be finite")
    hermitian = bool(np.max(np.abs(h - h.conj().T)) <= HERMITICITY_TOL)
    h.flags.writeable = False
    return GeneratorSpec(dimension=h.shape[0], evaluate=lambda t: h,
                         hermitian_hint=hermitian, name=name)


class Trajectory:
    """Discretely sampled curve of states over a strictly increasing grid."""

    __slots__ = ("_times", "_matrix", "generator")

    def __init__(self, times, states, generator: GeneratorSpec | None = None):
        t = np.array(times, dtype=float)
        if t.ndim != 1 or t.shape[0] < 2:
            raise ValueError("need at least two grid points")
        if np.any(np.diff(t) <= 0):
            raise ValueError("grid must be strictly increasing")
        if isinstance(states, np.ndarray) and states.ndim == 2:
            m = np.array(states, dtype=np.complex128)
        else:
            m = np.array([s.amplitudes for s in states], dtype=np.complex128)
        if m.shape[0] != t.shape[0] or m.shape[1] < 2:
            raise ValueError("need one state of dimension >= 2 per grid point")
        if not np.all(np.isfinite(m.view(np.float64))):
            raise NonFiniteStateError("trajectory contains non-finite amplitudes")
        t.flags.writeable = False
        m.flags.writeable = False
        self._times = t
        self._matrix = m
        self.generator = generator

    @property
    def times(self) -> np.ndarray:
        return self._times

    @property
    def state_matrix(self) -> np.ndarray:
        """(N, n) array, row k = amplitudes at times[k]."""
        return self._matrix

    @property
    def dimension(self) -> int:
        return self._matrix.shape[1]

    def __len__(self):
        return self._times.shape[0]

    def state(self, k: int) -> StateVector:
        return StateVector(self._matrix[k])

    @property
    def states(self) -> list[StateVector]:
        return [StateVector(row) for row in self._matrix]


@dataclass(frozen=True)
class PhaseReport:
    """Phase decomposition of a cyclic run.

    total_phase and geometric_phase are reduced to (-pi, pi];
    dynamical_phase is the raw integral of h (congruences hold mod 2*pi).
    """

    total_phase: float
    dynamical_phase: float
    geometric_phase: float
    holonomy: complex
    cyclic_residual: float
    transport_residual: float


def _matrix_source(gen: GeneratorSpec):
    """Fetcher for H(t) with shape/hermiticity validation.

    The hermiticity check (only with hermitian_hint) is skipped when the
    generator hands back the same array object again, so constant generators
    are checked once.
    """
    n = gen.dimension
    prev = None

    def fetch(t: float, check: bool = True) -> np.ndarray:
        nonlocal prev
        h = np.asarray(gen.evaluate(t))
        if h.shape != (n, n):
            raise ValueError(f"generator returned shape {h.shape} at t={t}, "
                             f"expected ({n}, {n})")
        if check and gen.hermitian_hint and h is not prev:
            if np.max(np.abs(h - h.conj().T)) > HERMITICITY_TOL:
                raise ValueError(
                    f"generator marked hermitian is not hermitian at t={t}")
            prev = h
        return h

    return fetch


def _checked_matrix(gen: GeneratorSpec, t: float) -> np.ndarray:
    return _matrix_source(gen)(t)


def integrate_schrodinger(gen: GeneratorSpec, psi0: StateVector,
                          t_final: float, steps: int) -> Trajectory:
    """Solve i psi' = H(t) psi with classical RK4 on a uniform grid.

    Returns a trajectory with steps+1 samples at linspace(0, t_final, steps+1).
    Norm is monitored, not renormalized; a non-finite state aborts the run.
    The hermiticity of H is checked at the sampled grid times when the
    generator carries hermitian_hint.
    """
    if psi0.dimension != gen.dimension:
        raise DimensionMismatchError(
            f"state dimension {psi0.dimension} != generator dimension {gen.dimension}")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not t_final > 0:
        raise ValueError("t_final must be positive")
    n = gen.dimension
    fetch = _matrix_source(gen)
    times = np.linspace(0.0, t_final, steps + 1)
    dt = t_final / steps
    out = np.empty((steps + 1, n), dtype=np.complex128)
    y = psi0.amplitudes.astype(np.complex128)
    out[0] = y
    h_left = fetch(times[0])
    constant = fetch(float(times[-1])) is h_left and fetch(0.5 * t_final) is h_left
    half_dt = 0.5 * dt
    sixth_dt = dt / 6.0
    if constant:
        m = -1j * h_left
        for k in range(steps):
            k1 = m @ y
            k2 = m @ (y + half_dt * k1)
            k3 = m @ (y + half_dt * k2)
            k4 = m @ (y + dt * k3)
            y = y + sixth_dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.isfinite(np.vdot(y, y).real):
                raise NonFiniteStateError(
                    f"state became non-finite at t={times[k + 1]:.6g} "
                    f"(step {k + 1}); reduce the step size")
            out[k + 1] = y
        return Trajectory(times, out, generator=gen)
    for k in range(steps):
        t = times[k]
        h_mid = fetch(t + half_dt, check=False)  # grid times carry the check
        h_right = fetch(float(times[k + 1]))
        k1 = -1j * (h_left @ y)
        k2 = -1j * (h_mid @ (y + half_dt * k1))
        k3 = -1j * (h_mid @ (y + half_dt * k2))
        k4 = -1j * (h_right @ (y + dt * k3))
        y = y + sixth_dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(np.vdot(y, y).real):
            raise NonFiniteStateError(
                f"state became non-finite at t={times[k + 1]:.6g} "
                f"(step {k + 1}); reduce the step size")
        out[k + 1] = y
        h_left = h_right
    return Trajectory(times, out, generator=gen)


def expectation_h(gen: GeneratorSpec, psi: StateVector, t: float) -> float:
    """h(t) = Re<psi|H(t)|psi> / <psi|psi>."""
    if psi.dimension != gen.dimension:
        raise DimensionMismatchError(
            f"state dimension {psi.dimension} != generator dimension {gen.dimension}")
    h = _checked_matrix(gen, t)
    v = psi.amplitudes
    return float(np.vdot(v, h @ v).real / np.vdot(v, v).real)


def _require_compatible(traj: Trajectory, gen: GeneratorSpec):
    if traj.dimension != gen.dimension:
        raise DimensionMismatchError(
            f"trajectory dimension {traj.dimension} != generator dimension "
            f"{gen.dimension}")


def _h_samples(traj: Trajectory, gen: GeneratorSpec) -> np.ndarray:
    m = traj.state_matrix
    fetch = _matrix_source(gen)
    first = fetch(float(traj.times[0]))
    if fetch(float(traj.times[-1])) is first:  # constant generator
        num = np.einsum("ij,ij->i", m.conj(), (first @ m.T).T).real
        den = np.einsum("ij,ij->i", m.conj(), m).real
        return num / den
    stack = np.array([fetch(float(t)) for t in traj.times])
    num = np.einsum("ij,ijk,ik->i", m.conj(), stack, m).real
    den = np.einsum("ij,ij->i", m.conj(), m).real
    return num / den


def dynamical_phase(traj: Trajectory, gen: GeneratorSpec) -> float:
    """Simpson integral of h(t) along the trajectory grid."""
    _require_compatible(traj, gen)
    return simpson_integral(_h_samples(traj, gen), traj.times)


def remove_dynamical_phase(traj: Trajectory, gen: GeneratorSpec) -> Trajectory:
    """Transported lift phi(t) = exp(+i integral_0^t h) psi(t) on the same grid."""
    _require_compatible(traj, gen)
    running = cumulative_simpson(_h_samples(traj, gen), traj.times)
    phases = np.exp(1j * running)
    return Trajectory(traj.times, traj.state_matrix * phases[:, None])


def transport_residual(traj: Trajectory) -> float:
    """max_t |Im<phi|dphi/dt>| / <phi|phi> over the grid (0 iff horizontal)."""
    m = traj.state_matrix
    dm = grid_derivative(m, traj.times)
    num = np.abs(np.imag(np.einsum("ij,ij->i", m.conj(), dm)))
    den = np.einsum("ij,ij->i", m.conj(), m).real
    return float(np.max(num / den))


def phase_report(traj: Trajectory, gen: GeneratorSpec,
                 cyclic_tol: float = 1e-6) -> PhaseReport:
    """Phase decomposition of an (approximately) cyclic trajectory.

    Raises NotCyclicError when the initial and final rays differ by more than
    cyclic_tol in Fubini-Study distance.
    """
    _require_compatible(traj, gen)
    m = traj.state_matrix
    residual = ray_distance(project(StateVector(m[0])), project(StateVector(m[-1])))
    if residual > cyclic_tol:
        raise NotCyclicError(
            f"endpoint ray differs from the initial ray by {residual:.3e} "
            f"(> cyclic_tol = {cyclic_tol:.3e}); the run is not cyclic")
    hvals = _h_samples(traj, gen)
    dyn = simpson_integral(hvals, traj.times)
    total = float(np.angle(np.vdot(m[0], m[-1])))
    geo = wrap_angle(total + dyn)
    running = cumulative_simpson(hvals, traj.times)
    lifted = Trajectory(traj.times, m * np.exp(1j * running)[:, None])
    return PhaseReport(
        total_phase=wrap_angle(total),
        dynamical_phase=dyn,
        geometric_phase=geo,
        holonomy=complex(np.exp(1j * geo)),
        cyclic_residual=residual,
        transport_residual=transport_residual(lifted),
    )


def aa_phase(gen: GeneratorSpec, psi0: StateVector, t_final: float,
             steps: int, cyclic_tol: float = 1e-6) -> PhaseReport:
    """Integrate a cyclic run and decompose its phase (see phase_report)."""
    traj = integrate_schrodinger(gen, psi0, t_final, steps)
    return phase_report(traj, gen, cyclic_tol=cyclic_tol)
