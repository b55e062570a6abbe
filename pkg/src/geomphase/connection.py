"""The natural connection on sampled curves of states, gauge transformations,
loop holonomy, and discrete curvature flux through triangulated ray surfaces.

Connection convention (pinned everywhere): A_s = Im<phi|dphi/ds> / <phi|phi>.
Loop closure: close_loop_phase = integral of A_s plus the phase of the
closing overlap arg<phi(end)|phi(start)>, reduced to (-pi, pi].
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import (
    BoundaryMismatchError,
    EndpointsNotOnSameRayError,
    OrthogonalTriangleVerticesError,
)
from .evolution import Trajectory
from .numerics import grid_derivative, simpson_integral, wrap_angle
from .states import RayPoint, StateVector, canonical_representative

__all__ = [
    "ConnectionSamples",
    "SurfacePatch",
    "connection_along",
    "gauge_transform",
    "line_integral",
    "close_loop_phase",
    "holonomy_element",
    "is_horizontal",
    "vertical_component",
    "curvature_flux",
    "stokes_residual",
]


@dataclass(frozen=True)
class ConnectionSamples:
    """Real connection values A(params[k]) sampled along a curve."""

    params: np.ndarray
    values: np.ndarray
    source: Trajectory | None = None

    def __post_init__(self):
        p = np.asarray(self.params, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if p.ndim != 1 or p.shape != v.shape:
            raise ValueError("params and values must be 1-d arrays of equal length")
        if np.any(np.diff(p) <= 0):
            raise ValueError("params must be strictly increasing")
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(v))):
            raise ValueError("connection samples must be finite")
        object.__setattr__(self, "params", p)
        object.__setattr__(self, "values", v)


def connection_values(matrix: np.ndarray, params: np.ndarray) -> np.ndarray:
    """A(s) = Im<phi|phi'>/<phi|phi> for a (N, n) sample matrix (grid derivative)."""
    d = grid_derivative(matrix, params)
    num = np.imag(np.einsum("ij,ij->i", matrix.conj(), d))
    den = np.einsum("ij,ij->i", matrix.conj(), matrix).real
    return num / den


def connection_along(traj: Trajectory) -> ConnectionSamples:
    """Sample the natural connection along a trajectory (needs >= 3 points)."""
    if len(traj) < 3:
        raise ValueError("need at least three samples to differentiate a curve")
    vals = connection_values(traj.state_matrix, traj.times)
    return ConnectionSamples(params=traj.times, values=vals, source=traj)


def gauge_transform(traj: Trajectory, alpha) -> Trajectory:
    """Multiply the curve by exp(i*alpha(s)) pointwise; alpha maps param -> real."""
    a = np.array([float(alpha(s)) for s in traj.times])
    if not np.all(np.isfinite(a)):
        raise ValueError("gauge function returned non-finite values")
    return Trajectory(traj.times, traj.state_matrix * np.exp(1j * a)[:, None],
                      generator=traj.generator)


def line_integral(samples: ConnectionSamples) -> float:
    """Simpson integral of the sampled connection."""
    if samples.params.shape[0] < 3:
        raise ValueError("need at least three samples to integrate the connection")
    return simpson_integral(samples.values, samples.params)


def close_loop_phase(traj: Trajectory, tol: float = 1e-6) -> float:
    """Holonomy angle of a closed ray curve, in (-pi, pi].

    The curve must return to its starting ray within tol (Fubini-Study).  The
    open line integral of A is completed by the vertical closing segment, which
    contributes arg<phi(end)|phi(start)>.
    """
    m = traj.state_matrix
    gap = _ray_gap(m[0], m[-1])
    if gap > tol:
        raise EndpointsNotOnSameRayError(
            f"endpoints differ by ray distance {gap:.3e} (> {tol:.3e}); "
            "the curve does not close")
    open_part = line_integral(connection_along(traj))
    closing = float(np.angle(np.vdot(m[-1], m[0])))
    return wrap_angle(open_part + closing)


def _ray_gap(v0: np.ndarray, v1: np.ndarray) -> float:
    a = canonical_representative(v0)
    b = canonical_representative(v1)
    return float(np.arccos(min(abs(np.vdot(a, b)), 1.0)))


def holonomy_element(gamma: float) -> complex:
    """U(1) element exp(i*gamma)."""
    return cmath.exp(1j * float(gamma))


def _tangent_array(x) -> np.ndarray:
    if isinstance(x, StateVector):
        return x.amplitudes
    return np.asarray(x, dtype=np.complex128)


def _require_unit(psi: StateVector):
    if abs(psi.norm() - 1.0) > 1e-10:
        raise ValueError("base state must be unit norm")


def is_horizontal(psi: StateVector, x, tol: float = 1e-10) -> bool:
    """True iff the tangent x at unit psi has <psi|x> = 0 within tol."""
    _require_unit(psi)
    v = _tangent_array(x)
    if v.shape != psi.amplitudes.shape:
        raise ValueError("tangent must match the state dimension")
    ov = np.vdot(psi.amplitudes, v)
    return bool(abs(ov.real) <= tol and abs(ov.imag) <= tol)


def vertical_component(psi: StateVector, x) -> np.ndarray:
    """Fibre-direction part i*Im<psi|x>*psi of a tangent x at unit psi.

    Returns a plain array (it is the zero vector when x is horizontal).
    """
    _require_unit(psi)
    v = _tangent_array(x)
    if v.shape != psi.amplitudes.shape:
        raise ValueError("tangent must match the state dimension")
    ov = np.vdot(psi.amplitudes, v)
    return 1j * ov.imag * psi.amplitudes


class SurfacePatch:
    """Oriented triangulated patch of rays.

    triangles index into vertices; every directed edge appears at most once
    (consistent winding) and triangle vertices are pairwise non-orthogonal.
    orientation = +-1 globally flips the flux sign.
    """

    __slots__ = ("_vertices", "_triangles", "_matrix", "orientation")

    def __init__(self, vertices, triangles, orientation: int = 1):
        verts = list(vertices)
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        for p in verts:
            if not isinstance(p, RayPoint):
                raise TypeError("vertices must be RayPoint instances")
        tri = np.array(triangles, dtype=np.intp).reshape(-1, 3)
        if tri.size:
            if tri.min() < 0 or tri.max() >= len(verts):
                raise ValueError("triangle index out of range")
            if np.any(tri[:, 0] == tri[:, 1]) or np.any(tri[:, 1] == tri[:, 2]) \
                    or np.any(tri[:, 0] == tri[:, 2]):
                raise ValueError("triangle uses a vertex twice")
        dims = {p.dimension for p in verts}
        if len(dims) > 1:
            raise ValueError("all vertices must share one dimension")
        self._vertices = verts
        self._triangles = tri
        self._matrix = (np.array([p.representative.amplitudes for p in verts])
                        if verts else np.zeros((0, 2), dtype=np.complex128))
        self.orientation = int(orientation)
        self._check_winding()
        self._check_overlaps()

    @property
    def vertices(self) -> list[RayPoint]:
        return list(self._vertices)

    @property
    def triangles(self) -> np.ndarray:
        return self._triangles.copy()

    def _check_winding(self):
        seen = set()
        for a, b, c in self._triangles:
            for edge in ((a, b), (b, c), (c, a)):
                if edge in seen:
                    raise ValueError(
                        f"directed edge {edge} appears twice; "
                        "the mesh is not consistently oriented")
                seen.add(edge)

    def _check_overlaps(self):
        if not self._triangles.size:
            return
        m = self._matrix
        t = self._triangles
        for i, j in ((0, 1), (1, 2), (2, 0)):
            ov = np.abs(np.einsum("ij,ij->i", m[t[:, i]].conj(), m[t[:, j]]))
            if np.any(ov <= 1e-6):
                k = int(np.argmin(ov))
                raise OrthogonalTriangleVerticesError(
                    f"triangle {k} has (nearly) orthogonal vertices "
                    f"(min overlap {ov[k]:.3e}); flux contribution undefined")

    def boundary_edges(self) -> list[tuple[int, int]]:
        """Directed edges not shared (in reverse) by a second triangle."""
        directed = set()
        for a, b, c in self._triangles:
            directed.update(((int(a), int(b)), (int(b), int(c)), (int(c), int(a))))
        return sorted(e for e in directed if (e[1], e[0]) not in directed)


def curvature_flux(patch: SurfacePatch) -> float:
    """Discrete curvature flux: sum of Bargmann phases of the oriented triangles.

    Each triangle contributes arg(<v0|v1><v1|v2><v2|v0>); shared interior edges
    cancel in the sum, so the total is the flux through the patch.
    """
    t = patch._triangles
    if not t.size:
        return 0.0
    m = patch._matrix
    o01 = np.einsum("ij,ij->i", m[t[:, 0]].conj(), m[t[:, 1]])
    o12 = np.einsum("ij,ij->i", m[t[:, 1]].conj(), m[t[:, 2]])
    o20 = np.einsum("ij,ij->i", m[t[:, 2]].conj(), m[t[:, 0]])
    return patch.orientation * float(np.sum(np.angle(o01 * o12 * o20)))


def stokes_residual(traj: Trajectory, patch: SurfacePatch,
                    boundary_tol: float = 1e-3) -> float:
    """Circle distance between the loop phase of traj and the patch flux.

    Every boundary vertex of the patch must lie within boundary_tol (ray
    distance) of the sampled loop; otherwise the comparison is meaningless and
    BoundaryMismatchError is raised.
    """
    edges = patch.boundary_edges()
    if edges:
        boundary_idx = sorted({i for e in edges for i in e})
        bverts = patch._matrix[boundary_idx]  # canonical, unit norm
        curve = traj.state_matrix
        # ray distance is gauge invariant: use |<b|c>| / |c| directly
        ov = np.abs(bverts.conj() @ curve.T)
        nc = np.linalg.norm(curve, axis=1)[None, :]
        cosd = np.clip(ov / nc, 0.0, 1.0)
        dist = np.arccos(np.max(cosd, axis=1))
        worst = float(np.max(dist))
        if worst > boundary_tol:
            k = int(np.argmax(dist))
            raise BoundaryMismatchError(
                f"patch boundary vertex {boundary_idx[k]} is {worst:.3e} away "
                f"from the loop (> {boundary_tol:.3e})")
    gamma = close_loop_phase(traj)
    flux = curvature_flux(patch)
    return float(abs(wrap_angle(gamma - flux)))
