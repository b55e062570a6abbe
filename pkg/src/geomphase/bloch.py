"""Two-level constructions on the Bloch sphere: standard states, closed lifted
loops, and oriented triangle meshes for curvature-flux checks.

Orientation convention: meshes are wound counterclockwise as seen from outside
the sphere, and the matching boundary loops are traversed the same way (e.g.
increasing azimuth for a polar cap).  With the connection convention used in
this package a counterclockwise cap of polar angle theta has loop phase
+pi*(1-cos(theta)) and flux +Omega/2.
"""

from __future__ import annotations

import math

import numpy as np

from .evolution import Trajectory
from .geodesic import geodesic_between, horizontal_sample_matrix
from .states import StateVector, project

__all__ = [
    "bloch_state",
    "state_from_bloch",
    "latitude_loop",
    "octant_boundary_loop",
    "octant_patch",
    "cap_patch",
]


def bloch_state(theta: float, phi: float = 0.0) -> StateVector:
    """Unit state (cos(theta/2), e^{i*phi} sin(theta/2)) at polar angle theta."""
    return StateVector([math.cos(0.5 * theta),
                        math.sin(0.5 * theta) * np.exp(1j * phi)])


def state_from_bloch(nvec) -> StateVector:
    """Spin-up eigenstate along a unit 3-vector (x, y, z)."""
    x, y, z = (float(c) for c in np.asarray(nvec, dtype=float))
    r = math.sqrt(x * x + y * y + z * z)
    if not math.isclose(r, 1.0, rel_tol=0.0, abs_tol=1e-9):
        raise ValueError("Bloch vector must be unit length")
    return bloch_state(math.acos(max(-1.0, min(1.0, z / r))), math.atan2(y, x))


def latitude_loop(theta: float, samples: int) -> Trajectory:
    """Closed lift of the circle at polar angle theta, azimuth 0 -> 2*pi.

    Counterclockwise seen from +z; the closed-loop phase is +pi*(1-cos(theta)).
    """
    if samples < 3:
        raise ValueError("need at least three samples")
    if not 0.0 < theta < math.pi:
        raise ValueError("theta must lie strictly between 0 and pi")
    s = np.linspace(0.0, 2.0 * math.pi, samples)
    m = np.empty((samples, 2), dtype=np.complex128)
    m[:, 0] = math.cos(0.5 * theta)
    m[:, 1] = math.sin(0.5 * theta) * np.exp(1j * s)
    return Trajectory(s, m)


_OCTANT_CORNERS = (np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]),
                   np.array([0.0, 1.0, 0.0]))


def octant_boundary_loop(samples_per_leg: int = 700) -> Trajectory:
    """Closed lift of the octant boundary +z -> +x -> +y -> +z (geodesic legs).

    Each leg is lifted horizontally and starts where the previous one ended, so
    the sampled connection vanishes along the legs and the whole loop phase
    sits in the closing overlap (corner kinks then contribute only O(h^2)
    noise to the integral).
    """
    if samples_per_leg < 3:
        raise ValueError("need at least three samples per leg")
    corners = [state_from_bloch(v) for v in _OCTANT_CORNERS]
    s = np.linspace(0.0, 1.0, samples_per_leg)
    start = corners[0]
    blocks = []
    for k in range(3):
        arc = geodesic_between(start, corners[(k + 1) % 3])
        block = horizontal_sample_matrix(arc, s)
        start = StateVector(block[-1])
        blocks.append(block if k == 2 else block[:-1])
    m = np.vstack(blocks)
    params = np.linspace(0.0, 3.0, m.shape[0])
    return Trajectory(params, m)


def octant_patch(refinement: int = 64) -> "SurfacePatch":
    """Triangulated positive octant, wound counterclockwise from outside.

    refinement is the number of subdivisions per edge; the mesh has
    refinement**2 triangles.  Vertices are slerp-free normalized barycentric
    combinations of the corner vectors (+z, +x, +y).
    """
    from .connection import SurfacePatch

    r = int(refinement)
    if r < 1:
        raise ValueError("refinement must be >= 1")
    az, ax, ay = _OCTANT_CORNERS
    index = {}
    verts = []
    for i in range(r + 1):
        for j in range(r + 1 - i):
            v = ((r - i - j) * az + i * ax + j * ay) / r
            v = v / np.linalg.norm(v)
            index[(i, j)] = len(verts)
            verts.append(project(state_from_bloch(v)))
    tris = []
    for i in range(r):
        for j in range(r - i):
            tris.append((index[(i, j)], index[(i + 1, j)], index[(i, j + 1)]))
            if i + j < r - 1:
                tris.append((index[(i + 1, j)], index[(i + 1, j + 1)],
                             index[(i, j + 1)]))
    return SurfacePatch(verts, tris)


def cap_patch(theta_max: float, n_theta: int = 64, n_phi: int = 64) -> "SurfacePatch":
    """Triangulated polar cap 0 <= theta <= theta_max (hemisphere at pi/2).

    Wound counterclockwise from outside, matching latitude_loop(theta_max, .)
    as its boundary.
    """
    from .connection import SurfacePatch

    if not 0.0 < theta_max < math.pi:
        raise ValueError("theta_max must lie strictly between 0 and pi")
    if n_theta < 1 or n_phi < 3:
        raise ValueError("need n_theta >= 1 and n_phi >= 3")
    verts = [project(bloch_state(0.0))]
    ring_start = []
    for i in range(1, n_theta + 1):
        ring_start.append(len(verts))
        th = theta_max * i / n_theta
        for j in range(n_phi):
            ph = 2.0 * math.pi * j / n_phi
            verts.append(project(bloch_state(th, ph)))
    tris = []
    first = ring_start[0]
    for j in range(n_phi):
        tris.append((0, first + j, first + (j + 1) % n_phi))
    for i in range(n_theta - 1):
        a = ring_start[i]
        b = ring_start[i + 1]
        for j in range(n_phi):
            jn = (j + 1) % n_phi
            tris.append((a + j, b + j, b + jn))
            tris.append((a + j, b + jn, a + jn))
    return SurfacePatch(verts, tris)
