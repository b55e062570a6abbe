"""Fubini-Study geodesics between non-orthogonal rays and the Pancharatnam
relative phase, both through explicit state-space lifts.

The lift between unit states phi1, phi2 with overlap a*e^{i*beta} (a in (0,1))
uses the phase-aligned endpoint psi2 = e^{-i*beta} phi2 and the real-coefficient
curve
    psi(theta) = xi1(theta) phi1 + xi2(theta) psi2,
    xi1 = cos(theta) - a/sqrt(1-a^2) * sin(theta),  xi2 = sin(theta)/sqrt(1-a^2),
with theta = s * theta0, theta0 = arccos(a), s in [0, 1].  The linear gauge
exp(i*s*beta) restores the original endpoint, so the sampled curve interpolates
phi1 -> phi2 while its connection is the constant beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IdenticalRaysError, OrthogonalStatesError
from .evolution import Trajectory
from .numerics import simpson_integral
from .states import StateVector, inner

__all__ = [
    "GeodesicArc",
    "geodesic_between",
    "geodesic_point",
    "geodesic_trajectory",
    "geodesic_sample_matrix",
    "horizontal_sample_matrix",
    "normalization_residual",
    "horizontal_overlap",
    "pancharatnam_integral",
    "bargmann_triangle",
]

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class GeodesicArc:
    """Minimal geodesic between two unit states (phase-aligned internally).

    psi1 and psi2_aligned satisfy <psi1|psi2_aligned> = a > 0; phase_offset is
    the relative phase beta of the original endpoints, reintroduced linearly
    along the arc.  theta0 = arccos(a) is the arc length (ray distance).
    """

    psi1: StateVector
    psi2_aligned: StateVector
    a: float
    theta0: float
    phase_offset: float

    @property
    def dimension(self) -> int:
        return self.psi1.dimension


def _require_unit(phi: StateVector, label: str):
    if abs(phi.norm() - 1.0) > UNIT_TOL:
        raise ValueError(f"{label} must be unit norm (|norm-1| <= {UNIT_TOL})")


def geodesic_between(phi1: StateVector, phi2: StateVector,
                     tol: float = 1e-10) -> GeodesicArc:
    """Construct the minimal geodesic lift between the rays of phi1 and phi2.

    Raises OrthogonalStatesError when |<phi1|phi2>| <= tol (no unique minimal
    arc) and IdenticalRaysError when the rays coincide (zero-length arc).
    """
    _require_unit(phi1, "phi1")
    _require_unit(phi2, "phi2")
    ov = inner(phi1, phi2)
    a = abs(ov)
    if a <= tol:
        raise OrthogonalStatesError(
            f"no unique geodesic between orthogonal rays (|<phi1|phi2>| = {a:.3e})")
    theta0 = math.acos(min(a, 1.0))
    if theta0 <= 1e-10:
        raise IdenticalRaysError(
            f"rays coincide within distance {theta0:.3e}; arc has zero length")
    beta = float(np.angle(ov))
    psi2 = StateVector(phi2.amplitudes * np.exp(-1j * beta))
    return GeodesicArc(psi1=phi1, psi2_aligned=psi2, a=a,
                       theta0=theta0, phase_offset=beta)


def _xi(arc: GeodesicArc, theta):
    root = math.sqrt(1.0 - arc.a * arc.a)
    xi1 = np.cos(theta) - (arc.a / root) * np.sin(theta)
    xi2 = np.sin(theta) / root
    return xi1, xi2


def geodesic_sample_matrix(arc: GeodesicArc, s: np.ndarray) -> np.ndarray:
    """States of the arc at parameters s in [0, 1], one row per sample."""
    m = horizontal_sample_matrix(arc, s)
    m *= np.exp(1j * arc.phase_offset * np.asarray(s, dtype=float))[:, None]
    return m


def horizontal_sample_matrix(arc: GeodesicArc, s: np.ndarray) -> np.ndarray:
    """Aligned (in-phase) lift of the arc: runs from psi1 to psi2_aligned.

    Along this lift the connection vanishes identically; the phase offset of
    the original endpoints is not reinstated.
    """
    s = np.asarray(s, dtype=float)
    xi1, xi2 = _xi(arc, s * arc.theta0)
    return (np.outer(xi1, arc.psi1.amplitudes)
            + np.outer(xi2, arc.psi2_aligned.amplitudes))


def geodesic_point(arc: GeodesicArc, s: float) -> StateVector:
    """State at parameter s in [0, 1]; endpoints reproduce the inputs."""
    if not 0.0 <= s <= 1.0:
        raise ValueError("geodesic parameter must lie in [0, 1]")
    return StateVector(geodesic_sample_matrix(arc, np.array([s]))[0])


def geodesic_trajectory(arc: GeodesicArc, samples: int) -> Trajectory:
    """Uniformly sampled arc as a trajectory over s in [0, 1]."""
    if samples < 3:
        raise ValueError("need at least three samples")
    s = np.linspace(0.0, 1.0, samples)
    return Trajectory(s, geodesic_sample_matrix(arc, s))


def normalization_residual(arc: GeodesicArc, samples: int = 256) -> float:
    """max_s |<psi(s)|psi(s)> - 1| over a uniform grid (algebraically zero)."""
    if samples < 2:
        raise ValueError("need at least two samples")
    s = np.linspace(0.0, 1.0, samples)
    xi1, xi2 = _xi(arc, s * arc.theta0)
    norm2 = xi1 * xi1 + 2.0 * arc.a * xi1 * xi2 + xi2 * xi2
    return float(np.max(np.abs(norm2 - 1.0)))


def horizontal_overlap(arc: GeodesicArc, s1: float, s2: float) -> complex:
    """<psi(theta1)|psi(theta2)> of the aligned lift (no phase offset).

    Equals cos(theta1 - theta2): real, and positive for |theta1-theta2| < pi/2,
    so the aligned lift is pointwise in phase along the arc.
    """
    for s in (s1, s2):
        if not 0.0 <= s <= 1.0:
            raise ValueError("geodesic parameter must lie in [0, 1]")
    v = []
    for s in (s1, s2):
        xi1, xi2 = _xi(arc, s * arc.theta0)
        v.append(xi1 * arc.psi1.amplitudes + xi2 * arc.psi2_aligned.amplitudes)
    return complex(np.vdot(v[0], v[1]))


def pancharatnam_integral(phi1: StateVector, phi2: StateVector,
                          samples: int = 2000, tol: float = 1e-10) -> float:
    """Connection integral along the geodesic from phi1 to phi2.

    Recovers the Pancharatnam relative phase arg<phi1|phi2> (the connection of
    the lifted arc is constant, so the integral is exactly beta up to grid
    differentiation error).
    """
    if samples < 64:
        raise ValueError("need at least 64 samples")
    from .connection import connection_values

    arc = geodesic_between(phi1, phi2, tol=tol)
    s = np.linspace(0.0, 1.0, samples)
    m = geodesic_sample_matrix(arc, s)
    return simpson_integral(connection_values(m, s), s)


def bargmann_triangle(psi1: StateVector, psi2: StateVector,
                      psi3: StateVector, tol: float = 1e-10) -> float:
    """arg(<psi1|psi2><psi2|psi3><psi3|psi1>), the three-vertex invariant.

    Gauge and normalization independent; equals the connection integral around
    the closed geodesic triangle through the three rays.  Raises
    OrthogonalStatesError when any pair is (nearly) orthogonal.
    """
    o12 = inner(psi1, psi2)
    o23 = inner(psi2, psi3)
    o31 = inner(psi3, psi1)
    for name, ov in (("<psi1|psi2>", o12), ("<psi2|psi3>", o23),
                     ("<psi3|psi1>", o31)):
        if abs(ov) <= tol:
            raise OrthogonalStatesError(
                f"triangle phase undefined: |{name}| = {abs(ov):.3e} <= {tol:.3e}")
    return float(np.angle(o12 * o23 * o31))
