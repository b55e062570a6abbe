"""State vectors in a finite-dimensional complex Hilbert space and the
projective quotient.

A ray is the full complex-scalar equivalence class psi ~ c*psi (c != 0).  The
canonical representative used throughout is unit norm with the first component
of modulus above 1e-12 made real and positive, so equality of rays reduces to
componentwise comparison of representatives.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatchError, OrthogonalStatesError

SIGNIFICANT = 1e-12  # modulus threshold for the gauge-fixing component
ORTHOGONALITY_TOL = 1e-10

__all__ = [
    "StateVector",
    "RayPoint",
    "inner",
    "project",
    "relative_phase",
    "in_phase",
    "ray_distance",
]


class StateVector:
    """Immutable complex amplitude vector, dimension >= 2, nonzero and finite."""

    __slots__ = ("_amplitudes",)

    def __init__(self, amplitudes):
        arr = np.array(amplitudes, dtype=np.complex128)
        if arr.ndim != 1 or arr.shape[0] < 2:
            raise ValueError("state must be a 1-d vector with dimension >= 2")
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("state amplitudes must be finite")
        if not np.any(arr):
            raise ValueError("state must not be the zero vector")
        arr.flags.writeable = False
        self._amplitudes = arr

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    @property
    def dimension(self) -> int:
        return self._amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self._amplitudes))

    def __repr__(self):
        return f"StateVector({np.array2string(self._amplitudes, separator=', ')})"


class RayPoint:
    """Point of projective space, held as its canonical unit representative."""

    __slots__ = ("_representative",)

    def __init__(self, representative: StateVector):
        v = representative.amplitudes
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise ValueError("ray representative must be unit norm")
        k = _first_significant(v)
        if not (v[k].real > 0.0 and abs(v[k].imag) <= SIGNIFICANT):
            raise ValueError("ray representative must be in canonical gauge; "
                             "use project()")
        self._representative = representative

    @property
    def representative(self) -> StateVector:
        return self._representative

    @property
    def dimension(self) -> int:
        return self._representative.dimension

    def __repr__(self):
        return f"RayPoint({self._representative!r})"


def _first_significant(v):
    idx = np.flatnonzero(np.abs(v) > SIGNIFICANT)
    if idx.size == 0:
        raise ValueError("no component exceeds the significance threshold")
    return int(idx[0])


def inner(a: StateVector, b: StateVector) -> complex:
    """Hermitian inner product <a|b>, conjugate-linear in the first slot."""
    if a.dimension != b.dimension:
        raise DimensionMismatchError(
            f"dimension mismatch: {a.dimension} vs {b.dimension}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def canonical_representative(v: np.ndarray) -> np.ndarray:
    """Unit-normalize and fix the gauge of a raw amplitude vector."""
    v = np.asarray(v, dtype=np.complex128)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("cannot project the zero vector")
    w = v / n
    k = _first_significant(w)
    w = w * np.exp(-1j * np.angle(w[k]))
    w[k] = w[k].real  # drop the rounding residue so the gauge is exact
    return w


def project(psi: StateVector) -> RayPoint:
    """Map a state to its ray.  project(c*psi) == project(psi) for any c != 0."""
    return RayPoint(StateVector(canonical_representative(psi.amplitudes)))


def relative_phase(a: StateVector, b: StateVector, tol: float = ORTHOGONALITY_TOL) -> float:
    """arg<a|b> in (-pi, pi].  Raises OrthogonalStatesError if |<a|b>| <= tol."""
    ov = inner(a, b)
    if abs(ov) <= tol:
        raise OrthogonalStatesError(
            f"relative phase undefined: |<a|b>| = {abs(ov):.3e} <= {tol:.3e}")
    return float(np.angle(ov))


def in_phase(a: StateVector, b: StateVector, tol: float = ORTHOGONALITY_TOL) -> bool:
    """True iff <a|b> is real and positive within a relative tolerance on Im."""
    ov = inner(a, b)
    return bool(ov.real > 0.0 and abs(ov.imag) <= tol * abs(ov))


def ray_distance(p: RayPoint, q: RayPoint) -> float:
    """Fubini-Study distance arccos|<p|q>| between two rays, in [0, pi/2]."""
    ov = inner(p.representative, q.representative)
    return float(math.acos(min(abs(ov), 1.0)))
