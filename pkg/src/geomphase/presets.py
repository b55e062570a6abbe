"""Named generator presets.

spin_half_rotating_field: a spin-1/2 in a magnetic field of magnitude B whose
direction precesses about the z axis at angular rate omega.  The field tilt
theta_h is *derived* from (B, theta_c, omega) — the resonance choice — so that
the co-rotating eigenstate traces the cone of half-angle exactly theta_c:

    in the frame rotating at omega the generator is static with effective axis
    Omega = (B sin(theta_h), 0, B cos(theta_h) - omega); requiring that axis to
    sit at polar angle theta_c gives, with
        lam = -omega*cos(theta_c) + sqrt(omega^2 cos^2(theta_c) + B^2 - omega^2),
    sin(theta_h) = lam*sin(theta_c)/B and cos(theta_h) = (lam*cos(theta_c)+omega)/B.

    Validity requires B > 0 and B^2 > omega^2 sin^2(theta_c).

The adapted initial state (cos(theta_c/2), sin(theta_c/2)) then returns to its
ray after one period T = 2*pi/|omega|, with geometric phase
wrap(pi*(1 + sign(omega)*cos(theta_c))), i.e. -sign(omega)*pi*(1-cos(theta_c))
mod 2*pi (minus the solid angle over two, counterclockwise for omega > 0).
"""

from __future__ import annotations

import math

import numpy as np

from .evolution import GeneratorSpec
from .states import StateVector

__all__ = [
    "preset_spin_half_rotating_field",
    "spin_half_field_tilt",
    "spin_half_adapted_state",
    "spin_half_period",
    "spin_half_expected_phase",
    "PRESET_BUILDERS",
    "build_preset",
]


def spin_half_field_tilt(B: float, theta_c: float, omega: float) -> float:
    """Field tilt theta_h of the resonance choice (see module docstring)."""
    _validate(B, theta_c, omega)
    disc = omega * omega * math.cos(theta_c) ** 2 + B * B - omega * omega
    lam = -omega * math.cos(theta_c) + math.sqrt(disc)
    return math.atan2(lam * math.sin(theta_c) / B,
                      (lam * math.cos(theta_c) + omega) / B)


def _validate(B: float, theta_c: float, omega: float):
    if not B > 0.0:
        raise ValueError("field magnitude B must be positive")
    if omega == 0.0:
        raise ValueError("rotation rate omega must be nonzero")
    if not 0.0 < theta_c < math.pi:
        raise ValueError("cone angle theta_c must lie strictly between 0 and pi")
    if not B * B > (omega * math.sin(theta_c)) ** 2:
        raise ValueError(
            "invalid parameter domain: need B^2 > omega^2 sin^2(theta_c) "
            "for the driven cone to exist")


def preset_spin_half_rotating_field(B: float = 2.0, theta_c: float = math.pi / 3,
                                    omega: float = 1.0) -> GeneratorSpec:
    """H(t) = (B/2) * n(t).sigma with n(t) precessing at omega, tilt theta_h."""
    theta_h = spin_half_field_tilt(B, theta_c, omega)
    half_b = 0.5 * B
    ct, st = math.cos(theta_h), math.sin(theta_h)

    def evaluate(t: float) -> np.ndarray:
        ph = np.exp(1j * omega * t)
        return np.array([[half_b * ct, half_b * st * np.conj(ph)],
                         [half_b * st * ph, -half_b * ct]])

    return GeneratorSpec(
        dimension=2, evaluate=evaluate, hermitian_hint=True,
        name="spin_half_rotating_field",
        params={"B": float(B), "theta_c": float(theta_c), "omega": float(omega),
                "theta_h": theta_h, "period": spin_half_period(omega)},
    )


def spin_half_adapted_state(theta_c: float) -> StateVector:
    """Initial state on the traced cone at azimuth 0."""
    return StateVector([math.cos(0.5 * theta_c), math.sin(0.5 * theta_c)])


def spin_half_period(omega: float) -> float:
    if omega == 0.0:
        raise ValueError("rotation rate omega must be nonzero")
    return 2.0 * math.pi / abs(omega)


def spin_half_expected_phase(theta_c: float, omega: float) -> float:
    """Geometric phase of one period of the adapted run, in (-pi, pi]."""
    from .numerics import wrap_angle

    return wrap_angle(math.pi * (1.0 + math.copysign(1.0, omega)
                                 * math.cos(theta_c)))


PRESET_BUILDERS = {
    "spin_half_rotating_field": preset_spin_half_rotating_field,
}


def build_preset(name: str, params: dict | None = None) -> GeneratorSpec:
    """Look up a preset by name and build it with keyword params."""
    if name not in PRESET_BUILDERS:
        known = ", ".join(sorted(PRESET_BUILDERS))
        raise ValueError(f"unknown preset {name!r}; known presets: {known}")
    return PRESET_BUILDERS[name](**(params or {}))
