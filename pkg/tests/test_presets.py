"""Rotating-field preset: tilt derivation, cyclicity, cone phases vs oracle."""

import numpy as np
import pytest

from geomphase import StateVector, aa_phase, close_loop_phase, integrate_schrodinger
from geomphase.numerics import circ_distance
from geomphase.presets import (
    build_preset,
    preset_spin_half_rotating_field,
    spin_half_adapted_state,
    spin_half_expected_phase,
    spin_half_field_tilt,
    spin_half_period,
)

from oracles import (
    exact_rotating_states,
    expected_cone_phase,
    oracle_cone_phase,
    resonant_tilt,
    rotating_field_matrix,
)


def test_tilt_matches_independent_formula():
    for b, theta_c, omega in ((2.0, 1.0, 1.0), (3.0, 0.4, -1.5), (1.5, 2.2, 0.7)):
        assert spin_half_field_tilt(b, theta_c, omega) == pytest.approx(
            resonant_tilt(b, theta_c, omega), abs=1e-13)


def test_parameter_domain():
    with pytest.raises(ValueError):
        spin_half_field_tilt(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        spin_half_field_tilt(-2.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        spin_half_field_tilt(2.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        spin_half_field_tilt(2.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        spin_half_field_tilt(2.0, np.pi, 1.0)
    with pytest.raises(ValueError):
        spin_half_field_tilt(1.0, np.pi / 2, 1.5)  # field too weak for the cone
    with pytest.raises(ValueError):
        spin_half_period(0.0)


def test_generator_matches_field_formula():
    b, theta_c, omega = 2.0, 1.0, 1.0
    gen = preset_spin_half_rotating_field(b, theta_c, omega)
    assert gen.dimension == 2
    assert gen.hermitian_hint
    theta_h = gen.params["theta_h"]
    for t in (0.0, 0.37, 2.5):
        np.testing.assert_allclose(gen.evaluate(t),
                                   rotating_field_matrix(b, theta_h, omega, t),
                                   atol=1e-14)
    assert gen.params["period"] == pytest.approx(2 * np.pi)


def test_integrator_tracks_closed_form():
    b, theta_c, omega = 2.0, 1.0, 1.0
    gen = preset_spin_half_rotating_field(b, theta_c, omega)
    psi0 = spin_half_adapted_state(theta_c)
    traj = integrate_schrodinger(gen, psi0, spin_half_period(omega), 2000)
    exact = exact_rotating_states(b, gen.params["theta_h"], omega,
                                  psi0.amplitudes, traj.times)
    assert np.max(np.abs(traj.state_matrix - exact)) <= 1e-9


def test_adapted_run_is_cyclic():
    gen = preset_spin_half_rotating_field(2.0, 1.0, 1.0)
    rep = aa_phase(gen, spin_half_adapted_state(1.0), spin_half_period(1.0), 2000)
    assert rep.cyclic_residual <= 1e-8


def test_cone_phases_against_both_oracles():
    b = 2.0
    for theta_c in (np.pi / 6, np.pi / 3, np.pi / 2, 2 * np.pi / 3):
        for omega in (1.0, -1.0):
            gen = preset_spin_half_rotating_field(b, theta_c, omega)
            rep = aa_phase(gen, spin_half_adapted_state(theta_c),
                           spin_half_period(omega), 3000)
            gamma = rep.geometric_phase
            oracle = oracle_cone_phase(b, theta_c, omega, gen.params["theta_h"],
                                       spin_half_adapted_state(theta_c).amplitudes)
            assert circ_distance(gamma, oracle) <= 1e-4, (theta_c, omega)
            assert circ_distance(gamma, expected_cone_phase(theta_c, omega)) <= 1e-4
            assert circ_distance(gamma,
                                 spin_half_expected_phase(theta_c, omega)) <= 1e-4


def test_small_cone_phase_shrinks():
    gen = preset_spin_half_rotating_field(2.0, 0.1, 1.0)
    rep = aa_phase(gen, spin_half_adapted_state(0.1), spin_half_period(1.0), 2000)
    assert abs(rep.geometric_phase) == pytest.approx(np.pi * (1 - np.cos(0.1)),
                                                     abs=1e-5)


def test_loop_phase_is_minus_aa_phase():
    # closing the raw trajectory measures the reverse vertical jump
    theta_c, omega = 1.0, 1.0
    gen = preset_spin_half_rotating_field(2.0, theta_c, omega)
    traj = integrate_schrodinger(gen, spin_half_adapted_state(theta_c),
                                 spin_half_period(omega), 3000)
    rep = aa_phase(gen, spin_half_adapted_state(theta_c),
                   spin_half_period(omega), 3000)
    loop_gamma = close_loop_phase(traj)
    assert circ_distance(loop_gamma, -rep.geometric_phase) <= 1e-6
    assert loop_gamma == pytest.approx(np.pi * (1 - np.cos(theta_c)), abs=1e-4)


def test_build_preset_dispatch():
    gen = build_preset("spin_half_rotating_field",
                       {"B": 2.0, "theta_c": 0.8, "omega": 1.2})
    assert gen.params["theta_c"] == 0.8
    assert build_preset("spin_half_rotating_field").dimension == 2
    with pytest.raises(ValueError, match="spin_half_rotating_field"):
        build_preset("no_such_preset")
    with pytest.raises(TypeError):
        build_preset("spin_half_rotating_field", {"bogus": 1.0})
