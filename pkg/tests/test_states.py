"""State vectors, rays, overlaps, relative phase."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geomphase import (
    DimensionMismatchError,
    OrthogonalStatesError,
    StateVector,
    in_phase,
    inner,
    project,
    ray_distance,
    relative_phase,
)
from geomphase.states import canonical_representative

from oracles import random_unit


def sv(*comps):
    return StateVector(np.array(comps, dtype=complex))


def test_state_vector_basics():
    psi = sv(1, 1j)
    assert psi.dimension == 2
    assert psi.norm() == pytest.approx(np.sqrt(2))
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 5.0  # frozen storage


def test_state_vector_rejects_bad_input():
    with pytest.raises(ValueError):
        sv(1.0)  # one component is not a usable Hilbert space here
    with pytest.raises(ValueError):
        sv(0, 0)
    with pytest.raises(ValueError):
        sv(np.nan, 1)
    with pytest.raises(ValueError):
        sv(np.inf * 1j, 1)
    with pytest.raises(ValueError):
        StateVector(np.zeros((2, 2), dtype=complex))


def test_inner_examples():
    assert inner(sv(1, 0), sv(0, 1)) == 0
    assert inner(sv(1, 0), sv(1j, 0)) == pytest.approx(1j)
    # antilinear in the first slot
    assert inner(sv(2j, 0), sv(1, 0)) == pytest.approx(-2j)
    with pytest.raises(DimensionMismatchError):
        inner(sv(1, 0), sv(1, 0, 0))


def test_project_canonicalizes():
    r = project(sv(2, 0))
    np.testing.assert_allclose(r.representative.amplitudes, [1, 0], atol=1e-15)
    r = project(sv(0, 3j))
    np.testing.assert_allclose(r.representative.amplitudes, [0, 1], atol=1e-15)
    # leading pivot is the first component with non-negligible modulus
    r = project(sv(1e-14, 1j))
    rep = r.representative.amplitudes
    assert rep[1].real > 0.999
    assert rep[1].imag == 0.0


def test_canonical_representative_gauge_free():
    rng = np.random.default_rng(3)
    for _ in range(25):
        v = random_unit(rng, 4)
        c = rng.uniform(0.2, 5.0) * np.exp(1j * rng.uniform(-np.pi, np.pi))
        np.testing.assert_allclose(canonical_representative(c * v),
                                   canonical_representative(v), atol=1e-12)


def test_relative_phase_examples():
    phi2 = np.exp(1j * np.pi / 3) * np.array([1, 1]) / np.sqrt(2)
    assert relative_phase(sv(1, 0), StateVector(phi2)) == pytest.approx(np.pi / 3)
    assert relative_phase(sv(1, 0), sv(1, 0)) == 0.0
    assert relative_phase(sv(1, 0), sv(-1, 0)) == pytest.approx(np.pi)
    with pytest.raises(OrthogonalStatesError):
        relative_phase(sv(1, 0), sv(0, 1))


def test_relative_phase_antisymmetric():
    rng = np.random.default_rng(8)
    for _ in range(30):
        a = StateVector(random_unit(rng, 3))
        b = StateVector(random_unit(rng, 3))
        lhs = relative_phase(a, b)
        if abs(abs(lhs) - np.pi) < 1e-9:
            continue  # the branch point is its own negative
        assert relative_phase(b, a) == pytest.approx(-lhs, abs=1e-12)


def test_in_phase():
    assert in_phase(sv(1, 0), sv(1, 1))
    assert not in_phase(sv(1, 0), sv(1j, 0))
    assert not in_phase(sv(1, 0), sv(-1, 1))


def test_ray_distance_examples():
    assert ray_distance(project(sv(1, 0)), project(sv(0, 1))) == pytest.approx(np.pi / 2)
    assert ray_distance(project(sv(1, 0)), project(sv(1, 0))) == 0.0
    assert ray_distance(project(sv(1, 0)), project(sv(1, 1))) == pytest.approx(np.pi / 4)
    # phase and scale never matter
    assert ray_distance(project(sv(3j, 0)), project(sv(-2, 0))) == pytest.approx(0.0)


def test_ray_distance_triangle_inequality():
    rng = np.random.default_rng(77)
    for _ in range(200):
        n = int(rng.integers(2, 6))
        p, q, r = (project(StateVector(random_unit(rng, n))) for _ in range(3))
        assert ray_distance(p, r) <= ray_distance(p, q) + ray_distance(q, r) + 1e-10


finite_moduli = st.floats(min_value=-1.0, max_value=1.0,
                          allow_nan=False, allow_infinity=False)


@st.composite
def nondegenerate_state(draw, dim=3):
    comps = draw(st.lists(st.tuples(finite_moduli, finite_moduli),
                          min_size=dim, max_size=dim))
    v = np.array([complex(re, im) for re, im in comps])
    if np.linalg.norm(v) < 1e-3:
        v = v + np.eye(dim)[0]
    return StateVector(v)


@settings(max_examples=60)
@given(nondegenerate_state(), nondegenerate_state())
def test_inner_conjugate_symmetry(a, b):
    assert inner(a, b) == pytest.approx(np.conjugate(inner(b, a)), abs=1e-12)


@settings(max_examples=60)
@given(nondegenerate_state(),
       st.floats(0.1, 10.0), st.floats(-np.pi, np.pi))
def test_projection_kills_scale_and_phase(psi, r, theta):
    scaled = StateVector(r * np.exp(1j * theta) * psi.amplitudes)
    np.testing.assert_allclose(project(scaled).representative.amplitudes,
                               project(psi).representative.amplitudes, atol=1e-10)
