"""Independent closed forms used as test oracles.

Everything here is coded straight from textbook formulas (Pauli algebra,
rotating-frame diagonalization, van Oosterom-Strackee solid angles) using
nothing but numpy, so a bug in geomphase cannot hide behind itself.  The
seeded random families live here too so unit tests and the acceptance suite
draw exactly the same cases.
"""

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

TIMEDEP_SEED = 20260815  # frozen draw for the parallel-transport suite


def wrap(x):
    """Principal angle in (-pi, pi]."""
    y = (float(x) + np.pi) % (2.0 * np.pi) - np.pi
    return np.pi if y <= -np.pi else y


def rotating_field_matrix(b, theta_h, omega, t):
    """Field of magnitude b tilted theta_h from z, precessing about z at omega."""
    sx = np.sin(theta_h) * np.cos(omega * t)
    sy = np.sin(theta_h) * np.sin(omega * t)
    sz = np.cos(theta_h)
    return 0.5 * b * (sx * SIGMA_X + sy * SIGMA_Y + sz * SIGMA_Z)


def exact_rotating_states(b, theta_h, omega, psi0, ts):
    """Closed-form solution of i psi' = H(t) psi for the rotating field.

    In the frame rotating at omega about z (psi = diag(e^{-i w t/2}, e^{+i w t/2}) chi)
    the generator becomes the constant H(0) - (omega/2) sigma_z, and the
    propagator follows from exp(-i (v.sigma) t) = cos(|v|t) I - i sin(|v|t) v_hat.sigma.
    """
    ts = np.asarray(ts, dtype=float)
    psi0 = np.asarray(psi0, dtype=complex)
    v = np.array([0.5 * b * np.sin(theta_h), 0.0,
                  0.5 * b * np.cos(theta_h) - 0.5 * omega])
    lam = np.linalg.norm(v)
    if lam == 0.0:
        chi = np.broadcast_to(psi0, (ts.size, 2)).copy()
    else:
        nhat = v / lam
        nsig = nhat[0] * SIGMA_X + nhat[1] * SIGMA_Y + nhat[2] * SIGMA_Z
        cos = np.cos(lam * ts)[:, None]
        sin = np.sin(lam * ts)[:, None]
        chi = cos * psi0[None, :] - 1j * sin * (nsig @ psi0)[None, :]
    out = np.empty_like(chi)
    out[:, 0] = np.exp(-0.5j * omega * ts) * chi[:, 0]
    out[:, 1] = np.exp(+0.5j * omega * ts) * chi[:, 1]
    return out


def sigma_z_states(omega, psi0, ts):
    """Exact evolution under the constant H = (omega/2) sigma_z."""
    ts = np.asarray(ts, dtype=float)
    psi0 = np.asarray(psi0, dtype=complex)
    out = np.empty((ts.size, 2), dtype=complex)
    out[:, 0] = np.exp(-0.5j * omega * ts) * psi0[0]
    out[:, 1] = np.exp(+0.5j * omega * ts) * psi0[1]
    return out


def oracle_cone_phase(b, theta_c, omega, theta_h, psi0, n_grid=20001):
    """Cyclic geometric phase over one period, from the closed form alone.

    arg<psi(0)|psi(T)> plus the trapezoid integral of Re<psi|H|psi>/<psi|psi>
    on a dense grid of exact states; no package code involved.
    """
    period = 2.0 * np.pi / abs(omega)
    ts = np.linspace(0.0, period, n_grid)
    states = exact_rotating_states(b, theta_h, omega, psi0, ts)
    a, c = states[:, 0], states[:, 1]
    ex = 2.0 * (a.conj() * c).real
    ey = 2.0 * (a.conj() * c).imag
    ez = (a.conj() * a).real - (c.conj() * c).real
    norm2 = (a.conj() * a).real + (c.conj() * c).real
    hvals = 0.5 * b * (np.sin(theta_h) * (np.cos(omega * ts) * ex
                                          + np.sin(omega * ts) * ey)
                       + np.cos(theta_h) * ez) / norm2
    total = np.angle(np.vdot(states[0], states[-1]))
    return wrap(total + np.trapezoid(hvals, ts))


def expected_cone_phase(theta_c, omega):
    """Solid-angle prediction: -sign(omega) * pi * (1 - cos theta_c), wrapped."""
    return wrap(-np.sign(omega) * np.pi * (1.0 - np.cos(theta_c)))


def resonant_tilt(b, theta_c, omega):
    """Tilt angle theta_h whose dressed eigenstate traces the cone theta_c."""
    lam = -omega * np.cos(theta_c) + np.sqrt(
        omega * omega * np.cos(theta_c) ** 2 + b * b - omega * omega)
    return np.arctan2(lam * np.sin(theta_c) / b, (lam * np.cos(theta_c) + omega) / b)


def triangle_solid_angle(r1, r2, r3):
    """Signed solid angle of a spherical triangle (van Oosterom & Strackee)."""
    r1, r2, r3 = (np.asarray(r, dtype=float) for r in (r1, r2, r3))
    num = np.dot(r1, np.cross(r2, r3))
    den = 1.0 + np.dot(r1, r2) + np.dot(r2, r3) + np.dot(r3, r1)
    return 2.0 * np.arctan2(num, den)


def cap_solid_angle(theta):
    return 2.0 * np.pi * (1.0 - np.cos(theta))


def bloch_of_state(v):
    """Unit Bloch vector of a 2-component state."""
    a, c = complex(v[0]), complex(v[1])
    n2 = abs(a) ** 2 + abs(c) ** 2
    return np.array([2.0 * (a.conjugate() * c).real,
                     2.0 * (a.conjugate() * c).imag,
                     abs(a) ** 2 - abs(c) ** 2]) / n2


def mesh_flux_oracle(vertex_states, triangles):
    """Half the summed signed solid angles of a Bloch-sphere mesh.

    Independent estimate of the curvature flux for 2-level patches: each
    triangle contributes Omega/2 with the orientation sign carried by the
    triple product.
    """
    nvecs = [bloch_of_state(v) for v in vertex_states]
    total = 0.0
    for i, j, k in triangles:
        total += triangle_solid_angle(nvecs[i], nvecs[j], nvecs[k])
    return 0.5 * total


def random_unit(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def seeded_hermitian(rng, n):
    """Random Hermitian matrix scaled to unit spectral norm."""
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = 0.5 * (m + m.conj().T)
    return m / np.linalg.norm(m, 2)


def timedep_hermitian_family(rng, n):
    """Smooth time-dependent Hermitian generator H(t) with O(1) variation.

    H(t) = H0 + 0.5 H1 cos(w1 t) + 0.5 H2 sin(w2 t), every block unit spectral
    norm, w in [0.5, 1.5].  Returns the evaluate callable.
    """
    h0 = seeded_hermitian(rng, n)
    h1 = 0.5 * seeded_hermitian(rng, n)
    h2 = 0.5 * seeded_hermitian(rng, n)
    w1, w2 = rng.uniform(0.5, 1.5, size=2)

    def evaluate(t):
        out = np.cos(w1 * t) * h1
        out += np.sin(w2 * t) * h2
        out += h0
        return out

    return evaluate


def smooth_gauge(rng, winding=None):
    """Random smooth alpha(s) with its analytic derivative.

    alpha(s) = w s + c0 + c1 sin(m1 s) + c2 cos(m2 s); integer winding keeps
    it single-valued mod 2pi on [0, 2pi] loops.
    """
    w = int(rng.integers(-2, 3)) if winding is None else int(winding)
    c0, c1, c2 = rng.uniform(-1.0, 1.0, size=3)
    m1, m2 = (int(v) for v in rng.integers(1, 4, size=2))

    def alpha(s):
        return w * s + c0 + c1 * np.sin(m1 * s) + c2 * np.cos(m2 * s)

    def dalpha(s):
        return w + c1 * m1 * np.cos(m1 * s) - c2 * m2 * np.sin(m2 * s)

    return alpha, dalpha
