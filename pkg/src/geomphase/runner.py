"""Task execution behind both the CLI and the HTTP service.

Every task produces a report (flat JSON object) and a sample table (CSV with
columns s, A_s, re_0, im_0, ..., re_{n-1}, im_{n-1}).  Rendering is
deterministic: fixed key order, floats at 17 significant digits, LF endings —
identical configs yield byte-identical outputs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import bloch
from .config import RunConfig, states_from_pairs
from .connection import (
    close_loop_phase,
    connection_along,
    connection_values,
    curvature_flux,
    gauge_transform,
    line_integral,
    stokes_residual,
)
from .errors import ConfigError, NonFiniteStateError
from .evolution import (
    GeneratorSpec,
    Trajectory,
    constant_generator,
    integrate_schrodinger,
    phase_report,
)
from .geodesic import (
    geodesic_between,
    geodesic_sample_matrix,
    normalization_residual,
    pancharatnam_integral,
)
from .numerics import circ_distance, simpson_integral, wrap_angle
from .presets import build_preset
from .states import StateVector, relative_phase

__all__ = ["RunResult", "execute", "render_report", "render_samples"]


@dataclass(frozen=True)
class RunResult:
    report: dict
    samples_header: list[str]
    samples: np.ndarray  # (rows, columns) float


def execute(config: RunConfig, seed: int | None = None) -> RunResult:
    """Run one task.  seed overrides config.seed when given."""
    seed = config.seed if seed is None else int(seed)
    task = {
        "aa_phase": _run_aa_phase,
        "pancharatnam": _run_pancharatnam,
        "geodesic_table": _run_geodesic_table,
        "stokes_check": _run_stokes_check,
        "gauge_audit": _run_gauge_audit,
    }[config.task]
    result = task(config, seed)
    _require_finite_report(result.report)
    return result


def _require_finite_report(report: dict, prefix: str = ""):
    for key, value in report.items():
        where = f"{prefix}{key}"
        if isinstance(value, dict):
            _require_finite_report(value, prefix=where + ".")
        elif isinstance(value, (list, tuple)):
            if not all(math.isfinite(float(v)) for v in value):
                raise NonFiniteStateError(f"report field {where} is not finite")
        elif isinstance(value, (int, float, np.integer, np.floating)):
            if not math.isfinite(float(value)):
                raise NonFiniteStateError(f"report field {where} is not finite")


def _build_generator(config: RunConfig) -> GeneratorSpec:
    gc = config.generator
    if gc.preset is not None:
        try:
            gen = build_preset(gc.preset.name, gc.preset.params)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"generator.preset: {exc}") from exc
    elif gc.matrix is not None:
        gen = constant_generator(states_from_pairs(gc.matrix))
    else:
        try:
            with open(gc.matrix_file, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(
                f"generator.matrix_file {gc.matrix_file!r}: {exc}") from exc
        try:
            gen = constant_generator(states_from_pairs(payload))
        except (ValueError, IndexError) as exc:
            raise ConfigError(
                f"generator.matrix_file {gc.matrix_file!r}: {exc}") from exc
    if gen.dimension != config.dimension:
        raise ConfigError(
            f"generator dimension {gen.dimension} != config dimension "
            f"{config.dimension}")
    return gen


SAMPLE_PARAM_COLUMNS = ["s", "A_s"]


def _sample_table(params: np.ndarray, values: np.ndarray,
                  matrix: np.ndarray) -> tuple[list[str], np.ndarray]:
    n = matrix.shape[1]
    header = SAMPLE_PARAM_COLUMNS + [f"{part}_{k}" for k in range(n)
                                     for part in ("re", "im")]
    table = np.empty((matrix.shape[0], 2 + 2 * n))
    table[:, 0] = params
    table[:, 1] = values
    table[:, 2::2] = matrix.real
    table[:, 3::2] = matrix.imag
    return header, table


def _run_aa_phase(config: RunConfig, seed: int) -> RunResult:
    gen = _build_generator(config)
    psi0 = StateVector(states_from_pairs(config.initial_state))
    traj = integrate_schrodinger(gen, psi0, config.time.t_final, config.time.steps)
    rep = phase_report(traj, gen, cyclic_tol=config.tolerances.cyclic_tol)
    conn = connection_along(traj)
    header, table = _sample_table(conn.params, conn.values, traj.state_matrix)
    report = {
        "task": "aa_phase",
        "dimension": config.dimension,
        "total_phase": rep.total_phase,
        "dynamical_phase": wrap_angle(rep.dynamical_phase),
        "geometric_phase": rep.geometric_phase,
        "holonomy": [rep.holonomy.real, rep.holonomy.imag],
        "cyclic_residual": rep.cyclic_residual,
        "transport_residual": rep.transport_residual,
        "steps": config.time.steps,
        "t_final": config.time.t_final,
    }
    return RunResult(report, header, table)


def _unit_states_from_config(config: RunConfig) -> tuple[StateVector, StateVector]:
    # ray semantics for arc endpoints: normalize what the user supplied
    out = []
    for i, pairs in enumerate(config.states):
        v = states_from_pairs(pairs)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ConfigError(f"states[{i}] is the zero vector")
        out.append(StateVector(v / norm))
    return out[0], out[1]


def _run_pancharatnam(config: RunConfig, seed: int) -> RunResult:
    phi1, phi2 = _unit_states_from_config(config)
    samples = config.samples or 2000
    tol = config.tolerances.orthogonality_tol
    beta = relative_phase(phi1, phi2, tol=tol)
    integral = pancharatnam_integral(phi1, phi2, samples=samples, tol=tol)
    arc = geodesic_between(phi1, phi2, tol=tol)
    s = np.linspace(0.0, 1.0, samples)
    m = geodesic_sample_matrix(arc, s)
    header, table = _sample_table(s, connection_values(m, s), m)
    report = {
        "task": "pancharatnam",
        "dimension": config.dimension,
        "samples": samples,
        "relative_phase": beta,
        "connection_integral": integral,
        "deviation": circ_distance(integral, beta),
    }
    return RunResult(report, header, table)


def _run_geodesic_table(config: RunConfig, seed: int) -> RunResult:
    phi1, phi2 = _unit_states_from_config(config)
    samples = config.samples or 2000
    tol = config.tolerances.orthogonality_tol
    arc = geodesic_between(phi1, phi2, tol=tol)
    s = np.linspace(0.0, 1.0, samples)
    m = geodesic_sample_matrix(arc, s)
    values = connection_values(m, s)
    header, table = _sample_table(s, values, m)
    report = {
        "task": "geodesic_table",
        "dimension": config.dimension,
        "samples": samples,
        "overlap_magnitude": arc.a,
        "arc_length": arc.theta0,
        "phase_offset": arc.phase_offset,
        "connection_integral": float(simpson_integral(values, s)),
        "max_normalization_residual": normalization_residual(arc, samples),
    }
    return RunResult(report, header, table)


def _run_stokes_check(config: RunConfig, seed: int) -> RunResult:
    sc = config.surface
    if sc.kind == "octant":
        patch = bloch.octant_patch(sc.refinement)
        per_leg = max(3, sc.boundary_samples // 3)
        loop = bloch.octant_boundary_loop(per_leg)
    else:
        theta = 0.5 * math.pi if sc.kind == "hemisphere" else sc.theta
        patch = bloch.cap_patch(theta, sc.refinement, sc.refinement)
        loop = bloch.latitude_loop(theta, sc.boundary_samples)
    loop_phase = close_loop_phase(loop)
    flux = curvature_flux(patch)
    residual = stokes_residual(loop, patch)
    conn = connection_along(loop)
    header, table = _sample_table(conn.params, conn.values, loop.state_matrix)
    report = {
        "task": "stokes_check",
        "dimension": config.dimension,
        "kind": sc.kind,
        "refinement": sc.refinement,
        "triangle_count": int(patch.triangles.shape[0]),
        "boundary_samples": int(len(loop)),
        "loop_phase": loop_phase,
        "flux": wrap_angle(flux),
        "residual": residual,
    }
    return RunResult(report, header, table)


def _audit_base_loop(dimension: int, theta: float, samples: int) -> Trajectory:
    """Closed loop cos(t/2)e1 + sin(t/2)e^{is}e2 embedded in dimension n."""
    s = np.linspace(0.0, 2.0 * math.pi, samples)
    m = np.zeros((samples, dimension), dtype=np.complex128)
    m[:, 0] = math.cos(0.5 * theta)
    m[:, 1] = math.sin(0.5 * theta) * np.exp(1j * s)
    return Trajectory(s, m)


def _run_gauge_audit(config: RunConfig, seed: int) -> RunResult:
    audit = config.audit
    gauges = audit.gauges if audit else 100
    theta = audit.loop_theta if audit else 1.0
    samples = audit.loop_samples if audit else 2001
    loop = _audit_base_loop(config.dimension, theta, samples)
    base = close_loop_phase(loop)
    half = samples // 2 + 1
    open_traj = Trajectory(loop.times[:half], loop.state_matrix[:half])
    open_integral = line_integral(connection_along(open_traj))
    rng = np.random.default_rng(seed)
    max_dev = 0.0
    max_shift_err = 0.0
    for _ in range(gauges):
        wind = int(rng.integers(-2, 3))
        c0, c1, c2 = rng.uniform(-1.0, 1.0, size=3)
        m1, m2 = (int(v) for v in rng.integers(1, 4, size=2))

        def alpha(s, _w=wind, _c0=c0, _c1=c1, _c2=c2, _m1=m1, _m2=m2):
            return _w * s + _c0 + _c1 * math.sin(_m1 * s) + _c2 * math.cos(_m2 * s)

        gamma = close_loop_phase(gauge_transform(loop, alpha))
        max_dev = max(max_dev, circ_distance(gamma, base))
        shifted = line_integral(connection_along(gauge_transform(open_traj, alpha)))
        expected = open_integral + alpha(float(open_traj.times[-1])) - alpha(0.0)
        max_shift_err = max(max_shift_err, float(abs(shifted - expected)))
    conn = connection_along(loop)
    header, table = _sample_table(conn.params, conn.values, loop.state_matrix)
    report = {
        "task": "gauge_audit",
        "dimension": config.dimension,
        "gauges": gauges,
        "loop_theta": theta,
        "loop_samples": samples,
        "seed": seed,
        "base_loop_phase": base,
        "max_loop_gamma_deviation": max_dev,
        "max_open_shift_error": max_shift_err,
    }
    return RunResult(report, header, table)


def _format_float(x: float) -> str:
    return format(float(x), ".17g")


def _render_value(value) -> str:
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_render_value(v) for v in value) + "]"
    if isinstance(value, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {_render_value(v)}"
                          for k, v in value.items())
        return "{" + inner + "}"
    raise TypeError(f"cannot render {type(value).__name__} deterministically")


def render_report(report: dict) -> str:
    """Deterministic JSON: insertion-ordered keys, 17 significant digits."""
    lines = ["{"]
    items = list(report.items())
    for i, (key, value) in enumerate(items):
        comma = "," if i + 1 < len(items) else ""
        lines.append(f'  {json.dumps(str(key))}: {_render_value(value)}{comma}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_samples(header: list[str], samples: np.ndarray) -> str:
    """Deterministic CSV with LF endings and 17-significant-digit floats."""
    rows = [",".join(header)]
    for row in np.asarray(samples):
        rows.append(",".join(_format_float(v) for v in row))
    return "\n".join(rows) + "\n"
