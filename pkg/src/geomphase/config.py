"""Run configuration: pydantic models shared by the CLI (JSON config files)
and the HTTP service (request bodies).  Unknown keys are fatal everywhere.

Complex amplitudes are spelled as [re, im] pairs in configs.
"""

from __future__ import annotations

import json
import math
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import ConfigError

__all__ = [
    "RunConfig",
    "GeneratorConfig",
    "PresetConfig",
    "TimeConfig",
    "TolerancesConfig",
    "SurfaceConfig",
    "AuditConfig",
    "OutputConfig",
    "parse_config",
    "load_config",
    "states_from_pairs",
    "format_validation_error",
]

TaskName = Literal["aa_phase", "pancharatnam", "geodesic_table",
                   "stokes_check", "gauge_audit"]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PresetConfig(_Strict):
    name: str
    params: dict[str, float] = Field(default_factory=dict)


class GeneratorConfig(_Strict):
    preset: Optional[PresetConfig] = None
    matrix: Optional[list[list[list[float]]]] = None  # [row][col] = [re, im]
    matrix_file: Optional[str] = None

    @model_validator(mode="after")
    def _one_source(self):
        given = [k for k in ("preset", "matrix", "matrix_file")
                 if getattr(self, k) is not None]
        if len(given) != 1:
            raise ValueError(
                "generator needs exactly one of 'preset', 'matrix', "
                f"'matrix_file' (got {given or 'none'})")
        if self.matrix is not None:
            n = len(self.matrix)
            if n < 2 or any(len(row) != n for row in self.matrix):
                raise ValueError("generator.matrix must be square with n >= 2")
            for row in self.matrix:
                for entry in row:
                    if len(entry) != 2:
                        raise ValueError(
                            "generator.matrix entries must be [re, im] pairs")
        return self


class TimeConfig(_Strict):
    t_final: float = Field(gt=0.0)
    steps: int = Field(ge=2)


class TolerancesConfig(_Strict):
    cyclic_tol: float = Field(default=1e-6, gt=0.0)
    orthogonality_tol: float = Field(default=1e-10, gt=0.0)


class SurfaceConfig(_Strict):
    kind: Literal["octant", "hemisphere", "cap"]
    refinement: int = Field(default=64, ge=1)
    theta: Optional[float] = None  # cap opening angle, required for kind="cap"
    boundary_samples: int = Field(default=2000, ge=9)

    @model_validator(mode="after")
    def _cap_theta(self):
        if self.kind == "cap":
            if self.theta is None:
                raise ValueError("surface.theta is required for kind='cap'")
            if not 0.0 < self.theta < math.pi:
                raise ValueError("surface.theta must lie strictly between 0 and pi")
        elif self.theta is not None:
            raise ValueError(f"surface.theta is not used for kind={self.kind!r}")
        return self


class AuditConfig(_Strict):
    gauges: int = Field(default=100, ge=1)
    loop_theta: float = Field(default=1.0, gt=0.0, lt=math.pi)
    loop_samples: int = Field(default=2001, ge=65)


class OutputConfig(_Strict):
    report_path: Optional[str] = None
    samples_path: Optional[str] = None


class RunConfig(_Strict):
    """One task run.  Sections irrelevant to the task must be omitted."""

    task: TaskName
    dimension: int = Field(ge=2)
    generator: Optional[GeneratorConfig] = None
    initial_state: Optional[list[list[float]]] = None  # [re, im] pairs
    states: Optional[list[list[list[float]]]] = None  # two states for arcs
    time: Optional[TimeConfig] = None
    samples: Optional[int] = Field(default=None, ge=64)
    tolerances: TolerancesConfig = Field(default_factory=TolerancesConfig)
    surface: Optional[SurfaceConfig] = None
    audit: Optional[AuditConfig] = None
    seed: int = 0
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def _per_task(self):
        needs = {
            "aa_phase": ("generator", "initial_state", "time"),
            "pancharatnam": ("states",),
            "geodesic_table": ("states",),
            "stokes_check": ("surface",),
            "gauge_audit": (),
        }[self.task]
        allowed = set(needs) | {"tolerances", "seed", "output"}
        if self.task in ("pancharatnam", "geodesic_table"):
            allowed.add("samples")
        if self.task == "gauge_audit":
            allowed.add("audit")
        for name in needs:
            if getattr(self, name) is None:
                raise ValueError(f"task {self.task!r} requires section {name!r}")
        for name in ("generator", "initial_state", "states", "time",
                     "samples", "surface", "audit"):
            if name not in allowed and getattr(self, name) is not None:
                raise ValueError(
                    f"section {name!r} does not apply to task {self.task!r}")
        if self.initial_state is not None:
            if any(len(p) != 2 for p in self.initial_state):
                raise ValueError("initial_state entries must be [re, im] pairs")
            if len(self.initial_state) != self.dimension:
                raise ValueError(
                    f"initial_state has {len(self.initial_state)} components, "
                    f"dimension is {self.dimension}")
        if self.states is not None:
            if len(self.states) != 2:
                raise ValueError("states must contain exactly two states")
            for i, st in enumerate(self.states):
                if len(st) != self.dimension:
                    raise ValueError(
                        f"states[{i}] has {len(st)} components, dimension is "
                        f"{self.dimension}")
                if any(len(p) != 2 for p in st):
                    raise ValueError(
                        f"states[{i}] entries must be [re, im] pairs")
        if self.generator is not None and self.generator.matrix is not None:
            if len(self.generator.matrix) != self.dimension:
                raise ValueError(
                    f"generator.matrix is {len(self.generator.matrix)}x"
                    f"{len(self.generator.matrix)}, dimension is {self.dimension}")
        if self.task == "stokes_check" and self.dimension != 2:
            raise ValueError("stokes_check requires dimension = 2")
        return self


def format_validation_error(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors()[:3]:
        loc = ".".join(str(p) for p in err["loc"]) or "config"
        parts.append(f"{loc}: {err['msg']}")
    more = len(exc.errors()) - 3
    if more > 0:
        parts.append(f"(+{more} more)")
    return "; ".join(parts)


def parse_config(payload: dict) -> RunConfig:
    """Validate an already-parsed JSON object."""
    try:
        return RunConfig.model_validate(payload)
    except ValidationError as exc:
        raise ConfigError(format_validation_error(exc)) from exc


def load_config(path: str) -> RunConfig:
    """Read and validate a JSON config file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config {path!r} is not valid JSON (line {exc.lineno}, "
            f"column {exc.colno}: {exc.msg})") from exc
    if not isinstance(payload, dict):
        raise ConfigError("config root must be a JSON object")
    return parse_config(payload)


def states_from_pairs(pairs) -> np.ndarray:
    """[[re, im], ...] -> complex vector."""
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]
