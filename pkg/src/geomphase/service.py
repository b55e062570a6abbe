"""HTTP face of the runner.  The CLI's RunConfig doubles as the request body,
so files-on-disk runs and service runs validate and compute identically.

POST /run       -> {"report": {...}, "samples_csv": "..."}
POST /validate  -> {"valid": bool, "error": str | null}
GET  /version, GET /presets
"""

from __future__ import annotations

from fastapi import Body, FastAPI, HTTPException
from pydantic import BaseModel

from . import __version__
from .config import RunConfig, parse_config
from .errors import ConfigError, GeomphaseError
from .presets import PRESET_BUILDERS
from .runner import execute, render_samples

__all__ = ["app", "create_app"]


class RunResponse(BaseModel):
    report: dict
    samples_csv: str


class ValidateResponse(BaseModel):
    valid: bool
    error: str | None = None


class VersionResponse(BaseModel):
    name: str
    version: str


def create_app() -> FastAPI:
    app = FastAPI(title="geomphase",
                  description="geometric and Pancharatnam phase computations",
                  version=__version__)

    @app.get("/version", response_model=VersionResponse)
    def version() -> VersionResponse:
        return VersionResponse(name="geomphase", version=__version__)

    @app.get("/presets")
    def presets() -> dict:
        return {"presets": sorted(PRESET_BUILDERS)}

    @app.post("/run", response_model=RunResponse)
    def run(config: RunConfig) -> RunResponse:
        try:
            result = execute(config)
        except ConfigError as exc:
            raise HTTPException(status_code=422, detail={
                "category": exc.category, "message": str(exc)})
        except GeomphaseError as exc:
            raise HTTPException(status_code=400, detail={
                "category": exc.category, "message": str(exc)})
        # report rendered through the same serializer as the CLI so both
        # faces emit identical bytes for identical configs
        return RunResponse(report=result.report,
                           samples_csv=render_samples(result.samples_header,
                                                      result.samples))

    @app.post("/validate", response_model=ValidateResponse)
    def validate(payload: dict = Body(...)) -> ValidateResponse:
        try:
            parse_config(payload)
        except ConfigError as exc:
            return ValidateResponse(valid=False, error=str(exc))
        return ValidateResponse(valid=True)

    return app


app = create_app()
