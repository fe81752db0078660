"""FastAPI application exposing the loss calculator.

POST /eval      full evaluation of one design
POST /sweep     parameter sweep, optionally both transverse truncations
POST /validate  run the oracle suite against a design
GET  /healthz   liveness and version
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import NumericalError, ValidationError
from . import api
from .models import (
    DesignModel,
    EvalResponse,
    HealthResponse,
    SweepRequest,
    SweepResponse,
    ValidateResponse,
)

app = FastAPI(
    title="armourloss",
    version=__version__,
    description="Armour losses of three-core power cables",
)


@app.exception_handler(ValidationError)
async def _validation_error(request: Request, exc: ValidationError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(NumericalError)
async def _numerical_error(request: Request, exc: NumericalError) -> JSONResponse:
    return JSONResponse(status_code=500, content={"detail": str(exc)})


@app.get("/healthz", response_model=HealthResponse)
async def healthz() -> HealthResponse:
    return HealthResponse(version=__version__)


@app.post("/eval", response_model=EvalResponse)
def eval_design(design: DesignModel) -> EvalResponse:
    return api.evaluate(design)


@app.post("/sweep", response_model=SweepResponse)
def sweep_design(request: SweepRequest) -> SweepResponse:
    return api.sweep(request)


@app.post("/validate", response_model=ValidateResponse)
def validate_design(design: DesignModel) -> ValidateResponse:
    return api.validate(design)
