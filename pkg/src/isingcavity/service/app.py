"""FastAPI wiring around the compute handlers.

Error translation: domain problems map to 400, the SQUID inductance
divergence to 409, numerical faults (critical-point guard, failed root
bracketing) to 500 with a structured detail; request-shape problems get
FastAPI's usual 422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import (
    CriticalPointError,
    DomainError,
    InductanceDivergenceError,
    RootScanError,
)
from . import handlers
from . import schemas as sc

app = FastAPI(
    title="isingcavity",
    version=__version__,
    description=(
        "Steady states, hysteresis and phase boundaries of a driven "
        "resonator coupled to a transverse-field Ising qubit array."
    ),
)


@app.exception_handler(DomainError)
async def _domain_error(_: Request, exc: DomainError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc), "error": "domain"})


@app.exception_handler(InductanceDivergenceError)
async def _divergence(_: Request, exc: InductanceDivergenceError) -> JSONResponse:
    return JSONResponse(status_code=409, content={"detail": str(exc), "error": "divergence"})


@app.exception_handler(CriticalPointError)
async def _critical(_: Request, exc: CriticalPointError) -> JSONResponse:
    return JSONResponse(status_code=500, content={"detail": str(exc), "error": "numerical"})


@app.exception_handler(RootScanError)
async def _rootscan(_: Request, exc: RootScanError) -> JSONResponse:
    return JSONResponse(status_code=500, content={"detail": str(exc), "error": "numerical"})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/steady-states", response_model=sc.SteadyStatesResponse)
def steady_states(req: sc.SteadyStatesRequest) -> sc.SteadyStatesResponse:
    return handlers.compute_steady_states(req)


@app.post("/scurve", response_model=sc.ScurveResponse)
def scurve(req: sc.ScurveRequest) -> sc.ScurveResponse:
    return handlers.compute_scurve(req)


@app.post("/sweep", response_model=sc.SweepResponse)
def sweep(req: sc.SweepRequest) -> sc.SweepResponse:
    return handlers.compute_sweep(req)


@app.post("/thresholds", response_model=sc.ThresholdsResponse)
def thresholds(req: sc.ThresholdsRequest) -> sc.ThresholdsResponse:
    return handlers.compute_thresholds(req)


@app.post("/fig2", response_model=sc.Fig2Response)
def fig2(req: sc.Fig2Request) -> sc.Fig2Response:
    return handlers.compute_fig2(req)


@app.post("/circuit/derive", response_model=sc.DerivedCouplingsOut)
def circuit_derive(req: sc.CircuitRequest) -> sc.DerivedCouplingsOut:
    return handlers.compute_circuit(req)


@app.post("/tfim/observables", response_model=sc.TfimResponse)
def tfim_observables(req: sc.TfimRequest) -> sc.TfimResponse:
    return handlers.compute_tfim(req)
