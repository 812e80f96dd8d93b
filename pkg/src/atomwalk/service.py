"""HTTP front end: one POST endpoint per experiment.

Request validation errors surface as 422; a simulation that would push
amplitude past the allocated lattice returns 400 so clients can tell
"bad request shape" from "parameters need a larger lattice".
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .runners import (
    run_collide,
    run_electric,
    run_hom,
    run_lg,
    run_walk,
    run_widthscan,
)
from .schemas import (
    CollideRequest,
    CollideResponse,
    ElectricRequest,
    ElectricResponse,
    HomRequest,
    HomResponse,
    LGRequest,
    LGResponse,
    WalkRequest,
    WalkResponse,
    WidthScanRequest,
    WidthScanResponse,
)
from .states import BoundaryOverflowError

app = FastAPI(title="atomwalk", version=__version__)


def _run(runner, request):
    try:
        return runner(request)
    except BoundaryOverflowError as exc:
        raise HTTPException(status_code=400, detail=f"boundary overflow: {exc}")
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/walk", response_model=WalkResponse)
def walk(request: WalkRequest) -> WalkResponse:
    return _run(run_walk, request)


@app.post("/widthscan", response_model=WidthScanResponse)
def widthscan(request: WidthScanRequest) -> WidthScanResponse:
    return _run(run_widthscan, request)


@app.post("/electric", response_model=ElectricResponse)
def electric(request: ElectricRequest) -> ElectricResponse:
    return _run(run_electric, request)


@app.post("/lg", response_model=LGResponse)
def lg(request: LGRequest) -> LGResponse:
    return _run(run_lg, request)


@app.post("/hom", response_model=HomResponse)
def hom(request: HomRequest) -> HomResponse:
    return _run(run_hom, request)


@app.post("/collide", response_model=CollideResponse)
def collide(request: CollideRequest) -> CollideResponse:
    return _run(run_collide, request)
