"""HTTP face of the verification engine.

Wraps the runner layer; verification outcomes are data (the exit_code field
of the envelope), while malformed requests map to HTTP 400.  A long-running
service amortizes the expensive solver certificates across requests because
the certificate cache lives in the process.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import runner
from ..reports import canonical_json
from .models import (AlgebraRequest, CatalogDumpRequest, CocyclesRequest,
                     CommandResponse, CupRelationsRequest, DeformRequest,
                     NontrivialRequest)

app = FastAPI(
    title="superdeform",
    description="Exact verification of the osp(2|2) density-module calculus: "
                "structure constants, cocycle catalog, cup-product identities, "
                "coboundary certificates, deformation integrability.",
    version="0.1.0",
)


def _guarded(fn, *args, **kwargs) -> CommandResponse:
    try:
        code, payload = fn(*args, **kwargs)
    except runner.InputError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return CommandResponse(exit_code=code, payload=payload)


@app.get("/healthz")
def healthz() -> dict:
    return {"ok": True}


@app.post("/verify/structure", response_model=CommandResponse)
def verify_structure() -> CommandResponse:
    return _guarded(runner.run_structure)


@app.post("/verify/algebra", response_model=CommandResponse)
def verify_algebra(req: AlgebraRequest) -> CommandResponse:
    return _guarded(runner.run_algebra, req.seed, req.cases)


@app.post("/verify/cocycles", response_model=CommandResponse)
def verify_cocycles(req: CocyclesRequest) -> CommandResponse:
    return _guarded(runner.run_cocycles, req.d, req.m, req.k_range,
                    req.families, req.workers)


@app.post("/verify/cup-relations", response_model=CommandResponse)
def verify_cup_relations(req: CupRelationsRequest) -> CommandResponse:
    return _guarded(runner.run_cup_relations, req.k_range)


@app.post("/nontrivial", response_model=CommandResponse)
def nontrivial(req: NontrivialRequest) -> CommandResponse:
    return _guarded(runner.run_nontrivial, req.case, req.k, req.d, req.m,
                    req.bounds, req.weight_prune)


@app.post("/deform/check", response_model=CommandResponse)
def deform_check(req: DeformRequest) -> CommandResponse:
    return _guarded(runner.run_deform_check, req.params)


@app.post("/deform/verify", response_model=CommandResponse)
def deform_verify(req: DeformRequest) -> CommandResponse:
    return _guarded(runner.run_deform_verify, req.params, req.K)


@app.post("/catalog/dump", response_model=CommandResponse)
def catalog_dump(req: CatalogDumpRequest) -> CommandResponse:
    return _guarded(runner.run_catalog_dump, req.family, req.k, req.d)
