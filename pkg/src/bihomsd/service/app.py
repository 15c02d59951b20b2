"""FastAPI application exposing the engine over HTTP."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import EngineError, PreconditionError, SchemaError
from . import handlers
from . import models as m

app = FastAPI(
    title="bihomsd",
    description=(
        "Exact computer algebra for finite-dimensional BiHom-superdialgebras: "
        "axiom checking, twisting, quotients, morphisms and derivation spaces."
    ),
    version="0.1.0",
)


@app.exception_handler(SchemaError)
async def schema_error(_: Request, exc: SchemaError) -> JSONResponse:
    body = m.ErrorBody(error="SchemaError", detail=str(exc), name=exc.field)
    return JSONResponse(status_code=422, content=body.model_dump())


@app.exception_handler(PreconditionError)
async def precondition_error(_: Request, exc: PreconditionError) -> JSONResponse:
    body = m.ErrorBody(
        error="PreconditionError",
        detail=str(exc),
        name=exc.name,
        witness=list(exc.witness),
    )
    return JSONResponse(status_code=409, content=body.model_dump())


@app.exception_handler(EngineError)
async def engine_error(_: Request, exc: EngineError) -> JSONResponse:
    body = m.ErrorBody(error=type(exc).__name__, detail=str(exc))
    return JSONResponse(status_code=400, content=body.model_dump())


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": app.version}


@app.post("/check", response_model=m.CheckResponse)
def check(req: m.CheckRequest) -> m.CheckResponse:
    return handlers.handle_check(req)


@app.post("/twist", response_model=m.InstanceResponse)
def twist(req: m.TwistRequest) -> m.InstanceResponse:
    return handlers.handle_twist(req)


@app.post("/derivations", response_model=m.DerivationsResponse)
def derivations(req: m.DerivationsRequest) -> m.DerivationsResponse:
    return handlers.handle_derivations(req)


@app.post("/ideal", response_model=m.IdealResponse)
def ideal(req: m.SubspaceRequest) -> m.IdealResponse:
    return handlers.handle_ideal(req)


@app.post("/quotient", response_model=m.QuotientResponse)
def quotient(req: m.SubspaceRequest) -> m.QuotientResponse:
    return handlers.handle_quotient(req)


@app.post("/morphism", response_model=m.MorphismResponse)
def morphism(req: m.MorphismRequest) -> m.MorphismResponse:
    return handlers.handle_morphism(req)


@app.post("/ad", response_model=m.AdResponse)
def ad(req: m.AdRequest) -> m.AdResponse:
    return handlers.handle_ad(req)


@app.post("/bracket", response_model=m.BracketResponse)
def bracket_closure(req: m.BracketRequest) -> m.BracketResponse:
    return handlers.handle_bracket(req)


@app.post("/from-differential", response_model=m.InstanceResponse)
def from_differential(req: m.CheckRequest) -> m.InstanceResponse:
    return handlers.handle_from_differential(req)


@app.post("/corpus", response_model=m.CorpusResponse)
def corpus(req: m.CorpusRequest) -> m.CorpusResponse:
    return handlers.handle_corpus(req)
