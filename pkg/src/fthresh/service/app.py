"""FastAPI application exposing the toolkit over HTTP.

Run with `uvicorn fthresh.service.app:app`.  Errors come back as a JSON body
{"kind", "message"} where kind is one of parse_error / precondition /
budget / internal, mirroring the CLI exit codes.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import (BudgetExceededError, FThreshError, InternalCheckError,
                      PreconditionError, SessionSyntaxError)
from .handlers import ROUTES

_ERROR_STATUS = {
    "parse_error": 400,
    "precondition": 409,
    "budget": 429,
    "internal": 500,
}


def error_kind(exc: Exception) -> str:
    if isinstance(exc, SessionSyntaxError) or isinstance(exc, ValueError):
        return "parse_error"
    if isinstance(exc, BudgetExceededError):
        return "budget"
    if isinstance(exc, InternalCheckError):
        return "internal"
    if isinstance(exc, PreconditionError):
        return "precondition"
    return "internal"


def create_app() -> FastAPI:
    app = FastAPI(title="fthresh", version=__version__,
                  description="Exact F-thresholds, Frobenius powers, Newton "
                              "polyhedra and multiplicity-bound checkers over F_p")

    @app.get("/")
    def info() -> dict:
        return {"name": "fthresh", "version": __version__,
                "endpoints": sorted(ROUTES)}

    def register(path: str, request_model, handler, response_model) -> None:
        def endpoint(body):
            return handler(body)

        # explicit annotation: the lazy-annotations future would otherwise
        # leave fastapi a string it cannot resolve from module globals
        endpoint.__annotations__ = {"body": request_model}
        endpoint.__name__ = "post_" + path.strip("/").replace("/", "_").replace("-", "_")
        app.post(path, response_model=response_model)(endpoint)

    for path, (request_model, handler, response_model) in ROUTES.items():
        register(path, request_model, handler, response_model)

    @app.exception_handler(FThreshError)
    def fthresh_error(_: Request, exc: FThreshError) -> JSONResponse:
        kind = error_kind(exc)
        return JSONResponse(status_code=_ERROR_STATUS[kind],
                            content={"kind": kind, "message": str(exc)})

    @app.exception_handler(ValueError)
    def value_error(_: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400,
                            content={"kind": "parse_error", "message": str(exc)})

    return app


app = create_app()
