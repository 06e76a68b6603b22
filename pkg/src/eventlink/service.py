"""HTTP JSON API over one loaded graph snapshot.

All endpoints are read-only; the engine is built once and shared across
requests. Responses for identical requests are byte-identical when the
template generator is in use.
"""

from __future__ import annotations

import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .answer import HttpTextGenerator, NullTextGenerator
from .config import SAMPLE_QUERIES, ServiceConfig
from .errors import NoPersonsFound, TooManyPersons, UnknownEntity
from .pipeline import QueryEngine
from .query import MAX_QUERY_PERSONS

log = logging.getLogger(__name__)

MAX_QUESTION_LENGTH = 1000


class QueryRequest(BaseModel):
    question: str = Field(min_length=1, max_length=MAX_QUESTION_LENGTH)


def build_engine(config: ServiceConfig) -> QueryEngine:
    generator = (
        HttpTextGenerator(config.generator_url)
        if config.generator_url
        else NullTextGenerator()
    )
    return QueryEngine.from_data_dir(config.data_dir, config=config, generator=generator)


def create_app(config: ServiceConfig | None = None, engine: QueryEngine | None = None) -> FastAPI:
    """Build the API app; pass ``engine=None`` with ``config=None`` defaults to the bundled fixture.

    The engine is loaded eagerly unless construction is deferred by passing a
    config and monkeypatching; endpoints answer 503 until ``app.state.engine``
    is set (see ``create_unloaded_app`` for the pre-load state).
    """
    if engine is None:
        engine = build_engine(config if config is not None else ServiceConfig())
    app = _base_app(config if config is not None else ServiceConfig())
    app.state.engine = engine
    return app


def create_unloaded_app(config: ServiceConfig | None = None) -> FastAPI:
    """App shell without a dataset; every endpoint reports 503 until one is attached."""
    return _base_app(config if config is not None else ServiceConfig())


def _base_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="eventlink", version="0.1.0")
    app.state.engine = None
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[config.cors_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def engine_or_none(request: Request) -> QueryEngine | None:
        return request.app.state.engine

    @app.post("/api/query")
    def query(body: QueryRequest, request: Request):
        engine = engine_or_none(request)
        if engine is None:
            return JSONResponse(status_code=503, content={"error": "dataset_not_loaded"})
        try:
            return engine.respond(body.question)
        except NoPersonsFound:
            return JSONResponse(
                status_code=400,
                content={"error": "no_persons_found", "sample_queries": SAMPLE_QUERIES},
            )
        except TooManyPersons:
            return JSONResponse(
                status_code=400,
                content={"error": "too_many_persons", "limit": MAX_QUERY_PERSONS},
            )
        except Exception:
            log.exception("query failed: %r", body.question)
            return JSONResponse(status_code=500, content={"error": "internal_error"})

    @app.get("/api/entity/{entity_id}")
    def entity(entity_id: str, request: Request):
        engine = engine_or_none(request)
        if engine is None:
            return JSONResponse(status_code=503, content={"error": "dataset_not_loaded"})
        try:
            return engine.entity(entity_id)
        except UnknownEntity:
            return JSONResponse(status_code=404, content={"error": "unknown_entity"})

    @app.get("/api/health")
    def health(request: Request):
        engine = engine_or_none(request)
        if engine is None:
            return JSONResponse(status_code=503, content={"status": "loading"})
        return engine.stats()

    return app


def run(config: ServiceConfig) -> None:
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
