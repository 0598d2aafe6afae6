"""FastAPI application: thin HTTP wrapper over the shared dispatcher.

The snapshot is loaded once at startup and shared read-only across
request handlers; replacing it (``reload_snapshot``) is an atomic
attribute swap, so in-flight requests finish on the old snapshot.
"""

from __future__ import annotations

from contextlib import asynccontextmanager

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from ..snapshot_io import load_snapshot
from .config import ServiceConfig
from .dispatch import dispatch
from .jsoncanon import dumps
from .models import ErrorInfo, QueryResponse


def create_app(config: ServiceConfig) -> FastAPI:
    @asynccontextmanager
    async def lifespan(app: FastAPI):
        app.state.snapshot = load_snapshot(config.snapshot_path)
        yield

    app = FastAPI(title="remap-analytics", lifespan=lifespan)
    app.state.snapshot = None
    app.state.config = config

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    def reload_snapshot() -> None:
        app.state.snapshot = load_snapshot(config.snapshot_path)

    app.state.reload_snapshot = reload_snapshot

    def _json(status: int, body: QueryResponse) -> Response:
        return Response(
            content=dumps(body.to_wire()),
            status_code=status,
            media_type="application/json",
        )

    @app.get("/api/v1/{rest:path}")
    def api(rest: str, request: Request) -> Response:
        snapshot = app.state.snapshot
        if snapshot is None:
            return _json(
                503,
                QueryResponse(
                    status="error",
                    error=ErrorInfo(code="NotReady", message="snapshot not loaded yet"),
                ),
            )
        status, body = dispatch(
            snapshot, f"/api/v1/{rest}", dict(request.query_params)
        )
        return _json(status, body)

    if config.static_dir is not None:
        app.mount(
            "/", StaticFiles(directory=config.static_dir, html=True), name="ui"
        )

    return app
