"""HTTP surface of the telemetry service.

Thin JSON wrappers over TelemetryService; all domain behavior lives in the
engine. When a frontend directory is supplied its files are served under /,
so the teacher dashboard and student portal ride on the same origin as the
API.
"""
from __future__ import annotations

import time
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import codec
from .errors import LakelandError
from .service import TelemetryService

# every other LakelandError maps to 400
_STATUS_BY_CODE = {
    "NOT_REGISTERED": 404,
    "UNKNOWN_CLASS": 404,
    "DUPLICATE_NAME": 409,
    "SEQUENCE_GAP": 409,
}


def now_ms() -> int:
    return int(time.time() * 1000)


class RegisterBody(BaseModel):
    name: str


class IngestBody(BaseModel):
    session_id: str
    events: list[dict]


def create_app(
    service: TelemetryService,
    poll_s: float = 5.0,
    static_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="lakeland-live", docs_url=None, redoc_url=None)
    app.state.service = service
    app.state.poll_s = poll_s

    @app.exception_handler(LakelandError)
    async def domain_error(_request: Request, exc: LakelandError):
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse({"error": exc.code, "detail": str(exc)}, status_code=status)

    @app.exception_handler(RequestValidationError)
    async def body_error(_request: Request, exc: RequestValidationError):
        return JSONResponse({"error": "MALFORMED", "detail": str(exc)}, status_code=400)

    @app.post("/api/classes", status_code=201)
    def create_class():
        return {"code": service.create_class(now_ms())}

    @app.post("/api/classes/{code}/players", status_code=201)
    def register_player(code: str, body: RegisterBody):
        session_id, play_url = service.register_player(code, body.name, now_ms())
        return {"session_id": session_id, "play_url": play_url}

    @app.post("/api/ingest")
    def ingest(body: IngestBody):
        events = [codec.event_from_obj(obj) for obj in body.events]
        ack = service.ingest_batch(body.session_id, events, now_ms())
        return {"session_id": ack.session_id, "last_seq": ack.last_seq}

    @app.get("/api/classes/{code}/dashboard")
    def dashboard(code: str, at: int | None = None):
        # `at` pins the snapshot instant; used to verify replay determinism
        return JSONResponse(service.class_dashboard(code, at if at is not None else now_ms()))

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "events": service.event_count}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="frontend")

    return app
