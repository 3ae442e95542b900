"""HTTP facade over the answer pipeline.

Endpoints: POST /api/query, GET /api/schema, GET /api/history, GET /healthz,
plus static serving of the built chat UI at /. Transport and semantics stay
separate: HTTP 4xx only for protocol violations (malformed JSON, unknown
fields, oversize text); every pipeline outcome is a 200 whose body carries
an explicit status. Sessions are in-memory only and exist to render the
chat transcript.
"""

from __future__ import annotations

import os
import threading
import time
import uuid
from collections import deque
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict

from .nl import TRANSLATOR_MODES, Engine, answer

MAX_QUERY_CHARS = 2_000
SESSION_HISTORY_CAP = 100

ENV_BIND_ADDR = "AMKG_BIND_ADDR"
ENV_SEED_PATH = "AMKG_SEED_PATH"
ENV_TRANSLATOR_MODE = "AMKG_TRANSLATOR_MODE"
DEFAULT_BIND_ADDR = "127.0.0.1:8080"

_FALLBACK_PAGE = """<!doctype html>
<html><head><title>amkg</title></head>
<body><h1>amkg service</h1>
<p>The chat UI bundle is not built. The JSON API is live under /api.</p>
</body></html>
"""


class QueryRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    text: str
    session_id: str | None = None
    translator_mode: str | None = None


class SessionStore:
    """In-memory per-session history, newest 100 entries kept."""

    def __init__(self, cap: int = SESSION_HISTORY_CAP) -> None:
        self._cap = cap
        self._lock = threading.Lock()
        self._sessions: dict[str, dict] = {}

    def record(self, session_id: str | None, entry: dict) -> str:
        with self._lock:
            if session_id is None or session_id not in self._sessions:
                session_id = session_id or uuid.uuid4().hex
                self._sessions.setdefault(
                    session_id,
                    {"created_at": time.time(), "entries": deque(maxlen=self._cap)},
                )
            self._sessions[session_id]["entries"].append(entry)
            return session_id

    def history(self, session_id: str) -> list[dict]:
        with self._lock:
            session = self._sessions.get(session_id)
            return list(session["entries"]) if session else []


def default_ui_dir() -> Path:
    return Path(__file__).resolve().parents[2] / "frontend" / "dist"


def create_app(engine: Engine | None = None, ui_dir: Path | None = None) -> FastAPI:
    """Build the application. The engine loads the shipped seed by default;
    set AMKG_SEED_PATH / AMKG_TRANSLATOR_MODE to override."""
    if engine is None:
        mode = os.environ.get(ENV_TRANSLATOR_MODE, "rule")
        seed_path = os.environ.get(ENV_SEED_PATH)
        if seed_path:
            engine = Engine.from_seed_text(
                Path(seed_path).read_text(encoding="utf-8"), mode=mode
            )
        else:
            engine = Engine.default(mode=mode)
    if ui_dir is None:
        ui_dir = default_ui_dir()

    app = FastAPI(title="amkg", docs_url=None, redoc_url=None)
    sessions = SessionStore()
    schema_body = engine.schema.to_json()

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        # protocol violations (bad JSON, unknown fields) are 400, not 422
        return JSONResponse(status_code=400, content={"error": str(exc.errors()[:3])})

    @app.post("/api/query")
    def handle_query(request: QueryRequest) -> JSONResponse:
        text = request.text.strip()
        if len(text) > MAX_QUERY_CHARS:
            return JSONResponse(
                status_code=400,
                content={"error": f"text exceeds {MAX_QUERY_CHARS} characters"},
            )
        mode = request.translator_mode
        if mode is not None and mode not in TRANSLATOR_MODES:
            return JSONResponse(
                status_code=400, content={"error": f"unknown translator_mode {mode!r}"}
            )
        result = answer(text, engine, mode=mode)
        session_id = sessions.record(
            request.session_id,
            {
                "text": text,
                "status": result.status,
                "answer_text": result.text,
                "cypher": result.cypher,
                "intent": result.intent,
            },
        )
        return JSONResponse(
            content={
                "status": result.status,
                "answer_text": result.text,
                "cypher": result.cypher,
                "columns": list(result.columns),
                "rows": [list(row) for row in result.rows],
                "intent": result.intent,
                "elapsed_ms": result.elapsed_ms,
                "session_id": session_id,
            }
        )

    @app.get("/api/schema")
    def handle_schema() -> Response:
        return Response(content=schema_body, media_type="application/json")

    @app.get("/api/history")
    def handle_history(session_id: str = "") -> dict:
        return {"session_id": session_id, "entries": sessions.history(session_id)}

    @app.get("/healthz")
    def handle_health() -> dict:
        return {
            "status": "ok",
            "nodes": engine.graph.node_count,
            "edges": engine.graph.edge_count,
        }

    if ui_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/")
        def index() -> HTMLResponse:
            return HTMLResponse(content=_FALLBACK_PAGE)

    return app


def parse_bind_addr(value: str) -> tuple[str, int]:
    host, _, port = value.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"bind address must be HOST:PORT, got {value!r}")
    return host, int(port)


def serve(engine: Engine | None = None, bind_addr: str | None = None) -> None:
    """Run the service until interrupted."""
    import uvicorn

    host, port = parse_bind_addr(
        bind_addr or os.environ.get(ENV_BIND_ADDR, DEFAULT_BIND_ADDR)
    )
    uvicorn.run(create_app(engine), host=host, port=port, log_level="info")
