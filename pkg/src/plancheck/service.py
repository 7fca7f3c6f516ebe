"""Operator surface: the HTTP chat service and the benchmark harness.

The chat endpoint wraps one agent episode per request, carrying session
history so follow-up questions see prior turns. Responses mirror the
agent result exactly: output, tools used, chain log, metrics. Sessions
live in memory with an optional append-only file journal; there is no
database on purpose.
"""

from __future__ import annotations

import json
import statistics
import threading
import time
import uuid
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .agent.loop import AgentError, AgentResult, run_agent
from .agent.registry import ToolRegistry
from .llm import GeneratorUnavailable, LlmClient, Message, approx_tokens
from .mcp import tool_descriptor


@dataclass
class ChatSession:
    session_id: str
    history: list[Message] = field(default_factory=list)
    created_at: float = field(default_factory=time.time)


class SessionStore:
    """In-memory session map, safe under concurrent requests."""

    def __init__(self, journal_path: str | Path | None = None):
        self._sessions: dict[str, ChatSession] = {}
        self._lock = threading.Lock()
        self._journal = Path(journal_path) if journal_path else None

    def get_or_create(self, session_id: str | None) -> ChatSession:
        with self._lock:
            if session_id and session_id in self._sessions:
                return self._sessions[session_id]
            session = ChatSession(session_id=session_id or uuid.uuid4().hex)
            self._sessions[session.session_id] = session
            return session

    def append_turn(self, session: ChatSession, message: str, output: str) -> None:
        with self._lock:
            session.history.append({"role": "user", "content": message})
            session.history.append({"role": "assistant", "content": output})
        if self._journal:
            entry = {
                "session_id": session.session_id,
                "message": message,
                "output": output,
                "at": time.time(),
            }
            with self._lock:
                with self._journal.open("a") as fh:
                    fh.write(json.dumps(entry) + "\n")

    def __len__(self) -> int:
        return len(self._sessions)


def handle_chat(
    store: SessionStore,
    registry: ToolRegistry,
    llm: LlmClient,
    session_id: str | None,
    message: str,
) -> dict:
    """Run one chat turn; returns the response document.

    Raises ValueError on an empty message and lets GeneratorUnavailable
    and AgentError propagate for the HTTP layer to map to status codes.
    """
    if not message or not message.strip():
        raise ValueError("message must be non-empty")
    session = store.get_or_create(session_id)
    result: AgentResult = run_agent(
        registry, llm, message, history=list(session.history)
    )
    store.append_turn(session, message, result.output)
    return {"session_id": session.session_id, **result.to_dict()}


def create_app(
    registry: ToolRegistry,
    make_llm: Callable[[], LlmClient],
    journal_path: str | Path | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Build the chat service app.

    `make_llm` is called once per chat request so scripted stubs replay
    from the start each time.
    """
    app = FastAPI(title="plancheck chat service")
    store = SessionStore(journal_path)
    app.state.sessions = store

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "tools": len(registry)}

    @app.get("/api/tools")
    def tools() -> dict:
        return {"tools": [tool_descriptor(spec) for spec in registry.specs()]}

    @app.post("/api/chat")
    def chat(body: dict) -> JSONResponse:
        message = body.get("message", "")
        session_id = body.get("session_id")
        try:
            response = handle_chat(store, registry, make_llm(), session_id, message)
        except ValueError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        except GeneratorUnavailable as exc:
            return JSONResponse({"error": str(exc)}, status_code=503)
        except AgentError as exc:
            return JSONResponse(
                {"error": f"{type(exc).__name__}: {exc}"}, status_code=500
            )
        return JSONResponse(response)

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


# --- benchmark harness -------------------------------------------------------

@dataclass(frozen=True)
class BenchPrompt:
    id: str
    text: str


@dataclass(frozen=True)
class BenchRecord:
    model_label: str
    prompt_id: str
    wall_time_ms: float
    prompt_tokens: int
    completion_tokens: int
    temperature: float

    def to_dict(self) -> dict:
        return {
            "model": self.model_label,
            "prompt_id": self.prompt_id,
            "wall_time_ms": self.wall_time_ms,
            "prompt_tokens": self.prompt_tokens,
            "completion_tokens": self.completion_tokens,
            "temperature": self.temperature,
        }


def default_bench_prompts() -> list[BenchPrompt]:
    raw = json.loads(
        (resources.files("plancheck") / "data" / "bench_prompts.json").read_text()
    )
    return [BenchPrompt(item["id"], item["text"]) for item in raw]


def run_bench(
    prompts: Sequence[BenchPrompt],
    generator: LlmClient,
    repetitions: int,
    model_label: str = "stub",
    temperature: float = 0.0,
    timer: Callable[[], float] = time.perf_counter,
) -> tuple[list[BenchRecord], list[dict]]:
    """Time `repetitions` generations per prompt; exact summary stats.

    Returns (records, per-prompt summaries with mean/min/max wall time
    and completion tokens). `timer` is injectable so stubs can simulate
    constant latency.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    records: list[BenchRecord] = []
    for prompt in prompts:
        for _ in range(repetitions):
            started = timer()
            completion = generator.generate(
                [{"role": "user", "content": prompt.text}], temperature=temperature
            )
            elapsed_ms = (timer() - started) * 1000.0
            records.append(
                BenchRecord(
                    model_label=model_label,
                    prompt_id=prompt.id,
                    wall_time_ms=elapsed_ms,
                    prompt_tokens=approx_tokens(prompt.text),
                    completion_tokens=approx_tokens(completion),
                    temperature=temperature,
                )
            )
    summary = []
    for prompt in prompts:
        rows = [r for r in records if r.prompt_id == prompt.id]
        times = [r.wall_time_ms for r in rows]
        tokens = [r.completion_tokens for r in rows]
        summary.append(
            {
                "prompt_id": prompt.id,
                "runs": len(rows),
                "wall_time_ms": {
                    "mean": statistics.mean(times),
                    "min": min(times),
                    "max": max(times),
                },
                "completion_tokens": {
                    "mean": statistics.mean(tokens),
                    "min": min(tokens),
                    "max": max(tokens),
                },
            }
        )
    return records, summary
