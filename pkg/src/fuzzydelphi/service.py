"""HTTP+JSON API for the moderator dashboard.

Uploaded rounds live in in-memory sessions keyed by unguessable tokens;
results are immutable once evaluated and every view option (epsilon
what-if, trimming, column filtering, search, sorting) is computed per
request, never mutating stored state.  Optional snapshot-to-disk keeps
sessions across restarts.  The dashboard bundle, when built, is served
statically at the root.
"""

from __future__ import annotations

import json
import re
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import click
from fastapi import FastAPI, HTTPException, Response, UploadFile
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import engine
from .ingestion import ValidationError, assemble_round
from .linguistic import from_label, S7
from .model import RoundInput
from .report import (
    DEFAULT_SCORE_LABELS,
    build_report,
    comparison_to_json,
    score_label,
)

__all__ = ["create_app", "main", "SessionStore"]

DEFAULT_EPSILON = 0.75
TRIM_PATTERN = re.compile(r"^s([0-6])$")

FILTERS = {
    "all": None,  # every column
    "clarity": ("clarity_beta",),
    "writing": ("writing_beta",),
    "presence": ("presence_beta",),
    "answering_scale": ("answering_scale_beta",),
    "relevance": ("w_avg",),
    "consensus": ("ci", "cs", "ri", "rs"),
}

# Always present regardless of the column filter.
BASE_COLUMNS = (
    "ordinal",
    "description",
    "dimension",
    "is_index",
    "is_alpha",
    "is_beta",
    "is_label",
)

SORT_KEYS = {
    "ordinal": "ordinal",
    "description": "description",
    "is": "is_beta",
    "score": "is_beta",
    "ci": "ci",
    "ri": "ri",
    "w_avg": "w_avg",
    "relevance": "w_avg",
    "clarity": "clarity_beta",
    "writing": "writing_beta",
    "presence": "presence_beta",
    "answering_scale": "answering_scale_beta",
    "z": "z_beta",
}


@dataclass
class StoredRound:
    round_input: RoundInput
    result: engine.RoundResult
    report: dict[str, Any]
    raw_sheets: dict[str, str | None]


@dataclass
class Session:
    session_id: str
    rounds: dict[int, StoredRound] = field(default_factory=dict)
    created_at: float = field(default_factory=time.time)
    last_access: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Sessions keyed by token; uploads serialize, reads are lock-free."""

    def __init__(self, ttl_seconds: float | None = None, snapshot_dir: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self.ttl = ttl_seconds
        self.snapshot_dir = Path(snapshot_dir) if snapshot_dir else None
        if self.snapshot_dir:
            self.snapshot_dir.mkdir(parents=True, exist_ok=True)
            self._load_snapshots()

    def create(self) -> Session:
        session = Session(session_id=secrets.token_urlsafe(16))
        with self._lock:
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        self._expire()
        session = self._sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        session.last_access = time.time()
        return session

    def _expire(self) -> None:
        if not self.ttl:
            return
        cutoff = time.time() - self.ttl
        with self._lock:
            for sid in [s for s, v in self._sessions.items() if v.last_access < cutoff]:
                del self._sessions[sid]

    # Snapshots keep the raw uploads; rounds are re-evaluated on load so a
    # snapshot survives schema-internal changes.
    def snapshot(self, session: Session) -> None:
        if not self.snapshot_dir:
            return
        payload = {
            "session_id": session.session_id,
            "created_at": session.created_at,
            "rounds": {
                str(n): {
                    "epsilon": stored.result.epsilon,
                    "sheets": stored.raw_sheets,
                }
                for n, stored in session.rounds.items()
            },
        }
        path = self.snapshot_dir / f"{session.session_id}.json"
        path.write_text(json.dumps(payload), "utf-8")

    def _load_snapshots(self) -> None:
        assert self.snapshot_dir is not None
        for path in sorted(self.snapshot_dir.glob("*.json")):
            try:
                payload = json.loads(path.read_text("utf-8"))
                session = Session(session_id=payload["session_id"])
                session.created_at = payload.get("created_at", time.time())
                for n, stored in payload.get("rounds", {}).items():
                    sheets = stored["sheets"]
                    session.rounds[int(n)] = _evaluate_upload(
                        int(n),
                        sheets.get("responses") or "",
                        sheets.get("dimensions"),
                        sheets.get("descriptions"),
                        float(stored.get("epsilon", DEFAULT_EPSILON)),
                    )
                self._sessions[session.session_id] = session
            except (KeyError, ValueError, ValidationError):
                continue  # a corrupt snapshot never blocks startup


def _evaluate_upload(
    round_number: int,
    responses: str,
    dimensions: str | None,
    descriptions: str | None,
    epsilon: float,
) -> StoredRound:
    round_input = assemble_round(
        round_number,
        responses=responses,
        dimensions=dimensions,
        descriptions=descriptions,
        epsilon=epsilon,
    )
    result = engine.evaluate_round(round_input)
    return StoredRound(
        round_input=round_input,
        result=result,
        report=build_report(round_input, result),
        raw_sheets={
            "responses": responses,
            "dimensions": dimensions,
            "descriptions": descriptions,
        },
    )


def _row_of(item: engine.ItemResult, report_item: dict[str, Any]) -> dict[str, Any]:
    return {
        "ordinal": item.ordinal,
        "description": report_item["description"],
        "dimension": report_item["dimension"],
        "is_index": item.score.index,
        "is_alpha": item.score.alpha,
        "is_beta": item.score.beta,
        "is_label": score_label(item.score),
        "clarity_beta": item.y[0].beta,
        "writing_beta": item.y[1].beta,
        "presence_beta": item.y[2].beta,
        "answering_scale_beta": item.y[3].beta,
        "z_beta": item.z.beta,
        "w_avg": item.w_avg,
        "rho": list(item.rho),
        "ci": item.ci,
        "cs": item.cs,
        "ri": item.ri,
        "rs": item.rs,
    }


def _apply_view(
    stored: StoredRound,
    epsilon: float | None,
    trim: str | None,
    filter_key: str,
    q: str | None,
    sort: str | None,
) -> dict[str, Any]:
    result = stored.result
    if epsilon is not None:
        if not 0.0 <= epsilon <= 1.0:
            raise HTTPException(status_code=400, detail=f"epsilon {epsilon} outside [0, 1]")
        result = engine.what_if_epsilon(result, epsilon)

    threshold = None
    if trim is not None:
        match = TRIM_PATTERN.match(trim.strip())
        if not match:
            raise HTTPException(
                status_code=400, detail=f"trim must be one of s0..s6, got {trim!r}"
            )
        threshold = from_label(int(match.group(1)), S7)
    visible, hidden_count = engine.trim(result, threshold)

    if filter_key not in FILTERS:
        raise HTTPException(
            status_code=400,
            detail=f"unknown filter {filter_key!r}; one of {sorted(FILTERS)}",
        )

    report_items = {item["ordinal"]: item for item in stored.report["items"]}
    rows = [_row_of(item, report_items[item.ordinal]) for item in visible]

    if q:
        needle = q.lower()
        rows = [row for row in rows if needle in row["description"].lower()]

    if sort is not None:
        key, _, direction = sort.partition(":")
        direction = direction or "asc"
        if key not in SORT_KEYS or direction not in ("asc", "desc"):
            raise HTTPException(
                status_code=400,
                detail=f"sort must be <key>:<asc|desc> with key in {sorted(SORT_KEYS)}",
            )
        column = SORT_KEYS[key]
        rows.sort(key=lambda row: row["ordinal"])  # tie-break baseline
        rows.sort(key=lambda row: row[column], reverse=(direction == "desc"))

    selected = FILTERS[filter_key]
    if selected is not None:
        keep = set(BASE_COLUMNS) | set(selected)
        rows = [{k: v for k, v in row.items() if k in keep} for row in rows]

    qlevel = stored.report["questionnaire"]
    return {
        "round": result.round_number,
        "epsilon": result.epsilon,
        "filter": filter_key,
        "total": len(result.items),
        "visible": len(rows),
        "hidden_count": hidden_count,
        "all_consensual": result.all_consensual,
        "average_relevance": result.average_relevance,
        "questionnaire": qlevel,
        "rows": rows,
    }


def create_app(
    snapshot_dir: str | None = None,
    static_dir: str | None = None,
    session_ttl: float | None = None,
) -> FastAPI:
    app = FastAPI(title="fuzzydelphi", version="0.1.0")
    store = SessionStore(ttl_seconds=session_ttl, snapshot_dir=snapshot_dir)
    app.state.store = store

    @app.post("/api/sessions", status_code=201)
    def create_session() -> dict[str, str]:
        session = store.create()
        store.snapshot(session)
        return {"session_id": session.session_id}

    @app.post("/api/sessions/{session_id}/rounds/{round_number}", status_code=201)
    async def upload_round(
        session_id: str,
        round_number: int,
        responses: UploadFile,
        dimensions: UploadFile | None = None,
        descriptions: UploadFile | None = None,
        epsilon: float = DEFAULT_EPSILON,
    ) -> Response:
        session = store.get(session_id)
        if not 0.0 <= epsilon <= 1.0:
            raise HTTPException(status_code=400, detail=f"epsilon {epsilon} outside [0, 1]")
        responses_text = (await responses.read()).decode("utf-8-sig")
        dimensions_text = (
            (await dimensions.read()).decode("utf-8-sig") if dimensions else None
        )
        descriptions_text = (
            (await descriptions.read()).decode("utf-8-sig") if descriptions else None
        )
        with session.lock:
            if round_number in session.rounds:
                raise HTTPException(
                    status_code=409,
                    detail=f"round {round_number} already evaluated; rounds are immutable",
                )
            try:
                stored = _evaluate_upload(
                    round_number,
                    responses_text,
                    dimensions_text,
                    descriptions_text,
                    epsilon,
                )
            except ValidationError as exc:
                raise HTTPException(
                    status_code=422, detail={"errors": list(exc.diagnostics)}
                )
            session.rounds[round_number] = stored
            store.snapshot(session)
        return JSONResponse(stored.report, status_code=201)

    def _stored_round(session_id: str, round_number: int) -> StoredRound:
        session = store.get(session_id)
        stored = session.rounds.get(round_number)
        if stored is None:
            raise HTTPException(status_code=404, detail=f"round {round_number} not found")
        return stored

    @app.get("/api/sessions/{session_id}/rounds/{round_number}")
    def get_round(session_id: str, round_number: int) -> Response:
        return JSONResponse(_stored_round(session_id, round_number).report)

    @app.get("/api/sessions/{session_id}/rounds/{round_number}/results")
    def get_results(
        session_id: str,
        round_number: int,
        epsilon: float | None = None,
        trim: str | None = None,
        filter: str = "all",
        q: str | None = None,
        sort: str | None = None,
    ) -> Response:
        stored = _stored_round(session_id, round_number)
        return JSONResponse(_apply_view(stored, epsilon, trim, filter, q, sort))

    @app.get("/api/sessions/{session_id}/compare")
    def compare(session_id: str, a: int, b: int) -> Response:
        stored_a = _stored_round(session_id, a)
        stored_b = _stored_round(session_id, b)
        try:
            cmp = engine.compare_rounds(stored_a.result, stored_b.result)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        payload = comparison_to_json(cmp)
        payload["a_label"] = score_label(stored_a.result.qs)
        payload["b_label"] = score_label(stored_b.result.qs)
        return JSONResponse(payload)

    @app.get("/api/labels")
    def labels() -> Response:
        return JSONResponse({"labels": list(DEFAULT_SCORE_LABELS)})

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="dashboard")

    return app


@click.command()
@click.option("--port", type=int, default=8080, show_default=True, envvar="DELPHI_PORT")
@click.option("--host", default="127.0.0.1", show_default=True, envvar="DELPHI_HOST")
@click.option("--snapshot-dir", type=click.Path(), envvar="DELPHI_SNAPSHOT_DIR",
              help="Persist sessions to this directory and reload them on start.")
@click.option("--static-dir", type=click.Path(), envvar="DELPHI_STATIC_DIR",
              help="Serve the dashboard bundle from this directory at /.")
@click.option("--session-ttl", type=float, default=None, envvar="DELPHI_SESSION_TTL",
              help="Evict sessions idle for this many seconds.")
def main(port, host, snapshot_dir, static_dir, session_ttl) -> None:
    """Run the HTTP service."""
    import uvicorn

    app = create_app(
        snapshot_dir=snapshot_dir, static_dir=static_dir, session_ttl=session_ttl
    )
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
