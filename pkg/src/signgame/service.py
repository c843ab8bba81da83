"""HTTP + JSON game service: live sessions against the exact engine plus
stateless solve endpoints.

Sessions live in memory behind per-session locks; the registry lock only
guards lookup and insert, so solves for different sessions run in
parallel. With a persist directory every session is appended to its own
JSON-lines file (one meta line, then one line per move) and replayed on
startup.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path as FsPath

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .engine import (
    GameConfig,
    Move,
    Role,
    Sign,
    apply_move,
    new_game,
    outcome_from_score,
    player_to_move,
    score,
)
from .errors import FamilySpecError, Graph6Error, IllegalMoveError
from .graphs import (
    Complete,
    CompleteMultipartite,
    Cycle,
    Path,
    Star,
    StarForest,
    build_family,
    family_text,
    parse_family_spec,
)
from .solver import solve

DEFAULT_VERTEX_LIMIT = 14


def _layout_for(spec):
    if isinstance(spec, (Cycle, Complete)):
        return "cycle"
    if isinstance(spec, Path):
        return "path"
    if isinstance(spec, Star):
        return "star"
    if isinstance(spec, StarForest):
        return "star" if len(spec.leaf_counts) == 1 else "generic"
    if isinstance(spec, CompleteMultipartite) and len(spec.part_sizes) == 2:
        return "bipartite"
    return "generic"


@dataclass
class GameSession:
    id: str
    spec_text: str
    layout: str
    config: GameConfig
    human_role: Role
    state: object
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def engine_role(self):
        return self.human_role.other


class SessionStore:
    def __init__(self, persist_dir=None):
        self._sessions = {}
        self._lock = threading.Lock()
        self._persist_dir = FsPath(persist_dir) if persist_dir else None
        if self._persist_dir:
            self._persist_dir.mkdir(parents=True, exist_ok=True)
            self._restore()

    def _restore(self):
        for path in sorted(self._persist_dir.glob("*.jsonl")):
            with path.open() as fh:
                lines = [json.loads(line) for line in fh if line.strip()]
            if not lines:
                continue
            meta = lines[0]
            spec = parse_family_spec(meta["graph"])
            state = new_game(build_family(spec))
            for entry in lines[1:]:
                move = Move(entry["v"], Sign.from_symbol(entry["sign"]))
                state, _ = apply_move(state, move)
            session = GameSession(
                id=meta["id"],
                spec_text=meta["graph"],
                layout=_layout_for(spec),
                config=GameConfig(Role(meta["first_role"])),
                human_role=Role(meta["human_role"]),
                state=state,
            )
            self._sessions[session.id] = session

    def create(self, session):
        with self._lock:
            self._sessions[session.id] = session
        if self._persist_dir:
            meta = {
                "id": session.id,
                "graph": session.spec_text,
                "first_role": session.config.first_role.value,
                "human_role": session.human_role.value,
            }
            self._file(session.id).write_text(json.dumps(meta) + "\n")

    def get(self, session_id):
        with self._lock:
            return self._sessions.get(session_id)

    def record_move(self, session, move):
        if self._persist_dir:
            with self._file(session.id).open("a") as fh:
                fh.write(json.dumps({"v": move.vertex, "sign": move.sign.symbol}) + "\n")

    def _file(self, session_id):
        return self._persist_dir / f"{session_id}.jsonl"


def _error(status, code, message):
    return JSONResponse({"code": code, "message": message}, status_code=status)


def _completed_edges(state):
    out = []
    for u, v in state.graph.edges:
        cu, cv = state.cells[u], state.cells[v]
        if cu is not None and cv is not None:
            out.append({"edge": [u, v], "score": int(cu) * int(cv)})
    return out


def _view(session, last_move=None, banked_delta=None, new_edges=None):
    state = session.state
    finished = state.is_over
    if finished:
        final = score(state.graph, state.cells)
        outcome = outcome_from_score(final).value
        to_move = "none"
    else:
        outcome = None
        to_move = player_to_move(state, session.config).value
    doc = {
        "id": session.id,
        "graph": {
            "n": state.graph.vertex_count,
            "edges": [list(e) for e in state.graph.edges],
        },
        "spec": session.spec_text,
        "cells": [c.symbol if c is not None else None for c in state.cells],
        "to_move": to_move,
        "banked_score": state.banked_score,
        "completed_edges": _completed_edges(state),
        "status": "finished" if finished else "in_progress",
        "outcome": outcome,
        "human_role": session.human_role.value,
        "first_role": session.config.first_role.value,
        "layout": session.layout,
    }
    if last_move is not None:
        doc["last_move"] = {"v": last_move.vertex, "sign": last_move.sign.symbol}
        doc["banked_delta"] = banked_delta
        doc["new_edges"] = new_edges
    return doc


def _edges_completed_by(state_before, move):
    edges = []
    for u in state_before.graph.adjacency[move.vertex]:
        c = state_before.cells[u]
        if c is not None:
            e = sorted((u, move.vertex))
            edges.append({"edge": e, "score": int(c) * int(move.sign)})
    return sorted(edges, key=lambda d: d["edge"])


def build_app(*, vertex_limit=DEFAULT_VERTEX_LIMIT, persist_dir=None) -> FastAPI:
    app = FastAPI(title="signgame service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(persist_dir)
    app.state.store = store

    def _engine_reply(session):
        """Apply the engine's tie-broken best move; caller holds the lock."""
        result = solve(session.state, session.config, budget=vertex_limit)
        move = result.best_move
        state_before = session.state
        new_edges = _edges_completed_by(state_before, move)
        session.state, delta = apply_move(session.state, move)
        store.record_move(session, move)
        return move, delta, new_edges

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/games")
    def create_game(body: dict):
        try:
            spec = parse_family_spec(str(body.get("graph", "")))
            graph = build_family(spec)
            first_role = Role(body.get("first_role", "P"))
            human_role = Role(body.get("human_role", "P"))
        except (FamilySpecError, Graph6Error, ValueError) as exc:
            return _error(400, "bad_spec", str(exc))
        if graph.vertex_count > vertex_limit:
            return _error(
                422,
                "too_large",
                f"{graph.vertex_count} vertices exceed the exact-play limit {vertex_limit}",
            )
        session = GameSession(
            id=secrets.token_urlsafe(12),
            spec_text=family_text(spec),
            layout=_layout_for(spec),
            config=GameConfig(first_role),
            human_role=human_role,
            state=new_game(graph),
        )
        store.create(session)
        with session.lock:
            if (
                not session.state.is_over
                and player_to_move(session.state, session.config) is session.engine_role
            ):
                move, delta, new_edges = _engine_reply(session)
                return _view(session, move, delta, new_edges)
            return _view(session)

    @app.get("/games/{session_id}")
    def get_game(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown_game", "no such game")
        with session.lock:
            return _view(session)

    @app.post("/games/{session_id}/moves")
    def post_move(session_id: str, body: dict):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown_game", "no such game")
        with session.lock:
            state = session.state
            if state.is_over or player_to_move(state, session.config) is not session.human_role:
                return _error(409, "not_your_turn", "it is not your turn")
            try:
                vertex = int(body.get("vertex"))
            except (TypeError, ValueError):
                return _error(400, "bad_vertex", "vertex must be an integer")
            if not 0 <= vertex < state.graph.vertex_count:
                return _error(400, "bad_vertex", f"vertex {vertex} out of range")
            try:
                sign = Sign.from_symbol(body.get("sign"))
            except ValueError as exc:
                return _error(400, "bad_sign", str(exc))
            if state.cells[vertex] is not None:
                return _error(409, "occupied", f"vertex {vertex} already assigned")
            move = Move(vertex, sign)
            new_edges = _edges_completed_by(state, move)
            session.state, delta = apply_move(state, move)
            store.record_move(session, move)
            return _view(session, move, delta, new_edges)

    @app.post("/games/{session_id}/engine-move")
    def engine_move(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown_game", "no such game")
        with session.lock:
            state = session.state
            if state.is_over or player_to_move(state, session.config) is not session.engine_role:
                return _error(409, "not_engine_turn", "it is not the engine's turn")
            move, delta, new_edges = _engine_reply(session)
            return _view(session, move, delta, new_edges)

    @app.get("/games/{session_id}/hint")
    def hint(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown_game", "no such game")
        with session.lock:
            result = solve(session.state, session.config, budget=vertex_limit)
        orient = 1 if session.human_role is Role.P else -1
        return {
            "best_move": (
                None
                if result.best_move is None
                else {"v": result.best_move.vertex, "sign": result.best_move.sign.symbol}
            ),
            "value": orient * result.value,
            "outcome_with_optimal_play": result.outcome.value,
        }

    @app.get("/solve")
    def solve_endpoint(graph: str, first: str = "P"):
        try:
            spec = parse_family_spec(graph)
            built = build_family(spec)
            first_role = Role(first)
        except (FamilySpecError, Graph6Error, ValueError) as exc:
            return _error(400, "bad_spec", str(exc))
        if built.vertex_count > vertex_limit:
            return _error(422, "too_large", "graph exceeds the exact-play limit")
        result = solve(new_game(built), GameConfig(first_role), budget=vertex_limit)
        return {
            "graph": family_text(spec),
            "first_role": first_role.value,
            "value": result.value,
            "outcome": result.outcome.value,
            "best_move": (
                None
                if result.best_move is None
                else {"v": result.best_move.vertex, "sign": result.best_move.sign.symbol}
            ),
        }

    return app
