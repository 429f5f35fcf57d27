"""HTTP/JSON game service: one session per game, Breaker replies synchronously.

All bodies are JSON with a top-level "version"; points are 1-based coordinate
arrays. Errors come back as {code, message} with status 400 (malformed), 404
(unknown session), or 409 (cell occupied, not Maker's turn, or session busy).
API-created games are two-dimensional, which is what the web board renders;
the library and CLI support any dimension.
"""

from __future__ import annotations

import json
import threading
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .engine import GameState, GameStatus, Player, breaker_move, detect_maker_win, strong_draw_audit
from .errors import PairblockError
from .lattice import Vector
from .pairing import PairingCertificate, build_certificate, partner

API_VERSION = "1"

CLASSIC_DIRECTIONS = ((1, 0), (0, 1), (1, 1), (1, -1))
PRESETS = {"classic": CLASSIC_DIRECTIONS}

MAX_SIDE = 100


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class NewGameBody(BaseModel):
    N: int
    directions: list[list[int]] | None = None
    preset: str | None = None
    seed: int = 0
    p: int | None = None


class MoveBody(BaseModel):
    point: list[int]


@dataclass
class Session:
    cert: PairingCertificate
    state: GameState
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory sessions; per-session mutation is serialized by its lock."""

    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, cert: PairingCertificate) -> str:
        session_id = uuid.uuid4().hex
        with self._lock:
            self._sessions[session_id] = Session(cert, GameState(cert.spec))
        return session_id

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown_session", f"no session {session_id}")
        return session

    def delete(self, session_id: str) -> None:
        with self._lock:
            if session_id not in self._sessions:
                raise ApiError(404, "unknown_session", f"no session {session_id}")
            del self._sessions[session_id]

    def snapshot(self) -> dict:
        with self._lock:
            sessions = dict(self._sessions)
        return {
            "version": API_VERSION,
            "sessions": {
                sid: {
                    "status": sess.state.status.value,
                    "history": [
                        {"ply": m.ply, "player": m.player.value, "point": list(m.point)}
                        for m in sess.state.history
                    ],
                }
                for sid, sess in sessions.items()
            },
        }


def _partner_json(result) -> dict:
    out: dict = {"status": result.status.value}
    if result.partner is not None:
        out["partner"] = list(result.partner)
    if result.direction_index is not None:
        out["direction_index"] = result.direction_index
    return out


def _state_json(session_id: str, session: Session) -> dict:
    cert = session.cert
    state = session.state
    spec = cert.spec
    out = {
        "version": API_VERSION,
        "session": session_id,
        "N": spec.side,
        "d": spec.dim,
        "directions": [list(d.vector) for d in spec.directions],
        "p": spec.prime,
        "m": spec.win_length,
        "status": state.status.value,
        "next_player": state.next_player.value if state.status is GameStatus.IN_PROGRESS else None,
        "moves": [
            {
                "ply": m.ply,
                "player": m.player.value,
                "point": list(m.point),
                "rule": m.rule,
            }
            for m in state.history
        ],
        "cells": [
            {"point": list(point), "mark": player.value}
            for point, player in sorted(state.occupancy.items())
        ],
        "overlay": [
            {"point": list(point), **_partner_json(partner(point, cert))}
            for point in spec.board.points()
        ],
        "strong_draw": state.strong_draw,
    }
    if state.winning_window is not None:
        out["winning_window"] = {
            "start": list(state.winning_window.start),
            "direction": list(state.winning_window.direction.vector),
            "length": state.winning_window.length,
        }
    return out


def create_app(snapshot_path: str | None = None) -> FastAPI:
    store = SessionStore()

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        if snapshot_path:
            with open(snapshot_path, "w") as fh:
                json.dump(store.snapshot(), fh, indent=2)

    app = FastAPI(title="pairblock", version=API_VERSION, lifespan=lifespan)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"code": "bad_request", "message": str(exc.errors())}
        )

    @app.post("/games")
    def new_game(body: NewGameBody):
        if body.N < 1 or body.N > MAX_SIDE:
            raise ApiError(400, "bad_board", f"N must be in 1..{MAX_SIDE}")
        if body.directions is not None:
            vectors = [tuple(v) for v in body.directions]
        else:
            vectors = list(PRESETS.get(body.preset or "classic", CLASSIC_DIRECTIONS))
        if any(len(v) != 2 for v in vectors):
            raise ApiError(400, "bad_direction", "API games are 2-dimensional")
        try:
            cert = build_certificate(body.N, 2, vectors, body.seed, body.p)
        except (PairblockError, ValueError) as exc:
            raise ApiError(400, "bad_construction", str(exc))
        session_id = store.create(cert)
        return {
            "version": API_VERSION,
            "session": session_id,
            "p": cert.spec.prime,
            "m": cert.spec.win_length,
            "N": cert.spec.side,
            "d": cert.spec.dim,
        }

    @app.get("/games/{session_id}")
    def get_game(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return _state_json(session_id, session)

    @app.post("/games/{session_id}/move")
    def move(session_id: str, body: MoveBody):
        session = store.get(session_id)
        if not session.lock.acquire(blocking=False):
            raise ApiError(409, "busy", "another move for this session is in flight")
        try:
            return _apply_move(session, body)
        finally:
            session.lock.release()

    def _apply_move(session: Session, body: MoveBody) -> dict:
        state = session.state
        spec = session.cert.spec
        point: Vector = tuple(body.point)
        if state.status is not GameStatus.IN_PROGRESS:
            raise ApiError(409, "game_over", "game is over")
        if state.next_player is not Player.MAKER:
            raise ApiError(409, "not_makers_turn", "it is not Maker's turn")
        if not spec.board.contains(point):
            raise ApiError(400, "off_board", f"point {list(point)} is off the board")
        if point in state.occupancy:
            raise ApiError(409, "occupied", f"cell {list(point)} is occupied")
        state.place(Player.MAKER, point)
        response: dict = {
            "version": API_VERSION,
            "maker": {"point": list(point)},
            "breaker": None,
        }
        win = detect_maker_win(state, point, spec)
        if win is not None:
            state.status = GameStatus.MAKER_WIN
            state.winning_window = win
        elif state.board_full:
            state.status = GameStatus.DRAW
            state.strong_draw = strong_draw_audit(state)
        else:
            reply, rule = breaker_move(state, session.cert)
            state.place(Player.BREAKER, reply, rule)
            response["breaker"] = {"point": list(reply), "rule": rule}
            if state.board_full:
                state.status = GameStatus.DRAW
                state.strong_draw = strong_draw_audit(state)
        response["status"] = state.status.value
        response["strong_draw"] = state.strong_draw
        return response

    @app.delete("/games/{session_id}")
    def delete_game(session_id: str):
        store.delete(session_id)
        return {"version": API_VERSION, "deleted": True}

    return app
