"""HTTP surface for the game: sessions, moves, and canonical transcripts.

Sessions live in process memory.  Moves are serialized per session; a client
may pass the round index it believes it is playing, and a stale index is
rejected with 409 instead of silently double-playing.  GET /sessions/{id}
returns exactly the bytes canonical_json produces for the transcript, so a
service transcript and a CLI transcript of the same game compare equal."""

from __future__ import annotations

import threading
import uuid
from datetime import datetime, timezone
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response
from pydantic import BaseModel

from .game import build_transcript, canonical_json, new_game, respond
from .model import element_to_text, parse_element
from .terms import TermSyntaxError, term_to_text

DEFAULT_MAX_N = 4


class CreateSession(BaseModel):
    n: int
    w: str


class Move(BaseModel):
    side: str
    element: str
    round: Optional[int] = None


class _Session:
    def __init__(self, state):
        self.lock = threading.Lock()
        self.state = state
        self.created_at = datetime.now(timezone.utc).isoformat()


def create_app(max_n: int = DEFAULT_MAX_N) -> FastAPI:
    app = FastAPI(title="pairmodel game service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, _Session] = {}

    def _get(sid: str) -> _Session:
        sess = sessions.get(sid)
        if sess is None:
            raise HTTPException(status_code=404, detail=f"no session {sid}")
        return sess

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSession):
        if body.n < 0 or body.n > max_n:
            raise HTTPException(
                status_code=400,
                detail=f"n must be between 0 and {max_n}")
        try:
            w = parse_element(body.w)
        except (TermSyntaxError, ValueError) as e:
            raise HTTPException(status_code=400, detail=f"bad anchor: {e}")
        state = new_game(body.n, w)
        sid = uuid.uuid4().hex[:12]
        sessions[sid] = _Session(state)
        return {
            "id": sid,
            "n": body.n,
            "w": element_to_text(w),
            "a0": term_to_text(state.a0),
            "b0": term_to_text(state.b0),
        }

    @app.post("/sessions/{sid}/moves")
    def play_move(sid: str, body: Move):
        sess = _get(sid)
        if body.side not in ("left", "right"):
            raise HTTPException(status_code=400, detail=f"bad side {body.side!r}")
        try:
            element = parse_element(body.element)
        except (TermSyntaxError, ValueError) as e:
            raise HTTPException(status_code=400, detail=f"bad element: {e}")
        with sess.lock:
            state = sess.state
            if state.done:
                raise HTTPException(status_code=409, detail="game is finished")
            at = len(state.rounds)
            if body.round is not None and body.round != at:
                raise HTTPException(
                    status_code=409,
                    detail=f"round mismatch: next round is {at}")
            reply, state = respond(state, body.side, element)
            sess.state = state
            doc = build_transcript(state)
        played = doc["rounds"][at]
        return {
            "round": at,
            "side": played["side"],
            "move": played["move"],
            "reply": played["reply"],
            "fragmentReport": played["fragmentReport"],
            "done": state.done,
            "verdict": doc["verdict"],
        }

    @app.get("/sessions/{sid}")
    def get_transcript(sid: str):
        sess = _get(sid)
        with sess.lock:
            doc = build_transcript(sess.state)
        return Response(content=canonical_json(doc),
                        media_type="application/json")

    @app.get("/sessions")
    def list_sessions():
        out = []
        for sid, sess in sessions.items():
            with sess.lock:
                out.append({
                    "id": sid,
                    "n": sess.state.n,
                    "w": element_to_text(sess.state.w),
                    "createdAt": sess.created_at,
                    "status": "finished" if sess.state.done else "awaiting-forall",
                })
        out.sort(key=lambda row: row["createdAt"])
        return out

    return app
