"""Stateless-protocol game service: JSON over HTTP, in-memory sessions.

Each session keeps a move stack guarded by its own lock; solver work for
hints runs on a bounded pool with the FLOODLAB_BUDGET_MS default budget, and
falls back to greedy/approximate play (marked "exact": false) when the budget
dies.
"""

from __future__ import annotations

import os
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from . import serialize, solver
from .core import (
    FloodItError,
    IllegalMoveError,
    InputError,
    Move,
    QuotientState,
    SetMove,
    is_flooded,
)

DEFAULT_BUDGET_MS = 2000


class Session:
    def __init__(self, instance):
        self.instance = instance
        self.states = [QuotientState.initial(instance)]
        self.lock = threading.Lock()

    @property
    def state(self):
        return self.states[-1]


def _view(token, session):
    state = session.state
    return {
        "token": token,
        "vertices": session.instance.vertex_count,
        "colors": list(state.coloring),
        "components": [list(c) for c in state.components],
        "component_colors": list(state.component_color),
        "flooded": is_flooded(state),
        "moves_played": len(session.states) - 1,
        "pivot": session.instance.pivot,
        "c_max": session.instance.c_max,
        "edges": [[a, b] for a, b in session.instance.edges()],
    }


def _hint_budget():
    try:
        ms = int(os.environ.get("FLOODLAB_BUDGET_MS", DEFAULT_BUDGET_MS))
    except ValueError:
        ms = DEFAULT_BUDGET_MS
    return solver.SearchBudget(time_limit=ms / 1000.0)


def create_app():
    app = FastAPI(title="floodlab")
    from fastapi.middleware.cors import CORSMiddleware
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    sessions = {}
    registry_lock = threading.Lock()
    pool = ThreadPoolExecutor(max_workers=4)

    def get_session(token):
        with registry_lock:
            session = sessions.get(token)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {token!r}")
        return session

    @app.post("/game")
    def new_game(body: dict):
        try:
            instance, _ = serialize.load_instance(body)
        except InputError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        token = uuid.uuid4().hex
        session = Session(instance)
        with registry_lock:
            sessions[token] = session
        return _view(token, session)

    @app.get("/game/{token}")
    def get_game(token: str):
        session = get_session(token)
        with session.lock:
            return _view(token, session)

    @app.post("/game/{token}/move")
    def play_move(token: str, body: dict):
        from .core import apply_move, apply_set_move
        session = get_session(token)
        with session.lock:
            state = session.state
            try:
                if "set" in body:
                    move = SetMove(frozenset(body["set"]), body["c"])
                    new_state = apply_set_move(state, move, session.instance.pivot)
                elif "v" in body:
                    move = Move(body["v"], body["c"])
                    new_state = apply_move(state, move)
                else:
                    raise InputError("move body needs 'v' or 'set'")
            except IllegalMoveError as exc:
                return JSONResponse(status_code=422, content={
                    "detail": {"clause": exc.clause, "message": str(exc)}})
            except (KeyError, InputError) as exc:
                return JSONResponse(status_code=422, content={
                    "detail": {"clause": "input", "message": str(exc)}})
            session.states.append(new_state)
            return _view(token, session)

    @app.post("/game/{token}/hint")
    def hint(token: str, mode: str = "free"):
        if mode not in ("free", "fixed"):
            raise HTTPException(status_code=422, detail=f"unknown hint mode {mode!r}")
        session = get_session(token)
        with session.lock:
            state = session.state
            instance = session.instance
        if is_flooded(state):
            return {"move": None, "remaining": 0, "exact": True, "status": "optimal"}
        current = instance.with_coloring(state.coloring)
        pivot = instance.pivot
        if mode == "fixed" and pivot is None:
            raise HTTPException(status_code=422,
                                detail="fixed-mode hints need an instance pivot")
        budget = _hint_budget()

        def work():
            try:
                if mode == "free":
                    result = solver.solve_free_exact(current, budget)
                else:
                    result = solver.solve_fixed_exact(current, pivot, budget)
            except FloodItError as exc:
                return {"error": str(exc)}
            if result.status == "optimal":
                first = result.solution.moves[0]
                return {"move": {"v": first.vertex, "c": first.color},
                        "remaining": result.value, "exact": True,
                        "status": result.status}
            if mode == "free":
                fallback = solver.approx_free(current)
            else:
                fallback = solver.greedy_fixed(current, pivot)
            first = fallback.moves[0]
            return {"move": {"v": first.vertex, "c": first.color},
                    "remaining": len(fallback), "exact": False,
                    "status": result.status}

        outcome = pool.submit(work).result()
        if "error" in outcome:
            raise HTTPException(status_code=422, detail=outcome["error"])
        return outcome

    @app.post("/game/{token}/undo")
    def undo(token: str):
        session = get_session(token)
        with session.lock:
            if len(session.states) > 1:
                session.states.pop()
            return _view(token, session)

    return app


def run(port=8000, host="127.0.0.1"):
    import uvicorn
    uvicorn.run(create_app(), port=port, host=host, log_level="warning")
