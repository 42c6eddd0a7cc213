"""WebSocket session service for live Bloch-sphere steering.

Protocol (JSON text frames):
  client -> server
    {"type": "joystick", "dx": f, "dy": f, "rot": f, "dt": f}
    {"type": "config", "hand_map": "normal|swapped", "collapse_mode": "born|forced", "seed": u64}
    {"type": "finish"}
  server -> client
    {"type": "state", "t": f, "x": f, "y": f, "z": f, "readout": {...}}   after every tick
    {"type": "collapse", "outcome": 0|1, "t": f}                          when a choice commits
    {"type": "score", "mean_dev": f, "max_dev": f}                        on finish, if a model is loaded

Each connection owns one session; frames are handled strictly in
arrival order, so ticks never interleave within a session.
"""
from __future__ import annotations

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .affect import readout
from .session import (
    COLLAPSE_THRESHOLD_DEFAULT,
    OMEGA_DEFAULT,
    JoystickInput,
    SessionState,
    TrajectorySample,
    compare_trajectories,
    configure,
    new_session,
    session_tick,
    trigger_collapse,
)

PORT_ENV_VAR = "BLOCHAFFECT_PORT"
DEFAULT_PORT = 8080


def handle_frame(
    session: SessionState,
    message: dict,
    model: list[TrajectorySample] | None,
) -> tuple[SessionState, list[dict], bool]:
    """Apply one client frame; returns (session, outbound frames, finished)."""
    kind = message.get("type")
    if kind == "joystick":
        joystick = JoystickInput(
            float(message["dx"]), float(message["dy"]), float(message["rot"]), float(message["dt"])
        )
        session = session_tick(session, joystick)
        sample = session.trajectory[-1]
        frames = [
            {
                "type": "state",
                "t": sample.t,
                "x": sample.x,
                "y": sample.y,
                "z": sample.z,
                "readout": readout(session.register).as_dict(),
            }
        ]
        if session.rot_accumulator >= session.collapse_threshold:
            session, record = trigger_collapse(session)
            frames.append({"type": "collapse", "outcome": record.outcome_index, "t": session.trajectory[-1].t})
        return session, frames, False
    if kind == "config":
        session = configure(
            session,
            hand_map=str(message["hand_map"]) if "hand_map" in message else None,
            collapse_mode=str(message["collapse_mode"]) if "collapse_mode" in message else None,
            seed=int(message["seed"]) if "seed" in message else None,
        )
        return session, [], False
    if kind == "finish":
        frames = []
        if model:
            report = compare_trajectories(model, session.trajectory)
            frames.append({"type": "score", "mean_dev": report.mean_dev, "max_dev": report.max_dev})
        return session, frames, True
    raise ValueError(f"unknown message type {kind!r}")


def create_app(
    *,
    seed: int = 0,
    omega: float = OMEGA_DEFAULT,
    collapse_threshold: float = COLLAPSE_THRESHOLD_DEFAULT,
    model: list[TrajectorySample] | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    """Session service; every websocket connection gets its own session."""
    app = FastAPI(title="blochaffect session service")

    @app.get("/model")
    async def model_trajectory() -> dict:
        if not model:
            return {"samples": []}
        return {"samples": [{"t": s.t, "x": s.x, "y": s.y, "z": s.z} for s in model]}

    @app.websocket("/ws")
    async def ws_session(websocket: WebSocket) -> None:
        await websocket.accept()
        session = new_session(seed, omega=omega, collapse_threshold=collapse_threshold)
        try:
            while True:
                message = await websocket.receive_json()
                try:
                    session, frames, finished = handle_frame(session, message, model)
                except (ValueError, KeyError, TypeError) as exc:
                    await websocket.send_json({"type": "error", "message": str(exc)})
                    continue
                for frame in frames:
                    await websocket.send_json(frame)
                if finished:
                    await websocket.close()
                    return
        except WebSocketDisconnect:
            return

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
