"""Gateway between the buses and Commander displays.

The core subscribes to both buses, folds map deltas and chat into a
resumable view state, and emits one JSON record per event: {type, seq,
body}. Sinks receive every record in emission order; a late client can
request a snapshot and fold deltas from there. The HTTP layer carries
each record as one WebSocket text frame and serves photos and the
bundled browser UI.
"""

import json
import logging
import threading
from dataclasses import dataclass, field

from ..messaging import BusClient

log = logging.getLogger(__name__)

CHAT_TOPICS = ("dm.commander.in", "dm.commander.out")
MAP_TOPIC = "ui.map"
PHOTO_TOPIC = "ui.photo"


@dataclass
class GridState:
    resolution: float
    origin: list[float]
    shape: list[int]
    rows: list[bytearray] = field(default_factory=list)

    @classmethod
    def blank(cls, resolution, origin, shape):
        nx, ny = shape
        return cls(resolution=resolution, origin=list(origin), shape=[nx, ny],
                   rows=[bytearray(ny) for _ in range(nx)])

    def apply(self, cells):
        nx, ny = self.shape
        for ix, iy, v in cells:
            if 0 <= ix < nx and 0 <= iy < ny:
                self.rows[ix][iy] = v

    def encoded_rows(self) -> list[str]:
        return ["".join(str(v) for v in row) for row in self.rows]


class GatewayCore:
    def __init__(self, dialogue_addr: str, robot_addr: str,
                 client_id: str = "gateway"):
        self._lock = threading.Lock()
        self._sinks: list = []
        self._seq = 0
        self.chat: list[dict] = []
        self.grid: GridState | None = None
        self.pose: list[float] | None = None
        self.photo: dict | None = None
        self._dialogue = BusClient(dialogue_addr, client_id)
        self._robot = BusClient(robot_addr, client_id)
        for topic in CHAT_TOPICS:
            self._dialogue.subscribe(topic, self._on_chat)
        self._robot.subscribe(MAP_TOPIC, self._on_map)
        self._robot.subscribe(PHOTO_TOPIC, self._on_photo)

    def close(self):
        self._dialogue.close()
        self._robot.close()

    def add_sink(self, sink):
        """sink(record: dict) is called for every subsequent record."""
        with self._lock:
            self._sinks.append(sink)

    def remove_sink(self, sink):
        with self._lock:
            if sink in self._sinks:
                self._sinks.remove(sink)

    def say(self, text: str):
        """Publish Commander text onto the dialogue bus."""
        self._dialogue.publish_nowait("dm.commander.in", text)

    def snapshot(self) -> dict:
        """Full view state for (re)joining clients, at the current seq."""
        with self._lock:
            body = {
                "chat": list(self.chat),
                "grid": None if self.grid is None else {
                    "resolution": self.grid.resolution,
                    "origin": self.grid.origin,
                    "shape": self.grid.shape,
                    "rows": self.grid.encoded_rows(),
                },
                "pose": self.pose,
                "photo": self.photo,
            }
            return {"type": "snapshot", "seq": self._seq, "body": body}

    # -- bus handlers (reader threads) --------------------------------------

    def _on_chat(self, env):
        if env.topic == "dm.commander.in":
            body = {"who": "commander", "kind": "utterance", "text": env.payload}
        else:
            try:
                out = json.loads(env.payload)
            except json.JSONDecodeError:
                log.warning("gateway: undecodable chat payload")
                return
            body = {"who": "scout", "kind": out.get("kind", "info"),
                    "text": out.get("text", "")}
            if out.get("ref"):
                body["ref"] = out["ref"]
        with self._lock:
            self.chat.append(body)
            self._emit("chat", body)

    def _on_map(self, env):
        try:
            delta = json.loads(env.payload)
        except json.JSONDecodeError:
            log.warning("gateway: undecodable map payload")
            return
        with self._lock:
            if self.grid is None:
                self.grid = GridState.blank(delta["resolution"], delta["origin"],
                                            delta["shape"])
            self.grid.apply(delta.get("cells", ()))
            self.pose = delta.get("pose")
            self._emit("map", delta)

    def _on_photo(self, env):
        try:
            body = json.loads(env.payload)
        except json.JSONDecodeError:
            log.warning("gateway: undecodable photo payload")
            return
        with self._lock:
            self.photo = body
            self._emit("photo", body)

    def _emit(self, rtype: str, body: dict):
        # callers hold the lock: records reach every sink in fold order
        self._seq += 1
        record = {"type": rtype, "seq": self._seq, "body": body}
        for sink in list(self._sinks):
            try:
                sink(record)
            except Exception:
                log.exception("gateway: sink failed")


class StreamRecorder:
    """JSONL sink, one record per line; used for UI replay fixtures."""

    def __init__(self, path):
        self._fh = open(path, "w", encoding="utf-8")
        self._lock = threading.Lock()

    def __call__(self, record: dict):
        with self._lock:
            self._fh.write(json.dumps(record, separators=(",", ":")) + "\n")
            self._fh.flush()

    def close(self):
        self._fh.close()


def build_app(core: GatewayCore, photos_dir: str, static_dir: str | None = None):
    """FastAPI app: /ws stream, /photos/<name>, optional static UI."""
    import asyncio
    import os

    from fastapi import FastAPI, WebSocket, WebSocketDisconnect
    from fastapi.responses import FileResponse, JSONResponse

    app = FastAPI(title="scout gateway")

    @app.get("/healthz")
    def healthz():
        return {"ok": True}

    @app.get("/photos/{name}")
    def photo(name: str):
        safe = os.path.basename(name)
        path = os.path.join(photos_dir, safe)
        if not os.path.isfile(path):
            return JSONResponse({"error": "no such photo"}, status_code=404)
        media = "image/x-portable-graymap" if safe.endswith(".pgm") else "application/json"
        return FileResponse(path, media_type=media)

    @app.websocket("/ws")
    async def ws(websocket: WebSocket):
        await websocket.accept()
        loop = asyncio.get_running_loop()
        outbox: asyncio.Queue = asyncio.Queue()

        def sink(record):
            loop.call_soon_threadsafe(outbox.put_nowait, record)

        core.add_sink(sink)

        async def writer():
            while True:
                record = await outbox.get()
                await websocket.send_text(json.dumps(record, separators=(",", ":")))

        task = asyncio.create_task(writer())
        try:
            while True:
                raw = await websocket.receive_text()
                try:
                    msg = json.loads(raw)
                    mtype = msg["type"]
                except (json.JSONDecodeError, TypeError, KeyError):
                    outbox.put_nowait({"type": "error", "seq": 0,
                                       "body": {"message": "malformed frame"}})
                    continue
                if mtype == "say":
                    text = msg.get("body")
                    if isinstance(text, str) and text.strip():
                        core.say(text)
                    else:
                        outbox.put_nowait({"type": "error", "seq": 0,
                                           "body": {"message": "say needs text"}})
                elif mtype == "snapshot":
                    outbox.put_nowait(core.snapshot())
                else:
                    outbox.put_nowait({"type": "error", "seq": 0,
                                       "body": {"message": f"unknown type {mtype!r}"}})
        except WebSocketDisconnect:
            pass
        finally:
            core.remove_sink(sink)
            task.cancel()

    if static_dir and os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=static_dir, html=True))
    return app


def serve_gateway(bind: str, dialogue_addr: str, robot_addr: str,
                  photos_dir: str, static_dir: str | None = None):
    """Run the gateway HTTP server until interrupted."""
    import uvicorn

    from ..messaging import parse_address
    host, port = parse_address(bind)
    core = GatewayCore(dialogue_addr, robot_addr)
    app = build_app(core, photos_dir, static_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    finally:
        core.close()
