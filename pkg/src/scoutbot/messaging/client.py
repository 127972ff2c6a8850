"""Client side of the bus protocol: connect, subscribe, publish."""

import itertools
import logging
import queue
import socket
import threading

from .protocol import (
    Envelope,
    ProtocolError,
    decode_line,
    encode_frame,
    topic_matches,
    valid_pattern,
)

log = logging.getLogger(__name__)


class BusError(Exception):
    pass


class PublishRejected(BusError):
    pass


def parse_address(address: str) -> tuple[str, int]:
    host, _, port = address.rpartition(":")
    if not host or not port.isdigit():
        raise BusError(f"bad bus address {address!r}, expected host:port")
    return host, int(port)


class _Pending:
    __slots__ = ("event", "reply", "discard")

    def __init__(self, discard: bool = False):
        self.event = threading.Event()
        self.reply: dict | None = None
        self.discard = discard


class BusClient:
    """Threaded bus client.

    Incoming envelopes are dispatched on the reader thread to the handler
    registered for the matching pattern; subscriptions without a handler
    feed ``self.inbox``. Requests carry an id the broker echoes back, so
    acks correlate even when replies interleave with deliveries.

    Handlers run on the reader thread: they must not block on this
    client's own replies. Use publish_nowait() from handlers, or hand the
    work to another thread.
    """

    def __init__(self, address: str, client_id: str, connect_timeout: float = 5.0):
        host, port = parse_address(address)
        self.client_id = client_id
        self.inbox: queue.Queue[Envelope] = queue.Queue()
        self._handlers: list[tuple[str, object]] = []
        self._pending: dict[int, _Pending] = {}
        self._rid = itertools.count(1)
        self._lock = threading.Lock()
        self._send_lock = threading.Lock()
        self._closed = threading.Event()
        self._sock = socket.create_connection((host, port), timeout=connect_timeout)
        self._sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
        self._sock.settimeout(None)
        self._send({"op": "hello", "client": client_id})
        self._reader = threading.Thread(
            target=self._read_loop, name=f"bus-{client_id}", daemon=True)
        self._reader.start()

    def subscribe(self, pattern: str, handler=None, timeout: float = 5.0):
        """Register a subscription; returns once the broker confirms it."""
        if not valid_pattern(pattern):
            raise BusError(f"malformed pattern {pattern!r}")
        with self._lock:
            self._handlers.append((pattern, handler))
        reply = self._request({"op": "sub", "pattern": pattern}, timeout)
        if reply.get("op") == "err":
            with self._lock:
                self._handlers.remove((pattern, handler))
            raise BusError(reply.get("error", "subscribe failed"))

    def publish(self, topic: str, payload: str, bridge_mark: str | None = None,
                timeout: float = 5.0) -> int:
        """Publish and return the broker-assigned per-topic seq."""
        reply = self._request({"op": "pub", "topic": topic, "payload": payload,
                               "bridge_mark": bridge_mark}, timeout)
        if reply.get("op") == "err" or not reply.get("ok"):
            raise PublishRejected(reply.get("error", "publish rejected"))
        return reply["seq"]

    def publish_nowait(self, topic: str, payload: str,
                       bridge_mark: str | None = None):
        """Fire-and-forget publish, safe to call from message handlers."""
        rid = next(self._rid)
        with self._lock:
            self._pending[rid] = _Pending(discard=True)
        self._send({"op": "pub", "topic": topic, "payload": payload,
                    "bridge_mark": bridge_mark, "rid": rid})

    def close(self):
        self._closed.set()
        try:
            self._sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        try:
            self._sock.close()
        except OSError:
            pass

    # -- internals ---------------------------------------------------------

    def _request(self, frame: dict, timeout: float) -> dict:
        rid = next(self._rid)
        pending = _Pending()
        with self._lock:
            self._pending[rid] = pending
        frame["rid"] = rid
        self._send(frame)
        if not pending.event.wait(timeout):
            with self._lock:
                self._pending.pop(rid, None)
            raise BusError("timed out waiting for broker reply")
        return pending.reply

    def _send(self, frame: dict):
        data = encode_frame(frame)
        with self._send_lock:
            try:
                self._sock.sendall(data)
            except OSError as exc:
                raise BusError(f"bus connection lost: {exc}") from exc

    def _read_loop(self):
        buf = b""
        while not self._closed.is_set():
            try:
                chunk = self._sock.recv(65536)
            except OSError:
                break
            if not chunk:
                break
            buf += chunk
            while b"\n" in buf:
                line, buf = buf.split(b"\n", 1)
                if line.strip():
                    self._dispatch(line)

    def _dispatch(self, line: bytes):
        try:
            frame = decode_line(line)
        except ProtocolError:
            log.warning("client %s: dropping unparseable broker frame", self.client_id)
            return
        op = frame.get("op")
        if op == "msg":
            env = Envelope.from_frame(frame)
            handler = self._handler_for(env.topic)
            if handler is None:
                self.inbox.put(env)
            else:
                try:
                    handler(env)
                except Exception:
                    log.exception("client %s: handler failed for %s",
                                  self.client_id, env.topic)
        elif op in ("ack", "err"):
            rid = frame.get("rid")
            with self._lock:
                pending = self._pending.pop(rid, None)
            if pending is None:
                if rid is None:
                    log.warning("client %s: broker error: %s",
                                self.client_id, frame.get("error"))
            elif pending.discard:
                if not frame.get("ok", op == "ack"):
                    log.warning("client %s: async publish rejected: %s",
                                self.client_id, frame.get("error"))
            else:
                pending.reply = frame
                pending.event.set()

    def _handler_for(self, topic: str):
        with self._lock:
            handlers = list(self._handlers)
        for pattern, handler in handlers:
            if topic_matches(pattern, topic):
                return handler
        return None
