"""Minimal topic-based publish/subscribe broker over TCP.

One broker instance models one bus. Delivery guarantees: exactly-once,
in per-publisher order, to every connected client with a matching
subscription at publish time. Nothing is retained; disconnecting drops
subscriptions.
"""

import logging
import socket
import threading

from .protocol import (
    DEFAULT_PAYLOAD_LIMIT,
    ProtocolError,
    decode_line,
    encode_frame,
    topic_matches,
    valid_pattern,
    valid_topic,
)

log = logging.getLogger(__name__)

# Largest accepted frame line: payload limit plus headroom for the other fields
# and JSON escaping (escaping at worst doubles the payload bytes).
_LINE_HEADROOM = 64 * 1024


class BrokerError(Exception):
    pass


class _Connection:
    def __init__(self, sock: socket.socket, addr):
        self.sock = sock
        self.addr = addr
        self.client_id = f"{addr[0]}:{addr[1]}"
        self.patterns: list[str] = []
        self.send_lock = threading.Lock()
        # seq counters keyed by topic, for this publisher connection
        self.seq: dict[str, int] = {}
        self.alive = True

    def send(self, data: bytes) -> bool:
        with self.send_lock:
            if not self.alive:
                return False
            try:
                self.sock.sendall(data)
                return True
            except OSError:
                self.alive = False
                return False


class Broker:
    """A bus: accepts clients, routes published envelopes to subscribers."""

    def __init__(self, host: str = "127.0.0.1", port: int = 0,
                 payload_limit: int = DEFAULT_PAYLOAD_LIMIT):
        self.host = host
        self.payload_limit = payload_limit
        self._requested_port = port
        self._server: socket.socket | None = None
        self._conns: set[_Connection] = set()
        self._lock = threading.Lock()
        self._stopping = threading.Event()
        self._accept_thread: threading.Thread | None = None
        self.port: int | None = None

    @property
    def address(self) -> str:
        return f"{self.host}:{self.port}"

    def start(self) -> "Broker":
        server = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        server.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            server.bind((self.host, self._requested_port))
        except OSError as exc:
            server.close()
            raise BrokerError(
                f"cannot bind {self.host}:{self._requested_port}: {exc}") from exc
        server.listen(64)
        self._server = server
        self.port = server.getsockname()[1]
        self._stopping.clear()
        self._accept_thread = threading.Thread(
            target=self._accept_loop, name=f"broker-{self.port}", daemon=True)
        self._accept_thread.start()
        log.info("broker listening on %s", self.address)
        return self

    def stop(self):
        self._stopping.set()
        if self._server is not None:
            try:
                self._server.shutdown(socket.SHUT_RDWR)  # wakes accept()
            except OSError:
                pass
            try:
                self._server.close()
            except OSError:
                pass
        with self._lock:
            conns = list(self._conns)
            self._conns.clear()
        for conn in conns:
            conn.alive = False
            try:
                conn.sock.close()
            except OSError:
                pass
        if self._accept_thread is not None:
            self._accept_thread.join(timeout=2.0)

    # -- internals ---------------------------------------------------------

    def _accept_loop(self):
        while not self._stopping.is_set():
            try:
                sock, addr = self._server.accept()
            except OSError:
                break
            sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
            conn = _Connection(sock, addr)
            with self._lock:
                self._conns.add(conn)
            threading.Thread(target=self._serve, args=(conn,),
                             name=f"broker-conn-{addr[1]}", daemon=True).start()

    def _serve(self, conn: _Connection):
        buf = b""
        cap = self.payload_limit * 2 + _LINE_HEADROOM
        try:
            while not self._stopping.is_set():
                try:
                    chunk = conn.sock.recv(65536)
                except OSError:
                    break
                if not chunk:
                    break
                buf += chunk
                if len(buf) > cap:
                    conn.send(encode_frame(
                        {"op": "err", "error": "frame exceeds size cap"}))
                    break
                while b"\n" in buf:
                    line, buf = buf.split(b"\n", 1)
                    if line.strip():
                        self._handle_line(conn, line)
        finally:
            self._drop(conn)

    def _drop(self, conn: _Connection):
        conn.alive = False
        with self._lock:
            self._conns.discard(conn)
        try:
            conn.sock.close()
        except OSError:
            pass

    def _handle_line(self, conn: _Connection, line: bytes):
        try:
            frame = decode_line(line)
        except ProtocolError as exc:
            conn.send(encode_frame({"op": "err", "error": str(exc)}))
            return
        op = frame.get("op")
        if op == "hello":
            client = frame.get("client")
            if isinstance(client, str) and client:
                conn.client_id = client
        elif op == "sub":
            self._handle_sub(conn, frame)
        elif op == "pub":
            self._handle_pub(conn, frame)
        else:
            conn.send(encode_frame({"op": "err", "error": f"unknown op {op!r}"}))

    def _handle_sub(self, conn: _Connection, frame: dict):
        pattern = frame.get("pattern")
        rid = frame.get("rid")
        if not isinstance(pattern, str) or not valid_pattern(pattern):
            conn.send(encode_frame(
                {"op": "err", "rid": rid,
                 "error": f"malformed pattern {pattern!r}"}))
            return
        with self._lock:
            if pattern not in conn.patterns:
                conn.patterns.append(pattern)
        conn.send(encode_frame({"op": "ack", "ok": True, "for": "sub", "rid": rid}))

    def _handle_pub(self, conn: _Connection, frame: dict):
        topic = frame.get("topic")
        payload = frame.get("payload")
        mark = frame.get("bridge_mark")
        rid = frame.get("rid")
        if not isinstance(topic, str) or not valid_topic(topic):
            conn.send(encode_frame(
                {"op": "ack", "ok": False, "for": "pub", "rid": rid,
                 "error": f"malformed topic {topic!r}"}))
            return
        if not isinstance(payload, str):
            conn.send(encode_frame(
                {"op": "ack", "ok": False, "for": "pub", "rid": rid,
                 "error": "payload must be a string"}))
            return
        nbytes = len(payload.encode("utf-8"))
        if nbytes > self.payload_limit:
            conn.send(encode_frame(
                {"op": "ack", "ok": False, "for": "pub", "rid": rid,
                 "error": f"payload too large ({nbytes} > {self.payload_limit})"}))
            return
        seq = conn.seq.get(topic, 0) + 1
        conn.seq[topic] = seq
        out = encode_frame({
            "op": "msg", "topic": topic, "payload": payload,
            "origin": conn.client_id, "bridge_mark": mark, "seq": seq,
        })
        # Snapshot matching subscribers under the lock, deliver outside it.
        # Delivery happens on the publisher's reader thread, so per-publisher
        # order is preserved for every subscriber. A client with several
        # matching patterns still receives the message exactly once.
        with self._lock:
            targets = [c for c in self._conns
                       if any(topic_matches(p, topic) for p in c.patterns)]
        for target in targets:
            target.send(out)
        conn.send(encode_frame({"op": "ack", "ok": True, "for": "pub",
                                "topic": topic, "seq": seq, "rid": rid}))


def start_broker(host: str = "127.0.0.1", port: int = 0,
                 payload_limit: int = DEFAULT_PAYLOAD_LIMIT) -> Broker:
    """Start a broker and return its handle; port 0 lets the OS choose."""
    return Broker(host, port, payload_limit).start()
