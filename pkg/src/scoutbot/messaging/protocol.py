"""Wire protocol shared by the broker and its clients.

Frames are newline-delimited UTF-8 JSON objects, one object per line.
JSON string escaping guarantees a payload can never contain a raw frame
delimiter. The full grammar is documented in docs/formats.md.
"""

import json
import re
from dataclasses import dataclass

TOPIC_RE = re.compile(r"^[A-Za-z0-9_]+(\.[A-Za-z0-9_]+)*$")
PATTERN_RE = re.compile(r"^[A-Za-z0-9_]+(\.[A-Za-z0-9_]+)*(\.\*)?$|^\*$")

DEFAULT_PAYLOAD_LIMIT = 1 << 20  # 1 MiB of UTF-8 payload bytes


class ProtocolError(Exception):
    pass


def valid_topic(topic: str) -> bool:
    return bool(TOPIC_RE.match(topic))


def valid_pattern(pattern: str) -> bool:
    """A pattern is a topic, optionally with `*` as the final segment."""
    return bool(PATTERN_RE.match(pattern))


def topic_matches(pattern: str, topic: str) -> bool:
    """Trailing `*` stands for exactly one topic segment."""
    if pattern == topic:
        return True
    if not pattern.endswith("*"):
        return False
    pseg = pattern.split(".")
    tseg = topic.split(".")
    return len(pseg) == len(tseg) and pseg[:-1] == tseg[: len(pseg) - 1]


@dataclass
class Envelope:
    """One routed message as seen by subscribers."""

    topic: str
    payload: str
    origin: str | None = None
    bridge_mark: str | None = None
    seq: int = 0

    def to_frame(self) -> dict:
        return {
            "op": "msg",
            "topic": self.topic,
            "payload": self.payload,
            "origin": self.origin,
            "bridge_mark": self.bridge_mark,
            "seq": self.seq,
        }

    @classmethod
    def from_frame(cls, frame: dict) -> "Envelope":
        return cls(
            topic=frame["topic"],
            payload=frame["payload"],
            origin=frame.get("origin"),
            bridge_mark=frame.get("bridge_mark"),
            seq=frame.get("seq", 0),
        )


def encode_frame(frame: dict) -> bytes:
    return (json.dumps(frame, separators=(",", ":")) + "\n").encode("utf-8")


def decode_line(line: bytes) -> dict:
    try:
        frame = json.loads(line.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ProtocolError(f"unparseable frame: {exc}") from exc
    if not isinstance(frame, dict) or "op" not in frame:
        raise ProtocolError("frame is not an object with an 'op' field")
    return frame
