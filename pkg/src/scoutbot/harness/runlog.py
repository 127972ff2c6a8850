"""Run logs: every bus event a scenario produced, in a canonical order.

Events are captured with an arrival index, but the file and any equality
comparison use the canonical per-publisher order (bus, origin, topic,
seq). Arrival interleaving across independent publishers is scheduling
noise; within one publisher the broker guarantees order, so canonical
logs from two runs of the same scenario and seed match byte for byte.
"""

import json
from dataclasses import dataclass, field


@dataclass
class BusEvent:
    bus: str
    topic: str
    origin: str
    seq: int
    payload: str
    arrival: int

    def canonical_key(self):
        return (self.bus, self.origin, self.topic, self.seq)

    def to_record(self) -> dict:
        return {"bus": self.bus, "topic": self.topic, "origin": self.origin,
                "seq": self.seq, "payload": self.payload, "arrival": self.arrival}


@dataclass
class RunLog:
    seed: int
    config: dict
    events: list[BusEvent] = field(default_factory=list)

    def canonical_events(self) -> list[dict]:
        """Arrival-independent view used for determinism comparisons."""
        ordered = sorted(self.events, key=BusEvent.canonical_key)
        return [{k: v for k, v in e.to_record().items() if k != "arrival"}
                for e in ordered]

    def arrival_events(self) -> list[BusEvent]:
        return sorted(self.events, key=lambda e: e.arrival)

    def to_json(self) -> str:
        doc = {
            "format": "scoutbot-runlog/1",
            "seed": self.seed,
            "config": self.config,
            "events": [e.to_record() for e in
                       sorted(self.events, key=BusEvent.canonical_key)],
        }
        return json.dumps(doc, indent=1)

    def write(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def from_json(cls, text: str) -> "RunLog":
        doc = json.loads(text)
        events = [BusEvent(**rec) for rec in doc["events"]]
        return cls(seed=doc["seed"], config=doc["config"], events=events)
