"""The running bridge: a client of both brokers.

Every envelope arriving on a rule's source topic is translated and
republished on the other bus with the bridge's mark symbol. Envelopes
already carrying the mark are dropped before translation, so nothing
this bridge published is ever processed twice, whatever the rule set.
Untranslatable payloads are counted and dropped; the bridge stays up.
"""

import logging
import queue
import threading
import time

from ..messaging import BusClient, Envelope
from .rules import BridgeConfig, BridgeRule, TransformError

log = logging.getLogger(__name__)

RETRY_ATTEMPTS = 5
RETRY_BASE_DELAY = 0.2


class BridgeError(Exception):
    pass


def translate(rule: BridgeRule, envelope: Envelope, mark_symbol: str) -> Envelope:
    """Rewrite one envelope per the rule; raises TransformError on bad payloads."""
    if envelope.topic != rule.source_topic:
        raise ValueError(f"rule for {rule.source_topic!r} got {envelope.topic!r}")
    return Envelope(topic=rule.target_topic,
                    payload=rule.apply(envelope.payload),
                    origin=envelope.origin,
                    bridge_mark=mark_symbol)


def _connect_with_backoff(address: str, client_id: str) -> BusClient:
    delay = RETRY_BASE_DELAY
    for attempt in range(RETRY_ATTEMPTS):
        try:
            return BusClient(address, client_id)
        except OSError as exc:
            if attempt == RETRY_ATTEMPTS - 1:
                raise BridgeError(f"broker {address} unreachable: {exc}") from exc
            log.warning("bridge: %s unreachable, retrying in %.1fs", address, delay)
            time.sleep(delay)
            delay *= 2
    raise BridgeError(f"broker {address} unreachable")


class Bridge:
    def __init__(self, config: BridgeConfig, dialogue_addr: str, robot_addr: str,
                 client_id: str = "bridge"):
        self.config = config
        self.dropped_marked = 0
        self.dropped_bad_payload = 0
        self.translated = 0
        self._counter_lock = threading.Lock()
        self._stop = threading.Event()
        self._clients = {
            "dialogue": _connect_with_backoff(dialogue_addr, client_id),
            "robot": _connect_with_backoff(robot_addr, client_id),
        }
        # One queue and worker per rule: translations for one source topic
        # stay ordered, distinct topics interleave freely. Doing the
        # publish off the reader thread also means two bridges facing each
        # other can never stall each other's delivery.
        self._queues: list[queue.Queue] = []
        self._workers: list[threading.Thread] = []
        for rule in config.rules:
            q: queue.Queue = queue.Queue()
            self._queues.append(q)
            target = self._clients[rule.target_bus]
            self._clients[rule.source_bus].subscribe(
                rule.source_topic, lambda env, q=q: q.put(env))
            worker = threading.Thread(
                target=self._drain, args=(rule, target, q),
                name=f"bridge-{rule.source_bus}-{rule.source_topic}", daemon=True)
            self._workers.append(worker)
            worker.start()

    def close(self):
        self._stop.set()
        for q in self._queues:
            q.put(None)
        for worker in self._workers:
            worker.join(timeout=2.0)
        for client in self._clients.values():
            client.close()

    def counters(self) -> dict[str, int]:
        with self._counter_lock:
            return {"translated": self.translated,
                    "dropped_marked": self.dropped_marked,
                    "dropped_bad_payload": self.dropped_bad_payload}

    def _drain(self, rule: BridgeRule, target: BusClient, q: queue.Queue):
        while not self._stop.is_set():
            envelope = q.get()
            if envelope is None:
                break
            try:
                self._forward(rule, target, envelope)
            except Exception:
                log.exception("bridge: forwarding %s failed", rule.source_topic)

    def _forward(self, rule: BridgeRule, target: BusClient, envelope: Envelope):
        if envelope.bridge_mark == self.config.mark_symbol:
            with self._counter_lock:
                self.dropped_marked += 1
            return
        try:
            out = translate(rule, envelope, self.config.mark_symbol)
        except TransformError as exc:
            with self._counter_lock:
                self.dropped_bad_payload += 1
            log.warning("bridge: dropping %s message: %s", rule.source_topic, exc)
            return
        target.publish(out.topic, out.payload, bridge_mark=out.bridge_mark)
        with self._counter_lock:
            self.translated += 1


def run_bridge(config: BridgeConfig, dialogue_addr: str, robot_addr: str) -> Bridge:
    """Connect to both brokers (with bounded backoff) and start forwarding."""
    return Bridge(config, dialogue_addr, robot_addr)
