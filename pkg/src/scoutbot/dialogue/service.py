"""Dialogue-bus service around the manager.

Both floors feed one internal queue, so a single loop serializes
Commander utterances and bridged robot statuses. Outgoing robot
instructions go to dm.instruction (bridged onward to rn.instruction);
Commander-floor messages go to dm.commander.out as JSON {kind, text,
ref}.
"""

import json
import logging
import queue
import threading

from ..messaging import BusClient
from ..nlu.model import RelevanceModel
from .manager import RN, DialogueManager

log = logging.getLogger(__name__)

TOPIC_COMMANDER_IN = "dm.commander.in"
TOPIC_COMMANDER_OUT = "dm.commander.out"
TOPIC_INSTRUCTION_OUT = "dm.instruction"
TOPIC_STATUS_IN = "rn.status"   # bridged copy on the dialogue bus


class DialogueService:
    def __init__(self, dialogue_bus: str, model: RelevanceModel,
                 client_id: str = "dm"):
        self.manager = DialogueManager(model)
        self._events: queue.Queue = queue.Queue()
        self._stop = threading.Event()
        self.bus = BusClient(dialogue_bus, client_id)
        self.bus.subscribe(TOPIC_COMMANDER_IN,
                           lambda env: self._events.put(("utterance", env.payload)))
        self.bus.subscribe(TOPIC_STATUS_IN,
                           lambda env: self._events.put(("status", env.payload)))
        self._loop_thread = threading.Thread(target=self._loop, name="dm-loop",
                                             daemon=True)
        self._loop_thread.start()

    def close(self):
        self._stop.set()
        self._events.put(None)
        self._loop_thread.join(timeout=5.0)
        self.bus.close()

    def idle(self) -> bool:
        st = self.manager.state
        return (self._events.empty() and not st.in_flight
                and not st.utterance_queue and not st.sequence_queue)

    def _loop(self):
        while not self._stop.is_set():
            item = self._events.get()
            if item is None:
                break
            kind, payload = item
            try:
                if kind == "utterance":
                    messages = self.manager.handle_commander(payload)
                else:
                    try:
                        status = json.loads(payload)
                    except json.JSONDecodeError:
                        log.warning("dm: undecodable status payload %r", payload)
                        continue
                    messages = self.manager.handle_rn_status(status)
                for msg in messages:
                    self._publish(msg)
            except Exception:
                log.exception("dm: failed handling %s", kind)

    def _publish(self, msg):
        if msg.floor == RN:
            self.bus.publish(TOPIC_INSTRUCTION_OUT, msg.text)
        else:
            body = {"kind": msg.kind, "text": msg.text}
            if msg.ref:
                body["ref"] = msg.ref
            self.bus.publish(TOPIC_COMMANDER_OUT, json.dumps(body))
