"""Multi-floor dialogue manager.

Two linked conversations share one manager: the Commander floor (text in
and feedback out) and the robot floor (instructions out, status in). A
robot instruction always leaves in the same turn as exactly one
Commander feedback_start; clarification turns never emit instructions.
Commander input that arrives while the robot is moving is queued and
handled after completion, since motion cannot be interrupted reliably.
"""

import logging
from dataclasses import dataclass, field

from ..nlu.model import RelevanceModel
from .frames import PartialFrame, extract_frame, fill_frame, magnitude_valid
from .sequences import SequenceError, compile_instruction

log = logging.getLogger(__name__)

COMMANDER = "commander"
RN = "rn"

COMMANDER_KINDS = ("feedback_start", "feedback_done", "clarification",
                   "negative", "info", "image_notice")

DONE_TEXT = "Done."
CLARIFY_MOVE = "How far should I move?"
CLARIFY_TURN = "How far should I turn?"


class FloorError(Exception):
    pass


@dataclass(frozen=True)
class FloorMessage:
    floor: str
    kind: str
    text: str
    ref: str | None = None

    def __post_init__(self):
        if self.floor == RN:
            if self.kind != "instruction":
                raise FloorError(f"kind {self.kind!r} not allowed on rn floor")
        elif self.floor == COMMANDER:
            if self.kind not in COMMANDER_KINDS:
                raise FloorError(f"kind {self.kind!r} not allowed on commander floor")
        else:
            raise FloorError(f"unknown floor {self.floor!r}")


@dataclass
class DialogueState:
    pending_clarification: PartialFrame | None = None
    last_instruction: str | None = None
    in_flight: bool = False
    sequence_queue: list[str] = field(default_factory=list)
    utterance_queue: list[str] = field(default_factory=list)
    turn_log: list[tuple[str, str, str, int]] = field(default_factory=list)
    clock: int = 0


def feedback_for(instruction: str) -> str:
    """Positive feedback matched to the instruction family."""
    head = instruction.strip().split(" ", 1)[0].lower()
    if head == "move":
        return "Moving..."
    if head == "turn":
        return "Turning..."
    if head == "take":
        return "Taking a photo..."
    return "Executing..."


class DialogueManager:
    def __init__(self, model: RelevanceModel, state: DialogueState | None = None):
        self.model = model
        self.state = state or DialogueState()

    # -- commander floor ---------------------------------------------------

    def handle_commander(self, utterance: str) -> list[FloorMessage]:
        st = self.state
        self._log(COMMANDER, "commander", utterance)
        if st.in_flight:
            st.utterance_queue.append(utterance)
            return []
        return self._process(utterance)

    def _process(self, utterance: str) -> list[FloorMessage]:
        st = self.state
        if st.pending_clarification is not None:
            messages = self._resume_clarification(utterance)
            if messages is not None:
                return messages
            st.pending_clarification = None  # reply fit nothing: start over
        out = self.model.hybrid_output(utterance)
        kind = out["kind"]
        if kind == "actionable":
            try:
                primitives = compile_instruction(out["rn_instruction"])
            except SequenceError as exc:
                log.warning("dm: %s", exc)
                return self._say("negative", f"Sorry, I can't carry that out ({exc}).")
            return self._dispatch(primitives)
        if kind == "clarify":
            st.pending_clarification = extract_frame(utterance)
            return self._say("clarification", out["commander_feedback"])
        if kind == "info":
            return self._say("info", out["commander_feedback"])
        return self._say("negative", out["commander_feedback"])

    def _resume_clarification(self, reply: str) -> list[FloorMessage] | None:
        st = self.state
        filled = fill_frame(st.pending_clarification, reply)
        if filled is None:
            return None
        if not filled.complete:
            st.pending_clarification = filled
            text = CLARIFY_MOVE if filled.kind == "move" else CLARIFY_TURN
            return self._say("clarification", text)
        if not magnitude_valid(filled.kind, filled.magnitude):
            st.pending_clarification = PartialFrame(filled.kind, filled.direction)
            if filled.kind == "move":
                text = f"I can move between 1 and 10 feet. {CLARIFY_MOVE}"
            else:
                text = f"I can turn 45, 90, 180, or 360 degrees. {CLARIFY_TURN}"
            return self._say("clarification", text)
        st.pending_clarification = None
        return self._dispatch([filled.canonical()])

    # -- robot floor ---------------------------------------------------------

    def handle_rn_status(self, status: dict) -> list[FloorMessage]:
        st = self.state
        event = status.get("event")
        if not st.in_flight:
            log.info("dm: ignoring status %r with no instruction in flight", event)
            return []
        if event == "started":
            return []
        if event == "image":
            ref = status.get("ref")
            self._log(COMMANDER, "scout", f"[photo {ref}]")
            return [FloorMessage(COMMANDER, "image_notice",
                                 "Here is the photo you asked for.", ref=ref)]
        if event == "done":
            if st.sequence_queue:
                return self._dispatch_next()
            st.in_flight = False
            st.last_instruction = None
            messages = self._say("feedback_done", DONE_TEXT)
            return messages + self._drain_queue()
        if event == "failed":
            reason = status.get("reason", "unknown failure")
            st.in_flight = False
            st.last_instruction = None
            st.sequence_queue.clear()
            messages = self._say("negative", f"Sorry, I can't do that ({reason}).")
            return messages + self._drain_queue()
        log.info("dm: ignoring unknown status %r", event)
        return []

    # -- internals -----------------------------------------------------------

    def _dispatch(self, primitives: list[str]) -> list[FloorMessage]:
        st = self.state
        st.sequence_queue = list(primitives)
        return self._dispatch_next()

    def _dispatch_next(self) -> list[FloorMessage]:
        st = self.state
        instruction = st.sequence_queue.pop(0)
        st.in_flight = True
        st.last_instruction = instruction
        st.pending_clarification = None
        self._log(RN, "dm", instruction)
        feedback = feedback_for(instruction)
        self._log(COMMANDER, "scout", feedback)
        return [FloorMessage(RN, "instruction", instruction),
                FloorMessage(COMMANDER, "feedback_start", feedback)]

    def _drain_queue(self) -> list[FloorMessage]:
        st = self.state
        messages: list[FloorMessage] = []
        while st.utterance_queue and not st.in_flight:
            messages += self._process(st.utterance_queue.pop(0))
        return messages

    def _say(self, kind: str, text: str) -> list[FloorMessage]:
        self._log(COMMANDER, "scout", text)
        return [FloorMessage(COMMANDER, kind, text)]

    def _log(self, floor: str, speaker: str, text: str):
        st = self.state
        st.turn_log.append((floor, speaker, text, st.clock))
        st.clock += 1

    def export_transcript(self) -> str:
        """One turn per line: floor, speaker, text."""
        return "\n".join(f"{t}\t{floor}\t{speaker}\t{text}"
                         for floor, speaker, text, t in self.state.turn_log)
