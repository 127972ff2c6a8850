"""Partial instruction frames for clarification subdialogues.

When an utterance names a motion but not its extent ("Move forward"),
the manager parks a frame with a typed hole and fills it from the next
reply ("3 feet"). Bare moves default to forward and bare turns to right;
replies that fill nothing are handed back for fresh classification.
"""

import re
from dataclasses import dataclass, replace

from ..navigator.instructions import ANGLES_DEG, DISTANCES_FT, Instruction, canonical_text

_NUM_WORDS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
    "six": 6, "seven": 7, "eight": 8, "nine": 9, "ten": 10,
}

_MOVE_RE = re.compile(r"\b(move|go|drive|advance|walk|head|roll)\b")
_BACK_RE = re.compile(r"\b(back|backward|backwards|reverse)\b")
_TURN_RE = re.compile(r"\b(turn|rotate|pivot|spin)\b")
_LEFT_RE = re.compile(r"\bleft\b")
_RIGHT_RE = re.compile(r"\bright\b")
_DISTANCE_RE = re.compile(r"\b(\d+|one|two|three|four|five|six|seven|eight|nine|ten)\s*"
                          r"(feet|foot|ft)\b")
_ANGLE_RE = re.compile(r"\b(\d+)\s*(degrees|degree|deg)\b")


@dataclass(frozen=True)
class PartialFrame:
    kind: str                  # "move" | "turn"
    direction: str             # forward/backward or left/right
    magnitude: int | None = None

    @property
    def complete(self) -> bool:
        return self.magnitude is not None

    def hole(self) -> str:
        return "distance" if self.kind == "move" else "angle"

    def to_instruction(self) -> Instruction:
        verb = f"{self.kind}_{self.direction}"
        return Instruction(verb, self.magnitude)

    def canonical(self) -> str:
        return canonical_text(self.to_instruction())


def _number(text: str) -> int | None:
    if text.isdigit():
        return int(text)
    return _NUM_WORDS.get(text)


def extract_frame(utterance: str) -> PartialFrame | None:
    """Read a motion verb (and direction) out of a clarify-class utterance."""
    low = utterance.lower()
    if _TURN_RE.search(low) or ((_LEFT_RE.search(low) or _RIGHT_RE.search(low))
                                and not _MOVE_RE.search(low)):
        direction = "left" if _LEFT_RE.search(low) else "right"
        frame = PartialFrame("turn", direction)
    elif _MOVE_RE.search(low) or _BACK_RE.search(low):
        direction = "backward" if _BACK_RE.search(low) else "forward"
        frame = PartialFrame("move", direction)
    else:
        return None
    mag = extract_magnitude(low, frame.kind)
    if mag is not None:
        frame = replace(frame, magnitude=mag)
    return frame


def extract_magnitude(text: str, kind: str) -> int | None:
    low = text.lower()
    if kind == "move":
        m = _DISTANCE_RE.search(low)
        return _number(m.group(1)) if m else None
    m = _ANGLE_RE.search(low)
    return int(m.group(1)) if m else None


def magnitude_valid(kind: str, magnitude: int) -> bool:
    allowed = DISTANCES_FT if kind == "move" else ANGLES_DEG
    return magnitude in allowed


def fill_frame(frame: PartialFrame, reply: str) -> PartialFrame | None:
    """Merge a clarification reply into the frame; None if nothing fills."""
    low = reply.lower()
    filled = frame
    if frame.kind == "turn":
        if _LEFT_RE.search(low):
            filled = replace(filled, direction="left")
        elif _RIGHT_RE.search(low):
            filled = replace(filled, direction="right")
    mag = extract_magnitude(low, frame.kind)
    if mag is not None:
        filled = replace(filled, magnitude=mag)
    return None if filled == frame else filled
