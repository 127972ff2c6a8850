"""Canonical robot instructions and their twist-payload conversions.

The executable vocabulary is a fixed lookup table: moves of 1..10 feet,
turns of 45/90/180/360 degrees, and a photo request. Anything else is an
unsupported instruction; it surfaces as a failed status upstream, never
as motion.
"""

import math
from dataclasses import dataclass

FEET_TO_M = 0.3048

DISTANCES_FT = tuple(range(1, 11))
ANGLES_DEG = (45, 90, 180, 360)

MOVE_VERBS = ("move_forward", "move_backward")
TURN_VERBS = ("turn_left", "turn_right")


class UnsupportedInstruction(Exception):
    def __init__(self, text: str):
        super().__init__(f"unsupported instruction: {text}")
        self.text = text


@dataclass(frozen=True)
class Instruction:
    verb: str
    magnitude: int | None = None

    def __post_init__(self):
        if self.verb in MOVE_VERBS:
            if self.magnitude not in DISTANCES_FT:
                raise ValueError(f"move magnitude {self.magnitude!r} not in 1..10 feet")
        elif self.verb in TURN_VERBS:
            if self.magnitude not in ANGLES_DEG:
                raise ValueError(f"turn magnitude {self.magnitude!r} not in {ANGLES_DEG}")
        elif self.verb == "take_image":
            if self.magnitude is not None:
                raise ValueError("take_image takes no magnitude")
        else:
            raise ValueError(f"unknown verb {self.verb!r}")


@dataclass(frozen=True)
class TwistCommand:
    linear: float    # m/s, signed
    angular: float   # rad/s, signed, positive = counter-clockwise
    duration: float  # seconds

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if (self.linear != 0.0) == (self.angular != 0.0):
            raise ValueError("exactly one of linear/angular must be nonzero")


@dataclass(frozen=True)
class MotionProfile:
    linear_speed: float = 0.5    # m/s
    angular_speed: float = 0.5   # rad/s

    def __post_init__(self):
        if self.linear_speed <= 0 or self.angular_speed <= 0:
            raise ValueError("profile speeds must be positive")


def canonical_text(instruction: Instruction) -> str:
    if instruction.verb == "take_image":
        return "Take a picture"
    direction = instruction.verb.split("_")[1]
    if instruction.verb in MOVE_VERBS:
        unit = "foot" if instruction.magnitude == 1 else "feet"
        return f"Move {direction} {instruction.magnitude} {unit}"
    return f"Turn {direction} {instruction.magnitude} degrees"


def _build_table() -> dict[str, Instruction]:
    table = {}
    for verb in MOVE_VERBS:
        for n in DISTANCES_FT:
            ins = Instruction(verb, n)
            table[canonical_text(ins)] = ins
    for verb in TURN_VERBS:
        for a in ANGLES_DEG:
            ins = Instruction(verb, a)
            table[canonical_text(ins)] = ins
    table["Take a picture"] = Instruction("take_image")
    return table


LOOKUP_TABLE = _build_table()


def parse_instruction(text: str) -> Instruction:
    """Exact lookup of a canonical instruction string."""
    ins = LOOKUP_TABLE.get(text.strip())
    if ins is None:
        raise UnsupportedInstruction(text.strip())
    return ins


def to_twist(instruction: Instruction, profile: MotionProfile = MotionProfile()
             ) -> TwistCommand:
    """Feet/degrees to a timed velocity payload.

    Metric arguments cannot be sent directly; they become speed held for
    a duration. Right turns are clockwise, hence negative angular rate.
    """
    if instruction.verb == "take_image":
        raise ValueError("take_image has no twist")
    if instruction.verb in MOVE_VERBS:
        distance = instruction.magnitude * FEET_TO_M
        sign = 1.0 if instruction.verb == "move_forward" else -1.0
        return TwistCommand(linear=sign * profile.linear_speed, angular=0.0,
                            duration=distance / profile.linear_speed)
    angle = instruction.magnitude * math.pi / 180.0
    sign = 1.0 if instruction.verb == "turn_left" else -1.0
    return TwistCommand(linear=0.0, angular=sign * profile.angular_speed,
                        duration=angle / profile.angular_speed)
