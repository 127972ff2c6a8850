from .executor import SCAN_EVERY_TICKS, execute
from .instructions import (
    ANGLES_DEG,
    DISTANCES_FT,
    FEET_TO_M,
    LOOKUP_TABLE,
    Instruction,
    MotionProfile,
    TwistCommand,
    UnsupportedInstruction,
    canonical_text,
    parse_instruction,
    to_twist,
)
from .service import NavigatorService

__all__ = [
    "SCAN_EVERY_TICKS", "execute",
    "ANGLES_DEG", "DISTANCES_FT", "FEET_TO_M", "LOOKUP_TABLE",
    "Instruction", "MotionProfile", "TwistCommand", "UnsupportedInstruction",
    "canonical_text", "parse_instruction", "to_twist",
    "NavigatorService",
]
