from .frames import PartialFrame, extract_frame, fill_frame
from .manager import (
    CLARIFY_MOVE,
    CLARIFY_TURN,
    COMMANDER,
    DONE_TEXT,
    RN,
    DialogueManager,
    DialogueState,
    FloorError,
    FloorMessage,
    feedback_for,
)
from .sequences import SequenceError, compile_instruction
from .service import DialogueService

__all__ = [
    "PartialFrame", "extract_frame", "fill_frame",
    "CLARIFY_MOVE", "CLARIFY_TURN", "COMMANDER", "DONE_TEXT", "RN",
    "DialogueManager", "DialogueState", "FloorError", "FloorMessage", "feedback_for",
    "SequenceError", "compile_instruction",
    "DialogueService",
]
