"""Compound instruction expansion.

"Turn right 180 degrees and take a picture every 45 degrees" becomes a
fixed list of primitive turn/photo instructions dispatched one at a time
under the one-in-flight rule.
"""

import re

from ..navigator.instructions import ANGLES_DEG, Instruction, canonical_text

_SEQUENCE_RE = re.compile(
    r"^Turn (left|right) (\d+) degrees and take a picture every (\d+) degrees$")


class SequenceError(Exception):
    pass


def compile_instruction(canonical: str) -> list[str]:
    """Expand compound canonicals; primitives pass through unchanged."""
    m = _SEQUENCE_RE.match(canonical.strip())
    if m is None:
        return [canonical.strip()]
    direction, total, step = m.group(1), int(m.group(2)), int(m.group(3))
    if step not in ANGLES_DEG or total % step != 0:
        raise SequenceError(f"cannot expand {canonical!r}: bad step {step}")
    turn = canonical_text(Instruction(f"turn_{direction}", step))
    photo = canonical_text(Instruction("take_image"))
    out = []
    for _ in range(total // step):
        out.append(turn)
        out.append(photo)
    return out
