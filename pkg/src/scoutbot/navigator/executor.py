"""Drives one instruction against the simulated robot.

Execution is open-loop timed velocity: the twist runs for its duration
in fixed ticks. Events are yielded as the run progresses so the caller
can publish them; an obstruction ends the run early with the partial
distance covered.
"""

import math
import time

from ..simworld.robot import TICK_DT, RobotSim
from .instructions import Instruction, MotionProfile, to_twist

SCAN_EVERY_TICKS = 10


def execute(instruction: Instruction, robot: RobotSim,
            profile: MotionProfile = MotionProfile(),
            dt: float = TICK_DT, real_time_factor: float = 0.0,
            scan_every: int = SCAN_EVERY_TICKS):
    """Yield event dicts: started, map/photo events, then done or failed."""
    yield {"event": "started"}
    if instruction.verb == "take_image":
        shot, stem = robot.take_photo()
        yield {"event": "photo", "photo": shot, "stem": stem}
        cells = robot.scan_and_update()
        if cells:
            yield {"event": "map", "cells": cells}
        yield {"event": "done", "moved_m": 0.0}
        return

    twist = to_twist(instruction, profile)
    n_ticks = max(1, math.ceil(twist.duration / dt))
    moved = 0.0
    blocked = False
    for i in range(n_ticks):
        tick_dt = min(dt, twist.duration - i * dt)
        if tick_dt <= 0:
            break
        d, blocked = robot.tick(twist.linear, twist.angular, tick_dt)
        moved += d
        if real_time_factor > 0:
            time.sleep(tick_dt * real_time_factor)
        if blocked:
            break
        if scan_every and (i + 1) % scan_every == 0:
            cells = robot.scan_and_update()
            if cells:
                yield {"event": "map", "cells": cells}
    cells = robot.scan_and_update()
    if cells:
        yield {"event": "map", "cells": cells}
    if blocked:
        yield {"event": "failed", "reason": "blocked", "moved_m": round(moved, 4)}
    else:
        yield {"event": "done", "moved_m": round(moved, 4)}
