"""Differential-drive pose integration with exact per-tick arcs.

A twist is integrated in closed form (no Euler drift). Motion that would
bring the robot center closer than footprint + STANDOFF to any obstacle
or bound is cut short at the standoff and flagged blocked.
"""

import math
from dataclasses import dataclass

from .world import World

STANDOFF = 0.01  # stop margin beyond the footprint when blocked


def normalize_angle(theta: float) -> float:
    """Wrap into (-pi, pi]."""
    th = math.remainder(theta, math.tau)
    if th <= -math.pi:
        th += math.tau
    return th


@dataclass(frozen=True)
class Pose:
    x: float
    y: float
    theta: float

    def __iter__(self):
        return iter((self.x, self.y, self.theta))


def arc_pose(pose: Pose, v: float, w: float, dt: float) -> Pose:
    """Closed-form constant-twist integration for time dt."""
    if w == 0.0:
        return Pose(pose.x + v * dt * math.cos(pose.theta),
                    pose.y + v * dt * math.sin(pose.theta),
                    normalize_angle(pose.theta))
    r = v / w
    th1 = pose.theta + w * dt
    return Pose(pose.x + r * (math.sin(th1) - math.sin(pose.theta)),
                pose.y - r * (math.cos(th1) - math.cos(pose.theta)),
                normalize_angle(th1))


def step(world: World, pose: Pose, v: float, w: float, dt: float,
         ) -> tuple[Pose, bool]:
    """Advance one tick; returns (new pose, blocked flag).

    Collision checks only matter when translating: a pure rotation keeps
    the circular footprint fixed, so it can never penetrate.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if v == 0.0 and w == 0.0:
        return pose, False
    target = arc_pose(pose, v, w, dt)
    if v == 0.0:
        return target, False
    margin = world.footprint + STANDOFF
    if world.clearance(target.x, target.y) >= margin:
        return target, False
    # Bisect the arc parameter for the last position that keeps the margin.
    lo, hi = 0.0, 1.0
    for _ in range(48):
        mid = (lo + hi) / 2.0
        p = arc_pose(pose, v, w, dt * mid)
        if world.clearance(p.x, p.y) >= margin:
            lo = mid
        else:
            hi = mid
    stopped = arc_pose(pose, v, w, dt * lo) if lo > 0.0 else pose
    return stopped, True
