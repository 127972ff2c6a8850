"""Ray-cast range scanner over the world geometry."""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .kinematics import Pose
from .world import World

DEFAULT_RAYS = 360
DEFAULT_FOV = math.tau
DEFAULT_MAX_RANGE = 10.0


@dataclass
class LidarScan:
    angles: np.ndarray     # absolute world bearings, one per ray
    ranges: np.ndarray     # meters, clipped to max_range
    hits: np.ndarray       # obstacle index, -1 bounds, -2 clipped
    max_range: float
    pose: Pose


def scan_angles(theta: float, n: int, fov: float) -> np.ndarray:
    """N bearings spread over the field of view, centered on the heading.

    A full-circle fov excludes the would-be duplicate end ray.
    """
    if n < 1:
        raise ValueError("need at least one ray")
    full = abs(fov - math.tau) < 1e-12
    if full:
        offsets = [k * fov / n - fov / 2.0 for k in range(n)]
    elif n == 1:
        offsets = [0.0]
    else:
        offsets = [k * fov / (n - 1) - fov / 2.0 for k in range(n)]
    return np.array([theta + o for o in offsets], dtype=np.float64)


def lidar_scan(world: World, pose: Pose, n: int = DEFAULT_RAYS,
               fov: float = DEFAULT_FOV,
               max_range: float = DEFAULT_MAX_RANGE) -> LidarScan:
    angles = scan_angles(pose.theta, n, fov)
    ranges = np.empty(n, dtype=np.float64)
    hits = np.empty(n, dtype=np.int32)
    kernels.cast_rays(pose.x, pose.y, angles, world.rects, world.bounds,
                      max_range, ranges, hits)
    return LidarScan(angles=angles, ranges=ranges, hits=hits,
                     max_range=max_range, pose=pose)
