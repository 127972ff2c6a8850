"""The simulated robot: pose, map, and photo buffer bound to one world."""

import math
from dataclasses import dataclass, field

from . import lidar, photo as photo_mod
from .grid import DEFAULT_RESOLUTION, OccupancyGrid, update_map
from .kinematics import Pose, step
from .world import World

TICK_DT = 0.05  # seconds of simulated time per tick


@dataclass
class RobotSim:
    world: World
    pose: Pose = None
    grid: OccupancyGrid = None
    lidar_rays: int = lidar.DEFAULT_RAYS
    lidar_max_range: float = lidar.DEFAULT_MAX_RANGE
    photo_count: int = field(default=0, init=False)

    def __post_init__(self):
        if self.pose is None:
            self.pose = Pose(*self.world.start_pose())
        if self.grid is None:
            self.grid = OccupancyGrid.for_world(self.world, DEFAULT_RESOLUTION)

    def tick(self, linear: float, angular: float, dt: float = TICK_DT
             ) -> tuple[float, bool]:
        """Advance one tick; returns (distance moved, blocked flag)."""
        before = self.pose
        self.pose, blocked = step(self.world, before, linear, angular, dt)
        moved = math.hypot(self.pose.x - before.x, self.pose.y - before.y)
        return moved, blocked

    def scan_and_update(self) -> list[tuple[int, int, int]]:
        scan = lidar.lidar_scan(self.world, self.pose, n=self.lidar_rays,
                                max_range=self.lidar_max_range)
        return update_map(self.grid, scan)

    def take_photo(self, width: int = photo_mod.DEFAULT_WIDTH):
        self.photo_count += 1
        shot = photo_mod.render_photo(self.world, self.pose, width=width)
        return shot, f"photo_{self.photo_count:04d}"

    def map_payload(self, cells: list[tuple[int, int, int]]) -> dict:
        nx, ny = self.grid.shape
        return {
            "kind": "delta",
            "resolution": self.grid.resolution,
            "origin": list(self.grid.origin),
            "shape": [nx, ny],
            "cells": [[ix, iy, v] for ix, iy, v in cells],
            "pose": [self.pose.x, self.pose.y, self.pose.theta],
        }
