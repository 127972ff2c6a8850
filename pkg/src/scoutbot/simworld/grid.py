"""Occupancy grid fed by lidar scans.

Cells are unknown until observed; free marks never downgrade occupied
ones, so the non-unknown region and the occupied set both grow
monotonically over a run.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .lidar import LidarScan
from .world import World

DEFAULT_RESOLUTION = 0.05

UNKNOWN = kernels.UNKNOWN
FREE = kernels.FREE
OCCUPIED = kernels.OCCUPIED


@dataclass
class OccupancyGrid:
    resolution: float
    origin: tuple[float, float]
    cells: np.ndarray = field(repr=False)   # int8 [nx, ny]

    @classmethod
    def for_world(cls, world: World, resolution: float = DEFAULT_RESOLUTION):
        nx = int(math.ceil((world.x1 - world.x0) / resolution))
        ny = int(math.ceil((world.y1 - world.y0) / resolution))
        cells = np.zeros((nx, ny), dtype=np.int8)
        return cls(resolution=resolution, origin=(world.x0, world.y0), cells=cells)

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def cell_of(self, x: float, y: float) -> tuple[int, int]:
        ox, oy = self.origin
        return (int(math.floor((x - ox) / self.resolution)),
                int(math.floor((y - oy) / self.resolution)))

    def counts(self) -> dict[str, int]:
        return {
            "unknown": int(np.count_nonzero(self.cells == UNKNOWN)),
            "free": int(np.count_nonzero(self.cells == FREE)),
            "occupied": int(np.count_nonzero(self.cells == OCCUPIED)),
        }


def update_map(grid: OccupancyGrid, scan: LidarScan) -> list[tuple[int, int, int]]:
    """Fold one scan into the grid; returns changed cells as (ix, iy, state)."""
    before = grid.cells.copy()
    ox, oy = grid.origin
    kernels.trace_rays_into_grid(grid.cells, scan.pose.x, scan.pose.y,
                                 scan.angles, scan.ranges, scan.hits,
                                 grid.resolution, ox, oy)
    changed = np.argwhere(grid.cells != before)
    return [(int(ix), int(iy), int(grid.cells[ix, iy])) for ix, iy in changed]
