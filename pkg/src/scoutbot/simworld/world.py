"""World model: bounds, labeled axis-aligned obstacles, robot footprint.

World files are plain text, one record per line (see docs/formats.md):

    bounds <x0> <y0> <x1> <y1>
    footprint <radius>
    start <x> <y> <theta>
    obstacle <x0> <y0> <x1> <y1> <label words...>

Blank lines and lines starting with '#' are ignored.
"""

import math
from dataclasses import dataclass, field

import numpy as np

# circumscribed radius of a 20in x 17in base, rounded up
DEFAULT_FOOTPRINT = 0.26


class WorldError(Exception):
    pass


@dataclass(frozen=True)
class Obstacle:
    x0: float
    y0: float
    x1: float
    y1: float
    label: str = ""

    def distance_to(self, x: float, y: float) -> float:
        dx = max(self.x0 - x, 0.0, x - self.x1)
        dy = max(self.y0 - y, 0.0, y - self.y1)
        return math.hypot(dx, dy)


@dataclass
class World:
    x0: float
    y0: float
    x1: float
    y1: float
    obstacles: list[Obstacle] = field(default_factory=list)
    footprint: float = DEFAULT_FOOTPRINT
    start: tuple[float, float, float] | None = None

    def __post_init__(self):
        if self.x1 <= self.x0 or self.y1 <= self.y0:
            raise WorldError("bounds must have positive extent")
        if self.footprint <= 0:
            raise WorldError("footprint must be positive")
        for ob in self.obstacles:
            if ob.x1 <= ob.x0 or ob.y1 <= ob.y0:
                raise WorldError(f"degenerate obstacle {ob}")
            if ob.x0 < self.x0 or ob.y0 < self.y0 or ob.x1 > self.x1 or ob.y1 > self.y1:
                raise WorldError(f"obstacle {ob.label!r} outside bounds")
        self._rects = np.array(
            [[ob.x0, ob.y0, ob.x1, ob.y1] for ob in self.obstacles],
            dtype=np.float64).reshape(len(self.obstacles), 4)

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return (self.x0, self.y0, self.x1, self.y1)

    @property
    def rects(self) -> np.ndarray:
        return self._rects

    def start_pose(self):
        if self.start is not None:
            return self.start
        return ((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0, 0.0)

    def obstacle_clearance(self, x: float, y: float) -> float:
        if not self.obstacles:
            return math.inf
        return min(ob.distance_to(x, y) for ob in self.obstacles)

    def boundary_clearance(self, x: float, y: float) -> float:
        return min(x - self.x0, self.x1 - x, y - self.y0, self.y1 - y)

    def clearance(self, x: float, y: float) -> float:
        """Distance to the nearest obstacle or bound (negative outside)."""
        return min(self.obstacle_clearance(x, y), self.boundary_clearance(x, y))

    def is_free(self, x: float, y: float, margin: float | None = None) -> bool:
        m = self.footprint if margin is None else margin
        return self.clearance(x, y) >= m


def parse_world(text: str) -> World:
    bounds = None
    footprint = DEFAULT_FOOTPRINT
    start = None
    obstacles: list[Obstacle] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind = fields[0]
        try:
            if kind == "bounds":
                bounds = tuple(float(v) for v in fields[1:5])
                if len(fields) != 5:
                    raise ValueError("bounds takes 4 numbers")
            elif kind == "footprint":
                footprint = float(fields[1])
            elif kind == "start":
                start = (float(fields[1]), float(fields[2]), float(fields[3]))
            elif kind == "obstacle":
                label = " ".join(fields[5:])
                obstacles.append(Obstacle(float(fields[1]), float(fields[2]),
                                          float(fields[3]), float(fields[4]), label))
            else:
                raise ValueError(f"unknown record {kind!r}")
        except (ValueError, IndexError) as exc:
            raise WorldError(f"world file line {lineno}: {exc}") from exc
    if bounds is None:
        raise WorldError("world file has no bounds record")
    return World(*bounds, obstacles=obstacles, footprint=footprint, start=start)


def load_world(path) -> World:
    with open(path, encoding="utf-8") as fh:
        return parse_world(fh.read())
