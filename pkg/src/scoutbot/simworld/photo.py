"""Frontal-view photos: one depth/label sample per image column.

The camera sweeps a 90-degree frontal field of view. Each column holds
the depth of the nearest surface and its label. Photos serialize to a
binary PGM (nearer is brighter) plus a JSON label sidecar.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .kinematics import Pose
from .world import World

DEFAULT_WIDTH = 160
PHOTO_FOV = math.pi / 2.0
DEFAULT_MAX_DEPTH = 10.0
BOUNDS_LABEL = "wall"


@dataclass
class Photo:
    width: int
    depths: list[float]
    labels: list[str]
    max_depth: float
    pose: Pose

    def to_pgm(self) -> bytes:
        height = max(1, self.width // 2)
        row = bytearray()
        for d in self.depths:
            frac = min(d, self.max_depth) / self.max_depth
            row.append(int(round(255 * (1.0 - frac))))
        header = f"P5\n{self.width} {height}\n255\n".encode("ascii")
        return header + bytes(row) * height

    def sidecar(self) -> str:
        return json.dumps({
            "width": self.width,
            "max_depth": self.max_depth,
            "pose": {"x": self.pose.x, "y": self.pose.y, "theta": self.pose.theta},
            "columns": [{"label": lb, "depth": round(d, 4)}
                        for lb, d in zip(self.labels, self.depths)],
        })


def render_photo(world: World, pose: Pose, width: int = DEFAULT_WIDTH,
                 max_depth: float = DEFAULT_MAX_DEPTH) -> Photo:
    # leftmost column looks toward the left edge of the view
    if width < 1:
        raise ValueError("width must be positive")
    if width == 1:
        offsets = [0.0]
    else:
        offsets = [PHOTO_FOV / 2.0 - c * PHOTO_FOV / (width - 1) for c in range(width)]
    angles = np.array([pose.theta + o for o in offsets], dtype=np.float64)
    ranges = np.empty(width, dtype=np.float64)
    hits = np.empty(width, dtype=np.int32)
    kernels.cast_rays(pose.x, pose.y, angles, world.rects, world.bounds,
                      max_depth, ranges, hits)
    labels = []
    for h in hits:
        if h >= 0:
            labels.append(world.obstacles[h].label)
        elif h == kernels.HIT_BOUNDS:
            labels.append(BOUNDS_LABEL)
        else:
            labels.append("")
    return Photo(width=width, depths=[float(r) for r in ranges], labels=labels,
                 max_depth=max_depth, pose=pose)


def save_photo(photo: Photo, directory, stem: str) -> tuple[str, str]:
    """Write <stem>.pgm and <stem>.json under directory; returns the names."""
    import os
    os.makedirs(directory, exist_ok=True)
    pgm_name = f"{stem}.pgm"
    json_name = f"{stem}.json"
    with open(os.path.join(directory, pgm_name), "wb") as fh:
        fh.write(photo.to_pgm())
    with open(os.path.join(directory, json_name), "w", encoding="utf-8") as fh:
        fh.write(photo.sidecar())
    return pgm_name, json_name
