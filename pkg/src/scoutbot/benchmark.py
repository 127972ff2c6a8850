"""Benchmark the compiled kernels against the pure-Python fallback.

Times a full scan-and-map cycle (ray cast plus grid trace) on a bundled
world and prints one line per available backend, checking along the way
that both produce identical ranges and grids.
"""

import math
import time

import numpy as np

from .harness.runner import resolve_world
from .simworld import OccupancyGrid, Pose, scan_angles
from .simworld.kernels import available_backends, backend_module


def run(rays: int = 720, repeat: int = 50, world_name: str = "apartment") -> int:
    world = resolve_world(world_name)
    pose = Pose(*world.start_pose())
    angles = scan_angles(pose.theta, rays, math.tau)
    max_range = 10.0

    results = {}
    outputs = {}
    for name in available_backends():
        impl = backend_module(name)
        grid = OccupancyGrid.for_world(world)
        ranges = np.empty(rays, dtype=np.float64)
        hits = np.empty(rays, dtype=np.int32)
        t0 = time.perf_counter()
        for _ in range(repeat):
            impl.cast_rays(pose.x, pose.y, angles, world.rects, world.bounds,
                           max_range, ranges, hits)
            impl.trace_rays_into_grid(grid.cells, pose.x, pose.y, angles,
                                      ranges, hits, grid.resolution,
                                      grid.origin[0], grid.origin[1])
        elapsed = time.perf_counter() - t0
        results[name] = elapsed / repeat
        outputs[name] = (ranges.copy(), grid.cells.copy())

    print(f"world {world_name!r}, {rays} rays x {repeat} repeats")
    baseline = results.get("python")
    for name, per_cycle in sorted(results.items(), key=lambda kv: kv[1]):
        speedup = f"  ({baseline / per_cycle:5.1f}x vs python)" if baseline else ""
        print(f"  {name:<8} {per_cycle * 1e3:8.3f} ms/scan{speedup}")

    if len(outputs) == 2:
        (ra, ga), (rb, gb) = outputs["python"], outputs["cython"]
        same = np.array_equal(ra, rb) and np.array_equal(ga, gb)
        print(f"  backends agree bit-for-bit: {same}")
        if not same:
            return 1
    return 0
