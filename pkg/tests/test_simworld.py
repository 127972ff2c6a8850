"""World geometry: kinematics, lidar, mapping, photos, world files."""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scoutbot.simworld import (
    FREE,
    OCCUPIED,
    UNKNOWN,
    Obstacle,
    OccupancyGrid,
    Pose,
    World,
    WorldError,
    arc_pose,
    lidar_scan,
    normalize_angle,
    parse_world,
    render_photo,
    step,
    update_map,
)
from scoutbot.simworld.kernels import available_backends, backend_module


# -- oracles -------------------------------------------------------------------

def integrate_twist(pose, v, w, dt, substeps):
    """RK4 integration at a much finer step; independent of arc_pose."""
    x, y, th = pose.x, pose.y, pose.theta
    h = dt / substeps
    for _ in range(substeps):
        k1x, k1y = v * math.cos(th), v * math.sin(th)
        k2x, k2y = v * math.cos(th + w * h / 2), v * math.sin(th + w * h / 2)
        k4x, k4y = v * math.cos(th + w * h), v * math.sin(th + w * h)
        x += h * (k1x + 4 * k2x + k4x) / 6
        y += h * (k1y + 4 * k2y + k4y) / 6
        th += w * h
    return x, y, th


def march_ray(world, x, y, angle, max_range, step_len):
    """Walk along the ray until a point falls inside geometry."""
    dx, dy = math.cos(angle), math.sin(angle)
    t = 0.0
    while t <= max_range:
        px, py = x + t * dx, y + t * dy
        if not (world.x0 <= px <= world.x1 and world.y0 <= py <= world.y1):
            return t, "bounds"
        for ob in world.obstacles:
            if ob.x0 <= px <= ob.x1 and ob.y0 <= py <= ob.y1:
                return t, "obstacle"
        t += step_len
    return max_range, "clip"


# -- kinematics ------------------------------------------------------------------

def test_straight_line_step():
    world = World(0, 0, 10, 10)
    pose, blocked = step(world, Pose(1, 1, 0.0), 0.5, 0.0, 2.0)
    assert not blocked
    assert (pose.x, pose.y, pose.theta) == pytest.approx((2.0, 1.0, 0.0))


def test_pure_rotation_keeps_position():
    world = World(0, 0, 10, 10)
    pose, blocked = step(world, Pose(5, 5, 0.0), 0.0, math.pi / 4, 2.0)
    assert not blocked
    assert (pose.x, pose.y) == pytest.approx((5.0, 5.0))
    assert pose.theta == pytest.approx(math.pi / 2)


def test_half_circle_arc():
    # v/w = 1 for a unit radius; half circle after theta advances by pi
    got = arc_pose(Pose(0, 0, 0.0), 0.5, 0.5, 2 * math.pi)
    assert (got.x, got.y) == pytest.approx((0.0, 2.0), abs=1e-9)
    assert got.theta == pytest.approx(math.pi)
    ox, oy, oth = integrate_twist(Pose(0, 0, 0.0), 0.5, 0.5, 2 * math.pi, 2_000_000)
    assert got.x == pytest.approx(ox, abs=1e-5)
    assert got.y == pytest.approx(oy, abs=1e-5)


def test_arc_agrees_with_fine_integration():
    rng = random.Random(4)
    for _ in range(10):
        pose = Pose(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3))
        v = rng.uniform(-1, 1)
        w = rng.choice([0.0, rng.uniform(-1.5, 1.5)])
        dt = rng.uniform(0.01, 0.4)
        got = arc_pose(pose, v, w, dt)
        ox, oy, oth = integrate_twist(pose, v, w, dt, 1000)
        assert got.x == pytest.approx(ox, abs=1e-6)
        assert got.y == pytest.approx(oy, abs=1e-6)
        assert normalize_angle(got.theta - normalize_angle(oth)) == pytest.approx(
            0.0, abs=1e-6)


def test_zero_twist_is_fixed_point():
    world = World(0, 0, 10, 10)
    pose = Pose(3.3, 4.4, 1.1)
    for dt in (0.001, 0.5, 100.0):
        got, blocked = step(world, pose, 0.0, 0.0, dt)
        assert got == pose and not blocked


def test_normalize_angle_range():
    for th in (-10.0, -math.pi, 0.0, math.pi, 10.0, 123.456):
        n = normalize_angle(th)
        assert -math.pi < n <= math.pi


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.floats(-0.8, 0.8), st.floats(-1.5, 1.5)),
                min_size=1, max_size=25))
def test_non_penetration_property(twists):
    world = World(0, 0, 6, 6, obstacles=[Obstacle(2.5, 2.5, 3.5, 3.5, "post")],
                  start=(1.0, 1.0, 0.3))
    pose = Pose(*world.start_pose())
    for v, w in twists:
        pose, _ = step(world, pose, v, w, 0.5)
        assert world.clearance(pose.x, pose.y) >= world.footprint - 1e-9


def test_blocked_step_flags_and_stops_short():
    world = World(0, 0, 10, 10, obstacles=[Obstacle(5, 0, 6, 10, "wall")],
                  start=(4.0, 5.0, 0.0))
    pose, blocked = step(world, Pose(4.0, 5.0, 0.0), 1.0, 0.0, 2.0)
    assert blocked
    assert pose.x == pytest.approx(5.0 - world.footprint - 0.01, abs=1e-6)


# -- lidar -------------------------------------------------------------------------

def test_empty_room_center_ranges():
    world = World(0, 0, 4, 4)
    scan = lidar_scan(world, Pose(2, 2, 0.0), n=360)
    # bearing 0 is the middle ray of the full sweep
    idx = int(np.argmin(np.abs(np.vectorize(normalize_angle)(scan.angles))))
    assert scan.ranges[idx] == pytest.approx(2.0, abs=1e-9)


def test_clip_to_max_range():
    world = World(0, 0, 100, 100)
    scan = lidar_scan(world, Pose(50, 50, 0.0), n=8, max_range=10.0)
    assert np.all(scan.ranges == 10.0)
    assert np.all(scan.hits == -2)


def test_ranges_match_ray_march_oracle():
    world = World(0, 0, 8, 6,
                  obstacles=[Obstacle(3.95, 0, 4.05, 2.4, "wall"),
                             Obstacle(6.5, 1.5, 6.8, 1.8, "cone"),
                             Obstacle(2.0, 4.5, 2.5, 5.0, "chair")])
    pose = Pose(1.5, 1.5, 0.7)
    scan = lidar_scan(world, pose, n=180, max_range=10.0)
    for k in range(180):
        marched, _ = march_ray(world, pose.x, pose.y, scan.angles[k], 10.0, 0.002)
        assert abs(scan.ranges[k] - marched) < 0.025  # resolution/2


def test_scan_determinism():
    world = World(0, 0, 8, 6, obstacles=[Obstacle(3, 2, 4, 3, "box")])
    a = lidar_scan(world, Pose(1, 1, 0.2))
    b = lidar_scan(world, Pose(1, 1, 0.2))
    assert np.array_equal(a.ranges, b.ranges)
    assert np.array_equal(a.hits, b.hits)


# -- occupancy grid -------------------------------------------------------------------

def single_ray_scan(world, pose, angle, max_range=10.0):
    scan = lidar_scan(world, pose, n=1, fov=1e-9, max_range=max_range)
    scan.angles[0] = angle
    from scoutbot.simworld.kernels import cast_rays
    cast_rays(pose.x, pose.y, scan.angles, world.rects, world.bounds,
              max_range, scan.ranges, scan.hits)
    return scan


def test_single_ray_marks_one_occupied_and_free_path():
    world = World(0, 0, 10, 4, obstacles=[Obstacle(6, 0, 7, 4, "wall")])
    grid = OccupancyGrid.for_world(world)
    scan = single_ray_scan(world, Pose(1, 2, 0.0), 0.0)
    update_map(grid, scan)
    occupied = np.argwhere(grid.cells == OCCUPIED)
    assert len(occupied) == 1
    ix, iy = occupied[0]
    assert ix == grid.cell_of(6.0 + 1e-6, 2.0)[0]
    free = np.argwhere(grid.cells == FREE)
    assert len(free) > 90  # ~5 m of 5 cm cells
    assert np.all(free[:, 1] == grid.cell_of(1, 2)[1])


def test_clipped_ray_marks_no_occupied():
    world = World(0, 0, 50, 4)
    grid = OccupancyGrid.for_world(world)
    scan = single_ray_scan(world, Pose(1, 2, 0.0), 0.0, max_range=5.0)
    update_map(grid, scan)
    assert np.count_nonzero(grid.cells == OCCUPIED) == 0
    assert np.count_nonzero(grid.cells == FREE) > 90


def test_full_scan_boundary_within_one_cell():
    world = World(0, 0, 4, 4, obstacles=[Obstacle(2.8, 2.8, 3.2, 3.2, "box")])
    grid = OccupancyGrid.for_world(world)
    scan = lidar_scan(world, Pose(2, 2, 0.0), n=1440, max_range=10.0)
    update_map(grid, scan)
    res = grid.resolution
    nx, ny = grid.shape
    true_cells = np.zeros((nx, ny), dtype=bool)
    for ix in range(nx):
        for iy in range(ny):
            x0, y0 = ix * res, iy * res
            x1, y1 = x0 + res, y0 + res
            on_bounds = ix in (0, nx - 1) or iy in (0, ny - 1)
            in_box = not (x1 < 2.8 or x0 > 3.2 or y1 < 2.8 or y0 > 3.2)
            true_cells[ix, iy] = on_bounds or in_box
    from scipy.ndimage import binary_dilation
    dilated = binary_dilation(true_cells, iterations=1)
    occupied = grid.cells == OCCUPIED
    assert np.all(dilated[occupied]), "occupied cell farther than one cell from truth"


def test_map_monotonic_non_unknown_growth():
    world = World(0, 0, 8, 6, obstacles=[Obstacle(3, 2, 4, 3, "box")])
    grid = OccupancyGrid.for_world(world)
    known_before = 0
    rng = random.Random(3)
    for _ in range(6):
        pose = Pose(rng.uniform(0.5, 2.5), rng.uniform(0.5, 1.5), rng.uniform(0, 6))
        update_map(grid, lidar_scan(world, pose, n=90))
        known = int(np.count_nonzero(grid.cells != UNKNOWN))
        assert known >= known_before
        known_before = known


def test_occupied_never_reverts():
    world = World(0, 0, 8, 6, obstacles=[Obstacle(3, 2, 4, 3, "box")])
    grid = OccupancyGrid.for_world(world)
    update_map(grid, lidar_scan(world, Pose(1, 1, 0.0), n=720))
    occupied_before = set(map(tuple, np.argwhere(grid.cells == OCCUPIED)))
    update_map(grid, lidar_scan(world, Pose(1.8, 1.2, 2.0), n=720))
    occupied_after = set(map(tuple, np.argwhere(grid.cells == OCCUPIED)))
    assert occupied_before <= occupied_after


def test_update_map_reports_deltas():
    world = World(0, 0, 4, 4)
    grid = OccupancyGrid.for_world(world)
    deltas = update_map(grid, lidar_scan(world, Pose(2, 2, 0.0), n=90))
    assert deltas
    for ix, iy, v in deltas:
        assert grid.cells[ix, iy] == v
    assert update_map(grid, lidar_scan(world, Pose(2, 2, 0.0), n=90)) == []


# -- photos ------------------------------------------------------------------------

def test_photo_facing_wall_depth_profile():
    world = World(0, 0, 10, 10)
    photo = render_photo(world, Pose(8, 5, 0.0), width=33)
    # middle column looks straight at the wall 2 m away
    assert photo.depths[16] == pytest.approx(2.0, abs=1e-9)
    for c, depth in enumerate(photo.depths):
        offset = math.pi / 4 - c * (math.pi / 2) / 32
        expected = 2.0 / math.cos(offset)
        expected = min(expected, 10.0)
        # edge columns may exit via the side walls first
        assert depth <= expected + 1e-9
    assert photo.depths[0] < 3.5


def test_photo_per_column_ray_oracle():
    world = World(0, 0, 8, 6, obstacles=[Obstacle(4, 2, 5, 4, "crate")])
    pose = Pose(2, 3, 0.3)
    photo = render_photo(world, pose, width=40)
    for c in range(40):
        angle = pose.theta + math.pi / 4 - c * (math.pi / 2) / 39
        marched, kind = march_ray(world, pose.x, pose.y, angle, 10.0, 0.002)
        assert abs(photo.depths[c] - marched) < 0.01


def test_photo_open_space_all_max_depth():
    world = World(0, 0, 100, 100)
    photo = render_photo(world, Pose(50, 50, 0.0), width=16, max_depth=5.0)
    assert all(d == 5.0 for d in photo.depths)
    assert all(lb == "" for lb in photo.labels)


def test_photo_label_propagation():
    world = World(0, 0, 10, 10, obstacles=[Obstacle(6, 4.5, 6.5, 5.5, "orange cone")])
    photo = render_photo(world, Pose(3, 5, 0.0), width=21)
    assert "orange cone" in photo.labels
    assert photo.labels[10] == "orange cone"


def test_pgm_serialization():
    world = World(0, 0, 10, 10)
    photo = render_photo(world, Pose(5, 5, 0.0), width=20)
    data = photo.to_pgm()
    assert data.startswith(b"P5\n20 10\n255\n")
    assert len(data) == len(b"P5\n20 10\n255\n") + 20 * 10


# -- world files ----------------------------------------------------------------------

def test_parse_world_roundtrip_fields():
    text = """
    # demo
    bounds 0 0 8 6
    footprint 0.3
    start 1 1 0.5
    obstacle 2 2 3 3 orange cone
    """
    world = parse_world(text)
    assert world.bounds == (0, 0, 8, 6)
    assert world.footprint == 0.3
    assert world.start == (1.0, 1.0, 0.5)
    assert world.obstacles[0].label == "orange cone"


def test_world_requires_bounds():
    with pytest.raises(WorldError):
        parse_world("obstacle 1 1 2 2 x\n")


def test_obstacle_outside_bounds_rejected():
    with pytest.raises(WorldError):
        parse_world("bounds 0 0 4 4\nobstacle 3 3 5 5 big\n")


def test_degenerate_obstacle_rejected():
    with pytest.raises(WorldError):
        parse_world("bounds 0 0 4 4\nobstacle 2 2 2 3 thin\n")


# -- kernel backends --------------------------------------------------------------------

@pytest.mark.skipif(len(available_backends()) < 2,
                    reason="compiled kernels not built")
def test_backends_bit_identical_on_random_scenes():
    rng = random.Random(11)
    py = backend_module("python")
    cy = backend_module("cython")
    for _ in range(5):
        obstacles = []
        for _ in range(rng.randint(0, 6)):
            x0 = rng.uniform(0.5, 8.0)
            y0 = rng.uniform(0.5, 8.0)
            obstacles.append(Obstacle(x0, y0, x0 + rng.uniform(0.1, 1.5),
                                      y0 + rng.uniform(0.1, 1.5), "o"))
        world = World(0, 0, 10, 10, obstacles=obstacles)
        pose = Pose(rng.uniform(0.3, 9.7), rng.uniform(0.3, 9.7), rng.uniform(0, 6))
        if not world.is_free(pose.x, pose.y, 0.05):
            continue
        from scoutbot.simworld.lidar import scan_angles
        angles = scan_angles(pose.theta, 256, math.tau)
        r1 = np.empty(256); h1 = np.empty(256, dtype=np.int32)
        r2 = np.empty(256); h2 = np.empty(256, dtype=np.int32)
        py.cast_rays(pose.x, pose.y, angles, world.rects, world.bounds, 10.0, r1, h1)
        cy.cast_rays(pose.x, pose.y, angles, world.rects, world.bounds, 10.0, r2, h2)
        assert np.array_equal(r1, r2) and np.array_equal(h1, h2)
        g1 = OccupancyGrid.for_world(world)
        g2 = OccupancyGrid.for_world(world)
        py.trace_rays_into_grid(g1.cells, pose.x, pose.y, angles, r1, h1,
                                g1.resolution, g1.origin[0], g1.origin[1])
        cy.trace_rays_into_grid(g2.cells, pose.x, pose.y, angles, r2, h2,
                                g2.resolution, g2.origin[0], g2.origin[1])
        assert np.array_equal(g1.cells, g2.cells)
