"""Instruction table, twist conversion, and execution against the sim."""

import math

import pytest

from scoutbot.navigator import (
    ANGLES_DEG,
    DISTANCES_FT,
    FEET_TO_M,
    LOOKUP_TABLE,
    Instruction,
    MotionProfile,
    TwistCommand,
    UnsupportedInstruction,
    canonical_text,
    execute,
    parse_instruction,
    to_twist,
)
from scoutbot.simworld import Obstacle, Pose, World
from scoutbot.simworld.robot import RobotSim


def open_world():
    return World(0, 0, 20, 20, start=(10.0, 10.0, 0.0))


def run_to_end(instruction, robot, **kw):
    return [e for e in execute(instruction, robot, **kw)]


# -- parsing ------------------------------------------------------------------

def test_parse_canonical_turn():
    assert parse_instruction("Turn left 90 degrees") == Instruction("turn_left", 90)


def test_parse_canonical_move():
    assert parse_instruction("Move forward 3 feet") == Instruction("move_forward", 3)


def test_parse_singular_foot():
    assert parse_instruction("Move backward 1 foot") == Instruction("move_backward", 1)


def test_landmark_instruction_unsupported():
    with pytest.raises(UnsupportedInstruction):
        parse_instruction("Go to the orange cone")


def test_unsupported_magnitude():
    with pytest.raises(UnsupportedInstruction):
        parse_instruction("Move forward 11 feet")
    with pytest.raises(UnsupportedInstruction):
        parse_instruction("Turn left 30 degrees")


def test_lookup_table_totality():
    """Every declared (verb, magnitude) parses and converts cleanly."""
    count = 0
    for verb in ("move_forward", "move_backward"):
        for n in DISTANCES_FT:
            ins = parse_instruction(canonical_text(Instruction(verb, n)))
            twist = to_twist(ins)
            assert isinstance(twist, TwistCommand)
            count += 1
    for verb in ("turn_left", "turn_right"):
        for a in ANGLES_DEG:
            ins = parse_instruction(canonical_text(Instruction(verb, a)))
            twist = to_twist(ins)
            assert isinstance(twist, TwistCommand)
            count += 1
    assert parse_instruction("Take a picture") == Instruction("take_image")
    assert count + 1 == len(LOOKUP_TABLE) == 29


def test_instruction_invariants():
    with pytest.raises(ValueError):
        Instruction("move_forward", 11)
    with pytest.raises(ValueError):
        Instruction("turn_left", 30)
    with pytest.raises(ValueError):
        Instruction("take_image", 5)


# -- twist conversion -----------------------------------------------------------

def test_move_twist_example():
    twist = to_twist(Instruction("move_forward", 3), MotionProfile(0.5, 0.5))
    assert twist.linear == 0.5 and twist.angular == 0.0
    assert twist.duration == pytest.approx(1.8288)


def test_turn_right_twist_example():
    twist = to_twist(Instruction("turn_right", 45), MotionProfile(0.5, 0.5))
    assert twist.linear == 0.0 and twist.angular == -0.5
    assert twist.duration == pytest.approx(math.pi / 4 / 0.5)
    assert twist.duration == pytest.approx(1.5708, abs=1e-4)


def test_full_turn_duration():
    twist = to_twist(Instruction("turn_left", 360), MotionProfile(0.5, 0.5))
    assert twist.duration == pytest.approx(12.5664, abs=1e-4)


def test_backward_linear_negative():
    twist = to_twist(Instruction("move_backward", 2))
    assert twist.linear < 0 and twist.duration > 0


def test_bad_profile_rejected():
    with pytest.raises(ValueError):
        MotionProfile(0.0, 0.5)


def test_twist_invariants():
    with pytest.raises(ValueError):
        TwistCommand(linear=0.5, angular=0.5, duration=1.0)
    with pytest.raises(ValueError):
        TwistCommand(linear=0.0, angular=0.0, duration=1.0)
    with pytest.raises(ValueError):
        TwistCommand(linear=0.5, angular=0.0, duration=0.0)


# -- execution ------------------------------------------------------------------

def test_open_space_move_displacement():
    robot = RobotSim(open_world())
    start = robot.pose
    events = run_to_end(parse_instruction("Move forward 3 feet"), robot)
    assert events[0] == {"event": "started"}
    assert events[-1]["event"] == "done"
    moved = math.hypot(robot.pose.x - start.x, robot.pose.y - start.y)
    assert moved == pytest.approx(3 * FEET_TO_M, abs=1e-6)


def test_blocked_move_stops_at_standoff():
    # wall face 1 m ahead of the robot center
    world = World(0, 0, 20, 20,
                  obstacles=[Obstacle(11.0, 9.0, 11.5, 11.0, "wall")],
                  start=(10.0, 10.0, 0.0))
    robot = RobotSim(world)
    events = run_to_end(parse_instruction("Move forward 10 feet"), robot)
    assert events[-1]["event"] == "failed"
    assert events[-1]["reason"] == "blocked"
    # flush with the wall: footprint plus the 1 cm standoff
    expected_stop = 11.0 - world.footprint - 0.01
    assert robot.pose.x == pytest.approx(expected_stop, abs=1e-6)
    assert events[-1]["moved_m"] == pytest.approx(expected_stop - 10.0, abs=1e-3)


def test_take_image_yields_photo_then_done():
    robot = RobotSim(open_world())
    events = run_to_end(parse_instruction("Take a picture"), robot)
    assert [e["event"] for e in events if e["event"] in ("started", "photo", "done")
            ] == ["started", "photo", "done"]
    photo_event = next(e for e in events if e["event"] == "photo")
    assert photo_event["stem"] == "photo_0001"
    assert photo_event["photo"].width > 0


def test_turn_round_trip_restores_heading():
    robot = RobotSim(open_world())
    start_theta = robot.pose.theta
    run_to_end(parse_instruction("Turn left 90 degrees"), robot)
    run_to_end(parse_instruction("Turn right 90 degrees"), robot)
    delta = abs(robot.pose.theta - start_theta)
    assert math.degrees(delta) < 0.5


def test_move_round_trip_restores_position():
    robot = RobotSim(open_world())
    start = robot.pose
    run_to_end(parse_instruction("Move forward 7 feet"), robot)
    run_to_end(parse_instruction("Move backward 7 feet"), robot)
    assert math.hypot(robot.pose.x - start.x, robot.pose.y - start.y) < 0.01


def test_four_quarter_turns_equal_full_turn():
    a = RobotSim(open_world())
    for _ in range(4):
        run_to_end(parse_instruction("Turn right 90 degrees"), a)
    b = RobotSim(open_world())
    run_to_end(parse_instruction("Turn right 360 degrees"), b)
    diff = abs(a.pose.theta - b.pose.theta)
    diff = min(diff, 2 * math.pi - diff)
    assert math.degrees(diff) < 0.5
