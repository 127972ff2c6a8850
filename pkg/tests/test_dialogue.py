"""Dialogue manager: floors, clarification, queueing, sequences."""

import pytest

from scoutbot.dialogue import (
    COMMANDER,
    DONE_TEXT,
    RN,
    DialogueManager,
    FloorError,
    FloorMessage,
    SequenceError,
    compile_instruction,
    feedback_for,
)
from scoutbot.dialogue.frames import PartialFrame, extract_frame, fill_frame


@pytest.fixture()
def dm(full_model):
    return DialogueManager(full_model)


def kinds(messages):
    return [(m.floor, m.kind) for m in messages]


# -- feedback policy ----------------------------------------------------------

def test_feedback_families():
    assert feedback_for("Move backward 2 feet") == "Moving..."
    assert feedback_for("Turn left 180 degrees") == "Turning..."
    assert feedback_for("Take a picture") == "Taking a photo..."
    assert feedback_for("Launch the kite") == "Executing..."


# -- floor message invariants ---------------------------------------------------

def test_instruction_only_on_rn_floor():
    with pytest.raises(FloorError):
        FloorMessage(COMMANDER, "instruction", "Move forward 3 feet")


def test_clarification_only_on_commander_floor():
    with pytest.raises(FloorError):
        FloorMessage(RN, "clarification", "How far?")
    with pytest.raises(FloorError):
        FloorMessage(RN, "negative", "no")


# -- clarification subdialogue ---------------------------------------------------

def test_underspecified_move_then_distance(dm):
    first = dm.handle_commander("Move forward")
    assert kinds(first) == [(COMMANDER, "clarification")]
    assert dm.state.pending_clarification == PartialFrame("move", "forward")

    second = dm.handle_commander("3 feet")
    assert kinds(second) == [(RN, "instruction"), (COMMANDER, "feedback_start")]
    assert second[0].text == "Move forward 3 feet"
    assert second[1].text == "Moving..."
    assert dm.state.pending_clarification is None

    done = dm.handle_rn_status({"event": "done"})
    assert kinds(done) == [(COMMANDER, "feedback_done")]
    assert done[0].text == DONE_TEXT


def test_clarification_turn_emits_no_rn_message(dm):
    messages = dm.handle_commander("Move forward")
    assert all(m.floor == COMMANDER for m in messages)


def test_invalid_magnitude_asks_again(dm):
    dm.handle_commander("Move forward")
    reply = dm.handle_commander("12 feet")
    assert kinds(reply) == [(COMMANDER, "clarification")]
    assert "1 and 10" in reply[0].text
    # the frame survives for another go
    final = dm.handle_commander("10 feet")
    assert final[0].text == "Move forward 10 feet"


def test_unfillable_reply_reclassified_from_scratch(dm):
    dm.handle_commander("Move forward")
    messages = dm.handle_commander("take a picture")
    assert kinds(messages) == [(RN, "instruction"), (COMMANDER, "feedback_start")]
    assert messages[0].text == "Take a picture"
    assert dm.state.pending_clarification is None


def test_direct_actionable_same_turn_pairing(dm):
    messages = dm.handle_commander("turn right 45 degrees")
    assert kinds(messages) == [(RN, "instruction"), (COMMANDER, "feedback_start")]
    assert messages[0].text == "Turn right 45 degrees"
    assert messages[1].text == "Turning..."


def test_reject_gets_negative_and_no_instruction(dm):
    messages = dm.handle_commander("zzz qqq")
    assert kinds(messages) == [(COMMANDER, "negative")]


def test_info_reply(dm):
    messages = dm.handle_commander("what can you do")
    assert kinds(messages) == [(COMMANDER, "info")]


# -- robot status handling ------------------------------------------------------

def test_status_without_inflight_is_ignored(dm):
    assert dm.handle_rn_status({"event": "done"}) == []


def test_failed_yields_inability_feedback(dm):
    dm.handle_commander("move forward 3 feet")
    messages = dm.handle_rn_status(
        {"event": "failed", "reason": "unsupported instruction: Go to the orange cone"})
    assert kinds(messages) == [(COMMANDER, "negative")]
    assert "Go to the orange cone" in messages[0].text
    assert not dm.state.in_flight


def test_image_status_becomes_image_notice(dm):
    dm.handle_commander("take a picture")
    messages = dm.handle_rn_status({"event": "image", "ref": "photo_0001.pgm"})
    assert kinds(messages) == [(COMMANDER, "image_notice")]
    assert messages[0].ref == "photo_0001.pgm"


def test_started_produces_no_commander_output(dm):
    dm.handle_commander("move forward 3 feet")
    assert dm.handle_rn_status({"event": "started"}) == []


# -- queueing and one-in-flight ---------------------------------------------------

def test_utterance_during_motion_queued_until_done(dm):
    dm.handle_commander("move forward 3 feet")
    assert dm.handle_commander("turn left 90 degrees") == []
    assert dm.state.utterance_queue == ["turn left 90 degrees"]
    messages = dm.handle_rn_status({"event": "done"})
    assert kinds(messages) == [(COMMANDER, "feedback_done"),
                               (RN, "instruction"), (COMMANDER, "feedback_start")]
    assert messages[1].text == "Turn left 90 degrees"


def test_one_in_flight_throughout_session(dm):
    script = ["move forward 2 feet", "turn left 45 degrees", "take a picture"]
    in_flight_count = 0
    for utterance in script:
        for msg in dm.handle_commander(utterance):
            if msg.floor == RN:
                in_flight_count += 1
                assert in_flight_count == 1
        for msg in dm.handle_rn_status({"event": "done"}):
            if msg.kind == "feedback_done":
                in_flight_count -= 1
            if msg.floor == RN:
                in_flight_count += 1
        assert in_flight_count in (0, 1)


# -- action sequences -------------------------------------------------------------

def test_compile_expands_turn_and_shoot():
    primitives = compile_instruction(
        "Turn right 180 degrees and take a picture every 45 degrees")
    assert primitives == ["Turn right 45 degrees", "Take a picture"] * 4


def test_compile_passthrough_for_primitives():
    assert compile_instruction("Move forward 3 feet") == ["Move forward 3 feet"]


def test_compile_rejects_bad_step():
    with pytest.raises(SequenceError):
        compile_instruction("Turn right 100 degrees and take a picture every 30 degrees")


def test_sequence_dispatches_one_by_one(dm):
    first = dm.handle_commander("turn right 180 degrees and take a picture every 90")
    assert kinds(first) == [(RN, "instruction"), (COMMANDER, "feedback_start")]
    assert first[0].text == "Turn right 90 degrees"
    dispatched = [first[0].text]
    dones = 0
    while dm.state.in_flight:
        messages = dm.handle_rn_status({"event": "done"})
        for m in messages:
            if m.floor == RN:
                dispatched.append(m.text)
            if m.kind == "feedback_done":
                dones += 1
    assert dispatched == ["Turn right 90 degrees", "Take a picture"] * 2
    assert dones == 1  # a single Done. for the whole sequence


def test_sequence_failure_clears_remaining_steps(dm):
    dm.handle_commander("turn right 180 degrees and take a picture every 90")
    messages = dm.handle_rn_status({"event": "failed", "reason": "blocked"})
    assert kinds(messages) == [(COMMANDER, "negative")]
    assert dm.state.sequence_queue == []
    assert not dm.state.in_flight


# -- determinism --------------------------------------------------------------------

def test_replay_determinism(full_model):
    script = [
        ("c", "Move forward"), ("c", "3 feet"), ("s", {"event": "started"}),
        ("s", {"event": "done"}), ("c", "what do you see"),
        ("s", {"event": "image", "ref": "p.pgm"}), ("s", {"event": "done"}),
        ("c", "zzz"),
    ]

    def run():
        dm = DialogueManager(full_model)
        for kind, item in script:
            if kind == "c":
                dm.handle_commander(item)
            else:
                dm.handle_rn_status(item)
        return dm.state.turn_log

    assert run() == run()


# -- frame extraction ----------------------------------------------------------------

def test_extract_frame_move_backward():
    assert extract_frame("back up") == PartialFrame("move", "backward")


def test_extract_frame_turn_defaults_right():
    assert extract_frame("turn") == PartialFrame("turn", "right")
    assert extract_frame("turn left") == PartialFrame("turn", "left")


def test_extract_frame_no_verb():
    assert extract_frame("what is the weather") is None


def test_fill_frame_distance_words():
    frame = PartialFrame("move", "forward")
    assert fill_frame(frame, "three feet").magnitude == 3


def test_fill_frame_angle_and_direction():
    frame = PartialFrame("turn", "right")
    filled = fill_frame(frame, "left 90 degrees")
    assert filled == PartialFrame("turn", "left", 90)


def test_fill_frame_nothing_fillable():
    assert fill_frame(PartialFrame("move", "forward"), "pizza") is None
