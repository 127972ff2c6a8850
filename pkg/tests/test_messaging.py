"""Broker and client contract tests."""

import time

import pytest
from hypothesis import given, strategies as st

from scoutbot.messaging import (
    Broker,
    BrokerError,
    BusClient,
    BusError,
    PublishRejected,
    start_broker,
    topic_matches,
    valid_pattern,
    valid_topic,
)


@pytest.fixture()
def broker():
    b = start_broker()
    yield b
    b.stop()


def drain(client, n, timeout=5.0):
    out = []
    deadline = time.monotonic() + timeout
    while len(out) < n and time.monotonic() < deadline:
        try:
            out.append(client.inbox.get(timeout=0.1))
        except Exception:
            pass
    return out


def test_start_on_ephemeral_port_exposes_port(broker):
    assert broker.port > 0
    assert broker.address.endswith(str(broker.port))


def test_second_bind_on_same_port_errors(broker):
    with pytest.raises(BrokerError):
        start_broker(port=broker.port)


def test_stop_then_restart_same_port():
    b = start_broker()
    port = b.port
    b.stop()
    b2 = Broker(port=port).start()
    try:
        assert b2.port == port
    finally:
        b2.stop()


def test_wildcard_subscription_delivers(broker):
    sub = BusClient(broker.address, "sub")
    pub = BusClient(broker.address, "pub")
    sub.subscribe("dm.*")
    pub.publish("dm.reply", "hello")
    msgs = drain(sub, 1)
    assert len(msgs) == 1 and msgs[0].topic == "dm.reply"
    sub.close(), pub.close()


def test_non_matching_topic_not_delivered(broker):
    sub = BusClient(broker.address, "sub")
    pub = BusClient(broker.address, "pub")
    sub.subscribe("rn.cmd")
    pub.publish("dm.reply", "hello")
    pub.publish("rn.cmd", "go")
    msgs = drain(sub, 1)
    assert [m.topic for m in msgs] == ["rn.cmd"]
    sub.close(), pub.close()


def test_fanout_exactly_once(broker):
    subs = [BusClient(broker.address, f"sub{i}") for i in range(2)]
    for s in subs:
        s.subscribe("news.today")
    pub = BusClient(broker.address, "pub")
    pub.publish("news.today", "x")
    time.sleep(0.2)
    for s in subs:
        msgs = drain(s, 1)
        assert len(msgs) == 1
        assert s.inbox.empty()
        s.close()
    pub.close()


def test_overlapping_patterns_deliver_once(broker):
    sub = BusClient(broker.address, "sub")
    sub.subscribe("a.b")
    sub.subscribe("a.*")
    pub = BusClient(broker.address, "pub")
    pub.publish("a.b", "x")
    time.sleep(0.2)
    assert len(drain(sub, 2, timeout=0.5)) == 1
    sub.close(), pub.close()


def test_seq_ordering_1000_messages(broker):
    sub = BusClient(broker.address, "sub")
    sub.subscribe("stream")
    pub = BusClient(broker.address, "pub")
    for i in range(1000):
        pub.publish("stream", str(i))
    msgs = drain(sub, 1000)
    assert [m.seq for m in msgs] == list(range(1, 1001))
    assert [m.payload for m in msgs] == [str(i) for i in range(1000)]
    sub.close(), pub.close()


def test_publish_without_subscribers_acks_and_drops(broker):
    pub = BusClient(broker.address, "pub")
    seq = pub.publish("void.topic", "gone")
    assert seq == 1
    late = BusClient(broker.address, "late")
    late.subscribe("void.topic")
    assert drain(late, 1, timeout=0.4) == []  # no retention
    pub.close(), late.close()


def test_bridge_mark_passes_through_verbatim(broker):
    sub = BusClient(broker.address, "sub")
    sub.subscribe("t.x")
    pub = BusClient(broker.address, "pub")
    pub.publish("t.x", "payload", bridge_mark="x-bridged")
    msgs = drain(sub, 1)
    assert msgs[0].bridge_mark == "x-bridged"
    sub.close(), pub.close()


def test_payload_bytes_never_mutated(broker):
    sub = BusClient(broker.address, "sub")
    sub.subscribe("raw.bytes")
    pub = BusClient(broker.address, "pub")
    tricky = 'line1\nline2\t"quoted" \\ unicode: ÿ€ 日本語'
    pub.publish("raw.bytes", tricky)
    msgs = drain(sub, 1)
    assert msgs[0].payload == tricky
    sub.close(), pub.close()


def test_oversized_payload_rejected():
    b = start_broker(payload_limit=64)
    try:
        pub = BusClient(b.address, "pub")
        with pytest.raises(PublishRejected):
            pub.publish("big.one", "x" * 65)
        # connection still usable
        assert pub.publish("big.one", "x" * 64) == 1
        pub.close()
    finally:
        b.stop()


def test_malformed_pattern_errors_but_connection_survives(broker):
    sub = BusClient(broker.address, "sub")
    with pytest.raises(BusError):
        sub.subscribe("..bad..")
    sub.subscribe("still.fine")
    pub = BusClient(broker.address, "pub")
    pub.publish("still.fine", "yes")
    assert len(drain(sub, 1)) == 1
    sub.close(), pub.close()


def test_publisher_does_not_hear_itself_unless_subscribed(broker):
    pub = BusClient(broker.address, "pub")
    pub.publish("echo.test", "1")
    assert drain(pub, 1, timeout=0.3) == []
    pub.subscribe("echo.test")
    pub.publish("echo.test", "2")
    msgs = drain(pub, 1)
    assert [m.payload for m in msgs] == ["2"]
    pub.close()


segment = st.from_regex(r"[A-Za-z0-9_]{1,8}", fullmatch=True)


@given(st.lists(segment, min_size=1, max_size=4))
def test_topic_grammar_and_self_match(segments):
    topic = ".".join(segments)
    assert valid_topic(topic)
    assert valid_pattern(topic)
    assert topic_matches(topic, topic)


@given(st.lists(segment, min_size=1, max_size=3), segment)
def test_trailing_wildcard_matches_exactly_one_segment(prefix, leaf):
    pattern = ".".join(prefix) + ".*"
    assert valid_pattern(pattern)
    assert topic_matches(pattern, ".".join(prefix + [leaf]))
    assert not topic_matches(pattern, ".".join(prefix))
    assert not topic_matches(pattern, ".".join(prefix + [leaf, leaf]))
