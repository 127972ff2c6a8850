"""Scenario runner: the whole pipeline in one process.

Starts both brokers, the bridge, the dialogue manager, and the robot
service, scripts the Commander, and captures every bus event into a
RunLog. Scripted lines are sent only after the pipeline has gone quiet,
so each utterance's cascade completes before the next begins and runs
are reproducible.
"""

import json
import logging
import os
import threading
import time
from dataclasses import dataclass, field
from importlib import resources

from ..bridge import load_rules, run_bridge
from ..dialogue.service import DialogueService
from ..messaging import BusClient, start_broker
from ..navigator.service import NavigatorService
from ..nlu import Corpus, train
from ..nlu.model import RelevanceModel
from ..simworld.world import World, load_world
from .corpus_gen import DEFAULT_SIZE, gen_corpus
from .runlog import BusEvent, RunLog
from .scenario import Scenario, check_expectations

log = logging.getLogger(__name__)

COLLECTED_TOPICS = {
    "dialogue": ("dm.commander.in", "dm.commander.out", "dm.instruction", "rn.status"),
    "robot": ("rn.instruction", "rn.status", "rn.image", "ui.map", "ui.photo"),
}


def default_seed() -> int:
    return int(os.environ.get("SCOUT_SEED", "1"))


@dataclass
class RunConfig:
    seed: int = field(default_factory=default_seed)
    corpus_size: int = DEFAULT_SIZE
    out_dir: str = "run_artifacts"
    quiet_window: float = 0.3
    step_timeout: float = 30.0
    scan_every: int = 10
    real_time_factor: float = 0.0
    model: RelevanceModel | None = None

    def snapshot(self) -> dict:
        return {"seed": self.seed, "corpus_size": self.corpus_size,
                "quiet_window": self.quiet_window,
                "scan_every": self.scan_every,
                "real_time_factor": self.real_time_factor}


@dataclass
class ScenarioResult:
    ok: bool
    failures: list[str]
    runlog: RunLog
    transcript: str


def resolve_world(name_or_path: str) -> World:
    """Bundled world name (e.g. "apartment") or a path to a world file."""
    name = str(name_or_path)
    if "/" not in name and not name.endswith(".world"):
        ref = resources.files("scoutbot.data.worlds") / f"{name}.world"
        if ref.is_file():
            from ..simworld.world import parse_world
            return parse_world(ref.read_text(encoding="utf-8"))
    return load_world(name_or_path)


def standard_bridge_config():
    text = (resources.files("scoutbot.data.bridge") / "standard.rules"
            ).read_text(encoding="utf-8")
    return load_rules(text)


def build_model(config: RunConfig) -> RelevanceModel:
    if config.model is not None:
        return config.model
    corpus = gen_corpus(config.seed, config.corpus_size)
    return train(corpus)


class _Collector:
    """One subscriber per bus; records everything with an arrival index."""

    def __init__(self):
        self.events: list[BusEvent] = []
        self._lock = threading.Lock()
        self._clients: list[BusClient] = []

    def attach(self, bus_name: str, address: str):
        client = BusClient(address, f"collector-{bus_name}")
        for topic in COLLECTED_TOPICS[bus_name]:
            client.subscribe(topic, lambda env, bus=bus_name: self._record(bus, env))
        self._clients.append(client)

    def _record(self, bus: str, env):
        with self._lock:
            self.events.append(BusEvent(
                bus=bus, topic=env.topic, origin=env.origin or "",
                seq=env.seq, payload=env.payload, arrival=len(self.events)))

    def count(self) -> int:
        with self._lock:
            return len(self.events)

    def snapshot(self) -> list[BusEvent]:
        with self._lock:
            return list(self.events)

    def close(self):
        for client in self._clients:
            client.close()


def run_scenario(scenario: Scenario, config: RunConfig,
                 record_gateway: str | None = None,
                 gateway_bind: str | None = None,
                 gateway_linger: float = 0.0) -> ScenarioResult:
    os.makedirs(config.out_dir, exist_ok=True)
    photos_dir = os.path.join(config.out_dir, "photos")
    world = resolve_world(scenario.world)
    model = build_model(config)

    dialogue_broker = start_broker()
    robot_broker = start_broker()
    bridge = dm = rn = driver = gateway = recorder = None
    http_server = http_thread = None
    collector = _Collector()
    try:
        collector.attach("dialogue", dialogue_broker.address)
        collector.attach("robot", robot_broker.address)
        bridge = run_bridge(standard_bridge_config(),
                            dialogue_broker.address, robot_broker.address)
        if record_gateway or gateway_bind:
            from .gateway import GatewayCore, StreamRecorder
            gateway = GatewayCore(dialogue_broker.address, robot_broker.address)
            if record_gateway:
                recorder = StreamRecorder(record_gateway)
                gateway.add_sink(recorder)
            if gateway_bind:
                http_server, http_thread = _serve_gateway_async(
                    gateway, gateway_bind, photos_dir)
        rn = NavigatorService(robot_broker.address, world, photos_dir,
                              real_time_factor=config.real_time_factor,
                              scan_every=config.scan_every)
        dm = DialogueService(dialogue_broker.address, model)
        driver = BusClient(dialogue_broker.address, "commander")

        _wait_quiet(collector, dm, config)
        for delay, utterance in scenario.script:
            time.sleep(delay)
            driver.publish("dm.commander.in", utterance)
            _wait_quiet(collector, dm, config)

        events = collector.snapshot()
        failures = check_expectations(scenario.expectations,
                                      sorted(events, key=lambda e: e.arrival))
        runlog = RunLog(seed=config.seed, config=config.snapshot(), events=events)
        runlog.write(os.path.join(config.out_dir, "runlog.json"))
        transcript = dm.manager.export_transcript()
        with open(os.path.join(config.out_dir, "transcript.txt"), "w",
                  encoding="utf-8") as fh:
            fh.write(transcript + "\n")
        if gateway_linger > 0:
            time.sleep(gateway_linger)  # let attached display clients finish
        return ScenarioResult(ok=not failures, failures=failures,
                              runlog=runlog, transcript=transcript)
    finally:
        if http_server is not None:
            http_server.should_exit = True
            http_thread.join(timeout=5.0)
        for closable in (driver, dm, rn, bridge, gateway, recorder, collector):
            if closable is not None:
                try:
                    closable.close()
                except Exception:
                    log.exception("teardown failure")
        dialogue_broker.stop()
        robot_broker.stop()


def _serve_gateway_async(core, bind: str, photos_dir: str):
    """Run the gateway HTTP app on a background thread for the run's duration."""
    import uvicorn

    from ..messaging import parse_address
    from .gateway import build_app

    host, port = parse_address(bind)
    app = build_app(core, photos_dir)
    server = uvicorn.Server(uvicorn.Config(app, host=host, port=port,
                                           log_level="warning"))
    thread = threading.Thread(target=server.run, name="gateway-http", daemon=True)
    thread.start()
    deadline = time.monotonic() + 10
    while not server.started and time.monotonic() < deadline:
        time.sleep(0.05)
    return server, thread


def _wait_quiet(collector: _Collector, dm: DialogueService, config: RunConfig):
    """Block until no event has arrived for quiet_window and the DM is idle."""
    deadline = time.monotonic() + config.step_timeout
    last_count = collector.count()
    last_change = time.monotonic()
    while time.monotonic() < deadline:
        time.sleep(0.02)
        count = collector.count()
        now = time.monotonic()
        if count != last_count:
            last_count = count
            last_change = now
            continue
        if dm.idle() and (now - last_change) >= config.quiet_window:
            return
    raise TimeoutError("pipeline did not quiesce within the step timeout")
