from .corpus_gen import DEFAULT_SIZE, MIN_SIZE, gen_corpus
from .gateway import GatewayCore, StreamRecorder, build_app, serve_gateway
from .runlog import BusEvent, RunLog
from .runner import RunConfig, ScenarioResult, resolve_world, run_scenario
from .scenario import Expectation, Scenario, ScenarioError, load_scenario, parse_scenario

__all__ = [
    "DEFAULT_SIZE", "MIN_SIZE", "gen_corpus",
    "GatewayCore", "StreamRecorder", "build_app", "serve_gateway",
    "BusEvent", "RunLog",
    "RunConfig", "ScenarioResult", "resolve_world", "run_scenario",
    "Expectation", "Scenario", "ScenarioError", "load_scenario", "parse_scenario",
]
