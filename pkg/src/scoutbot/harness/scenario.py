"""Scenario files: a world, scripted Commander lines, expected events.

Plain text, one directive per line:

    world <name-or-path>
    say <delay_seconds> <utterance>
    expect commander <kind> [substring]
    expect rn <event> [substring]
    expect photo

Expected events are checked in order (as a subsequence of the run's
arrival-ordered events) after the run quiesces.
"""

import json
from dataclasses import dataclass, field
from importlib import resources

from .runlog import BusEvent


class ScenarioError(Exception):
    pass


@dataclass(frozen=True)
class Expectation:
    scope: str                 # "commander" | "rn" | "photo"
    kind: str | None = None
    substring: str | None = None

    def matches(self, event: BusEvent) -> bool:
        if self.scope == "photo":
            return event.bus == "robot" and event.topic == "ui.photo"
        try:
            body = json.loads(event.payload)
        except json.JSONDecodeError:
            return False
        if self.scope == "commander":
            if not (event.bus == "dialogue" and event.topic == "dm.commander.out"):
                return False
            if body.get("kind") != self.kind:
                return False
            return self.substring is None or self.substring in body.get("text", "")
        if self.scope == "rn":
            if not (event.bus == "robot" and event.topic == "rn.status"):
                return False
            if body.get("event") != self.kind:
                return False
            hay = " ".join(str(body.get(k, "")) for k in ("reason", "instruction", "ref"))
            return self.substring is None or self.substring in hay
        return False

    def describe(self) -> str:
        parts = [self.scope]
        if self.kind:
            parts.append(self.kind)
        if self.substring:
            parts.append(repr(self.substring))
        return " ".join(parts)


@dataclass
class Scenario:
    world: str = "apartment"
    script: list[tuple[float, str]] = field(default_factory=list)
    expectations: list[Expectation] = field(default_factory=list)


def parse_scenario(text: str) -> Scenario:
    scenario = Scenario()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            if fields[0] == "world":
                scenario.world = fields[1]
            elif fields[0] == "say":
                delay = float(fields[1])
                utterance = line.split(None, 2)[2]
                if delay < 0:
                    raise ScenarioError("delay must be >= 0")
                scenario.script.append((delay, utterance))
            elif fields[0] == "expect":
                scenario.expectations.append(_parse_expect(fields[1:]))
            else:
                raise ScenarioError(f"unknown directive {fields[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ScenarioError(f"scenario line {lineno}: {exc}") from exc
        except ScenarioError as exc:
            raise ScenarioError(f"scenario line {lineno}: {exc}") from exc
    return scenario


def _parse_expect(fields: list[str]) -> Expectation:
    if not fields:
        raise ScenarioError("empty expect")
    scope = fields[0]
    if scope == "photo":
        return Expectation("photo")
    if scope in ("commander", "rn"):
        if len(fields) < 2:
            raise ScenarioError(f"expect {scope} needs a kind")
        substring = " ".join(fields[2:]) if len(fields) > 2 else None
        return Expectation(scope, fields[1], substring)
    raise ScenarioError(f"unknown expect scope {scope!r}")


def check_expectations(expectations: list[Expectation],
                       events: list[BusEvent]) -> list[str]:
    """Ordered subsequence match; returns unmet expectation descriptions."""
    it = iter(events)
    failures = []
    for exp in expectations:
        for event in it:
            if exp.matches(event):
                break
        else:
            failures.append(exp.describe())
            it = iter(())
    return failures


def load_scenario(name_or_path) -> Scenario:
    """Bundled scenario name (e.g. "figure2") or a path to a file."""
    text = None
    name = str(name_or_path)
    if "/" not in name and not name.endswith(".scenario"):
        ref = resources.files("scoutbot.data.scenarios") / f"{name}.scenario"
        if ref.is_file():
            text = ref.read_text(encoding="utf-8")
    if text is None:
        with open(name_or_path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_scenario(text)
