"""Bridge rule configuration.

Plain-text config, one record per line (full grammar in docs/formats.md):

    mark <symbol>
    rule <source_bus> <source_topic> <target_bus> <target_topic> <transform>

Buses are named "dialogue" and "robot". Transforms:

    identity            payload passes through byte-for-byte
    rename:<a>=<b>,...  JSON object payload with fields renamed
    wrap:<field>        plain text becomes {"<field>": <text>}
    unwrap:<field>      {"<field>": <text>} becomes plain text
"""

import json
from dataclasses import dataclass, field

from ..messaging.protocol import valid_topic

BUSES = ("dialogue", "robot")
DEFAULT_MARK = "x-bridged"


class BridgeConfigError(Exception):
    pass


class TransformError(Exception):
    pass


@dataclass(frozen=True)
class BridgeRule:
    source_bus: str
    source_topic: str
    target_bus: str
    target_topic: str
    transform: str

    def __post_init__(self):
        if self.source_bus not in BUSES or self.target_bus not in BUSES:
            raise BridgeConfigError(f"unknown bus in rule {self}")
        if self.source_bus == self.target_bus:
            raise BridgeConfigError(
                f"rule for {self.source_topic!r} must cross buses")
        if not valid_topic(self.source_topic) or not valid_topic(self.target_topic):
            raise BridgeConfigError(f"invalid topic in rule {self}")
        _parse_transform(self.transform)  # validate name eagerly

    def apply(self, payload: str) -> str:
        kind, arg = _parse_transform(self.transform)
        if kind == "identity":
            return payload
        if kind == "wrap":
            return json.dumps({arg: payload}, separators=(",", ":"))
        try:
            doc = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise TransformError(f"payload is not JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise TransformError("payload is not a JSON object")
        if kind == "unwrap":
            if arg not in doc:
                raise TransformError(f"missing field {arg!r}")
            value = doc[arg]
            if not isinstance(value, str):
                raise TransformError(f"field {arg!r} is not text")
            return value
        # rename table
        out = {}
        for key, value in doc.items():
            out[arg.get(key, key)] = value
        return json.dumps(out, separators=(",", ":"))


def _parse_transform(spec: str):
    if spec == "identity":
        return "identity", None
    if spec.startswith("wrap:"):
        name = spec[len("wrap:"):]
        if not name:
            raise BridgeConfigError("wrap: needs a field name")
        return "wrap", name
    if spec.startswith("unwrap:"):
        name = spec[len("unwrap:"):]
        if not name:
            raise BridgeConfigError("unwrap: needs a field name")
        return "unwrap", name
    if spec.startswith("rename:"):
        table = {}
        for item in spec[len("rename:"):].split(","):
            old, sep, new = item.partition("=")
            if not sep or not old or not new:
                raise BridgeConfigError(f"bad rename entry {item!r}")
            table[old] = new
        if not table:
            raise BridgeConfigError("rename: needs at least one entry")
        return "rename", table
    raise BridgeConfigError(f"unknown transform {spec!r}")


@dataclass
class BridgeConfig:
    rules: list[BridgeRule]
    mark_symbol: str = DEFAULT_MARK

    def __post_init__(self):
        if not self.mark_symbol:
            raise BridgeConfigError("mark symbol must be non-empty")
        seen = set()
        for rule in self.rules:
            key = (rule.source_bus, rule.source_topic)
            if key in seen:
                raise BridgeConfigError(f"duplicate rule for {key}")
            seen.add(key)

    def rules_for(self, bus: str) -> list[BridgeRule]:
        return [r for r in self.rules if r.source_bus == bus]


def load_rules(text: str) -> BridgeConfig:
    rules: list[BridgeRule] = []
    mark = DEFAULT_MARK
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            if fields[0] == "mark":
                if len(fields) != 2:
                    raise BridgeConfigError("mark takes one symbol")
                mark = fields[1]
            elif fields[0] == "rule":
                if len(fields) != 6:
                    raise BridgeConfigError(
                        "rule takes: source_bus source_topic target_bus "
                        "target_topic transform")
                rules.append(BridgeRule(*fields[1:6]))
            else:
                raise BridgeConfigError(f"unknown record {fields[0]!r}")
        except BridgeConfigError as exc:
            raise BridgeConfigError(f"line {lineno}: {exc}") from exc
    return BridgeConfig(rules=rules, mark_symbol=mark)


def load_rules_file(path) -> BridgeConfig:
    with open(path, encoding="utf-8") as fh:
        return load_rules(fh.read())
