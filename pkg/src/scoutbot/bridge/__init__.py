from .rules import (
    BUSES,
    DEFAULT_MARK,
    BridgeConfig,
    BridgeConfigError,
    BridgeRule,
    TransformError,
    load_rules,
    load_rules_file,
)
from .runtime import Bridge, BridgeError, run_bridge, translate

__all__ = [
    "BUSES", "DEFAULT_MARK", "BridgeConfig", "BridgeConfigError", "BridgeRule",
    "TransformError", "load_rules", "load_rules_file",
    "Bridge", "BridgeError", "run_bridge", "translate",
]
