from .broker import Broker, BrokerError, start_broker
from .client import BusClient, BusError, PublishRejected, parse_address
from .protocol import Envelope, topic_matches, valid_pattern, valid_topic

__all__ = [
    "Broker", "BrokerError", "start_broker",
    "BusClient", "BusError", "PublishRejected", "parse_address",
    "Envelope", "topic_matches", "valid_pattern", "valid_topic",
]
