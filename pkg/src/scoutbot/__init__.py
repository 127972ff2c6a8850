"""Collaborative exploration at desk scale: a text Commander drives a
simulated differential-drive rover through a dialogue pipeline spanning
two bridged message buses."""

__version__ = "0.1.0"
