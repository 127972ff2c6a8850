#!/usr/bin/env python3
"""Standalone wrapper around `scoutbot benchmark`."""

import argparse
import sys

from scoutbot.benchmark import run

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rays", type=int, default=720)
    parser.add_argument("--repeat", type=int, default=50)
    parser.add_argument("--world", default="apartment")
    args = parser.parse_args()
    sys.exit(run(rays=args.rays, repeat=args.repeat, world_name=args.world))
