"""Command-line entry point: one binary, one subcommand per component.

SCOUT_SEED overrides the default seed everywhere a seed applies.
"""

import argparse
import json
import logging
import os
import sys
import threading


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="scoutbot",
        description="Collaborative exploration: dialogue-driven simulated rover.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("broker", help="run one message bus broker")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=0)

    p = sub.add_parser("bridge", help="bridge the dialogue and robot buses")
    p.add_argument("--config", required=True)
    p.add_argument("--dialogue", required=True, metavar="ADDR")
    p.add_argument("--robot", required=True, metavar="ADDR")
    p.add_argument("--mark", default=None, help="override the loop-guard symbol")

    p = sub.add_parser("dm", help="run the dialogue manager")
    p.add_argument("--dialogue", required=True, metavar="ADDR")
    p.add_argument("--model", required=True, help="trained model file")

    p = sub.add_parser("rn", help="run the robot: navigator plus simulated world")
    p.add_argument("--robot", required=True, metavar="ADDR")
    p.add_argument("--world", default="apartment")
    p.add_argument("--photos", default="run_artifacts/photos")
    p.add_argument("--linear-speed", type=float, default=0.5)
    p.add_argument("--angular-speed", type=float, default=0.5)
    p.add_argument("--rtf", type=float, default=0.0,
                   help="real-time factor; 0 runs as fast as possible")

    p = sub.add_parser("sim", help="offline world tools: scan, map, photo")
    p.add_argument("--world", default="apartment")
    p.add_argument("--pose", default=None, metavar="X,Y,THETA")
    p.add_argument("--scan", action="store_true", help="print a lidar summary")
    p.add_argument("--map", default=None, metavar="OUT.json",
                   help="full-scan occupancy grid, written as JSON")
    p.add_argument("--photo", default=None, metavar="OUT_STEM",
                   help="render a frontal photo to OUT_STEM.pgm/.json")
    p.add_argument("--width", type=int, default=160)

    p = sub.add_parser("gateway", help="serve the Commander display gateway")
    p.add_argument("--bind", default="127.0.0.1:8000")
    p.add_argument("--dialogue", required=True, metavar="ADDR")
    p.add_argument("--robot", required=True, metavar="ADDR")
    p.add_argument("--photos", default="run_artifacts/photos")
    p.add_argument("--static", default=None, help="directory with the browser UI")

    p = sub.add_parser("gen-corpus", help="write a synthetic training corpus")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--size", type=int, default=1500)
    p.add_argument("--out", required=True)

    p = sub.add_parser("train", help="train the classifier from a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lam", type=float, default=0.5)
    p.add_argument("--split-seed", type=int, default=None)
    p.add_argument("--holdout", action="store_true",
                   help="train on the 80%% split only, so `eval` on the same "
                        "corpus and split-seed is leakage-free")

    p = sub.add_parser("eval", help="held-out accuracy of a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--split-seed", type=int, default=None)
    p.add_argument("--test-fraction", type=float, default=0.2)

    p = sub.add_parser("run-scenario", help="run the whole pipeline on a script")
    p.add_argument("scenario", help="bundled name (figure2, blocked, ...) or path")
    p.add_argument("--out", default="run_artifacts")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--corpus-size", type=int, default=1500)
    p.add_argument("--rtf", type=float, default=0.0)
    p.add_argument("--record-gateway", default=None, metavar="OUT.jsonl",
                   help="also run a gateway core and record its stream")
    p.add_argument("--gateway-bind", default=None, metavar="ADDR",
                   help="serve the gateway over HTTP/WebSocket during the run")
    p.add_argument("--gateway-linger", type=float, default=0.0,
                   help="keep the gateway up this many seconds after the run")

    p = sub.add_parser("benchmark", help="compare kernel backends")
    p.add_argument("--rays", type=int, default=720)
    p.add_argument("--repeat", type=int, default=50)

    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    return _dispatch(args)


def _seed(value):
    if value is not None:
        return value
    return int(os.environ.get("SCOUT_SEED", "1"))


def _dispatch(args) -> int:
    if args.command == "broker":
        return _cmd_broker(args)
    if args.command == "bridge":
        return _cmd_bridge(args)
    if args.command == "dm":
        return _cmd_dm(args)
    if args.command == "rn":
        return _cmd_rn(args)
    if args.command == "sim":
        return _cmd_sim(args)
    if args.command == "gateway":
        return _cmd_gateway(args)
    if args.command == "gen-corpus":
        return _cmd_gen_corpus(args)
    if args.command == "train":
        return _cmd_train(args)
    if args.command == "eval":
        return _cmd_eval(args)
    if args.command == "run-scenario":
        return _cmd_run_scenario(args)
    if args.command == "benchmark":
        return _cmd_benchmark(args)
    raise AssertionError(args.command)


def _wait_forever():
    try:
        threading.Event().wait()
    except KeyboardInterrupt:
        pass


def _cmd_broker(args) -> int:
    from .messaging import start_broker
    broker = start_broker(args.host, args.port)
    print(f"broker listening on {broker.address}", flush=True)
    _wait_forever()
    broker.stop()
    return 0


def _cmd_bridge(args) -> int:
    from .bridge import load_rules_file, run_bridge
    config = load_rules_file(args.config)
    if args.mark:
        config.mark_symbol = args.mark
    bridge = run_bridge(config, args.dialogue, args.robot)
    print(f"bridge up: {len(config.rules)} rules, mark {config.mark_symbol!r}",
          flush=True)
    _wait_forever()
    print(json.dumps(bridge.counters()))
    bridge.close()
    return 0


def _cmd_dm(args) -> int:
    from .dialogue.service import DialogueService
    from .nlu import load_model
    service = DialogueService(args.dialogue, load_model(args.model))
    print("dialogue manager up", flush=True)
    _wait_forever()
    service.close()
    return 0


def _cmd_rn(args) -> int:
    from .harness.runner import resolve_world
    from .navigator import MotionProfile
    from .navigator.service import NavigatorService
    world = resolve_world(args.world)
    service = NavigatorService(
        args.robot, world, args.photos,
        profile=MotionProfile(args.linear_speed, args.angular_speed),
        real_time_factor=args.rtf)
    print("robot up", flush=True)
    _wait_forever()
    service.close()
    return 0


def _cmd_sim(args) -> int:
    from .harness.runner import resolve_world
    from .simworld import OccupancyGrid, Pose, lidar_scan, render_photo, save_photo, update_map
    world = resolve_world(args.world)
    pose = Pose(*world.start_pose())
    if args.pose:
        x, y, th = (float(v) for v in args.pose.split(","))
        pose = Pose(x, y, th)
    if args.scan:
        scan = lidar_scan(world, pose)
        print(f"scan from ({pose.x:.2f}, {pose.y:.2f}, {pose.theta:.2f}): "
              f"min {scan.ranges.min():.3f} m, max {scan.ranges.max():.3f} m")
    if args.map:
        grid = OccupancyGrid.for_world(world)
        update_map(grid, lidar_scan(world, pose, n=1440))
        doc = {"resolution": grid.resolution, "origin": list(grid.origin),
               "shape": list(grid.shape), "counts": grid.counts()}
        with open(args.map, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
        print(f"wrote {args.map}: {doc['counts']}")
    if args.photo:
        import os.path
        photo = render_photo(world, pose, width=args.width)
        directory = os.path.dirname(args.photo) or "."
        stem = os.path.basename(args.photo)
        names = save_photo(photo, directory, stem)
        print(f"wrote {names[0]} and {names[1]} in {directory}")
    return 0


def _cmd_gateway(args) -> int:
    from .harness.gateway import serve_gateway
    serve_gateway(args.bind, args.dialogue, args.robot, args.photos, args.static)
    return 0


def _cmd_gen_corpus(args) -> int:
    from .harness.corpus_gen import gen_corpus
    from .nlu import save_corpus
    corpus = gen_corpus(_seed(args.seed), args.size)
    save_corpus(corpus, args.out)
    print(f"wrote {len(corpus.pairs)} pairs to {args.out}")
    return 0


def _cmd_train(args) -> int:
    from .nlu import Corpus, load_corpus, save_model, train
    corpus = load_corpus(args.corpus, split_seed=_seed(args.split_seed))
    if args.holdout:
        train_pairs, _ = corpus.split()
        corpus = Corpus(train_pairs, split_seed=corpus.split_seed)
    model = train(corpus, lam=args.lam)
    save_model(model, args.out)
    print(f"trained {len(model.classes)} classes, tau {model.tau:.4f}; "
          f"wrote {args.out}")
    return 0


def _cmd_eval(args) -> int:
    from .nlu import evaluate, load_corpus, load_model
    model = load_model(args.model)
    corpus = load_corpus(args.corpus, split_seed=_seed(args.split_seed))
    _, held = corpus.split(args.test_fraction)
    acc = evaluate(model, held)
    print(f"held-out accuracy: {acc:.4f} ({len(held)} pairs)")
    return 0


def _cmd_run_scenario(args) -> int:
    from .harness.runner import RunConfig, run_scenario
    from .harness.scenario import load_scenario
    scenario = load_scenario(args.scenario)
    config = RunConfig(seed=_seed(args.seed), corpus_size=args.corpus_size,
                       out_dir=args.out, real_time_factor=args.rtf)
    result = run_scenario(scenario, config,
                          record_gateway=args.record_gateway,
                          gateway_bind=args.gateway_bind,
                          gateway_linger=args.gateway_linger)
    for exp in scenario.expectations:
        status = "FAIL" if exp.describe() in result.failures else "ok"
        print(f"  [{status}] expect {exp.describe()}")
    if result.ok:
        print(f"scenario passed; artifacts in {args.out}")
        return 0
    print(f"scenario FAILED: {len(result.failures)} unmet expectations")
    return 1


def _cmd_benchmark(args) -> int:
    from .benchmark import run
    return run(rays=args.rays, repeat=args.repeat)


if __name__ == "__main__":
    sys.exit(main())
