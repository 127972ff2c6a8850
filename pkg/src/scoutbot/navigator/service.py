"""Robot-bus service: instruction lookup in, status/image/map out.

Subscribes rn.instruction (payload {"command": "<canonical text>"}),
publishes rn.status events plus rn.image / ui.photo / ui.map as the run
produces them. One instruction executes at a time; a second arriving
mid-run is rejected with a failed(busy) status.
"""

import json
import logging
import threading

from ..messaging import BusClient
from ..simworld.photo import save_photo
from ..simworld.robot import TICK_DT, RobotSim
from ..simworld.world import World
from .executor import SCAN_EVERY_TICKS, execute
from .instructions import MotionProfile, UnsupportedInstruction, parse_instruction

log = logging.getLogger(__name__)

TOPIC_INSTRUCTION = "rn.instruction"
TOPIC_STATUS = "rn.status"
TOPIC_IMAGE = "rn.image"
TOPIC_MAP = "ui.map"
TOPIC_PHOTO = "ui.photo"


class NavigatorService:
    def __init__(self, robot_bus: str, world: World, photos_dir: str,
                 profile: MotionProfile = MotionProfile(),
                 dt: float = TICK_DT, real_time_factor: float = 0.0,
                 scan_every: int = SCAN_EVERY_TICKS, client_id: str = "rn"):
        self.robot = RobotSim(world)
        self.photos_dir = photos_dir
        self.profile = profile
        self.dt = dt
        self.real_time_factor = real_time_factor
        self.scan_every = scan_every
        self._busy = threading.Lock()
        self._worker: threading.Thread | None = None
        self.bus = BusClient(robot_bus, client_id)
        self.bus.subscribe(TOPIC_INSTRUCTION, self._on_instruction)
        # seed the Commander display before any instruction arrives
        cells = self.robot.scan_and_update()
        self.bus.publish(TOPIC_MAP, json.dumps(self.robot.map_payload(cells)))

    def close(self):
        if self._worker is not None:
            self._worker.join(timeout=30.0)
        self.bus.close()

    def _publish_status(self, body: dict):
        self.bus.publish(TOPIC_STATUS, json.dumps(body))

    def _on_instruction(self, envelope):
        try:
            command = json.loads(envelope.payload)["command"]
        except (json.JSONDecodeError, TypeError, KeyError):
            log.warning("rn: undecodable instruction payload %r", envelope.payload)
            self.bus.publish_nowait(TOPIC_STATUS, json.dumps(
                {"event": "failed", "instruction": None,
                 "reason": "undecodable instruction payload"}))
            return
        if not self._busy.acquire(blocking=False):
            self.bus.publish_nowait(TOPIC_STATUS, json.dumps(
                {"event": "failed", "instruction": command,
                 "reason": "busy: an instruction is already executing"}))
            return
        # execute off the bus reader thread so status delivery is not starved
        self._worker = threading.Thread(target=self._run, args=(command,),
                                        name="rn-exec", daemon=True)
        self._worker.start()

    def _run(self, command: str):
        try:
            try:
                instruction = parse_instruction(command)
            except UnsupportedInstruction as exc:
                self._publish_status({"event": "failed", "instruction": command,
                                      "reason": str(exc)})
                return
            for event in execute(instruction, self.robot, profile=self.profile,
                                 dt=self.dt, real_time_factor=self.real_time_factor,
                                 scan_every=self.scan_every):
                self._route(command, event)
        except Exception:
            log.exception("rn: executor crashed on %r", command)
            self._publish_status({"event": "failed", "instruction": command,
                                  "reason": "internal error"})
        finally:
            self._busy.release()

    def _route(self, command: str, event: dict):
        kind = event["event"]
        if kind == "map":
            payload = json.dumps(self.robot.map_payload(event["cells"]))
            self.bus.publish(TOPIC_MAP, payload)
        elif kind == "photo":
            pgm, sidecar = save_photo(event["photo"], self.photos_dir, event["stem"])
            body = json.dumps({"ref": pgm, "sidecar": sidecar,
                               "pose": [self.robot.pose.x, self.robot.pose.y,
                                        self.robot.pose.theta]})
            self.bus.publish(TOPIC_IMAGE, body)
            self.bus.publish(TOPIC_PHOTO, body)
            self._publish_status({"event": "image", "instruction": command,
                                  "ref": pgm})
        else:
            body = {"event": kind, "instruction": command}
            body.update({k: v for k, v in event.items() if k != "event"})
            self._publish_status(body)
