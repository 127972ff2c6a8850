from .grid import FREE, OCCUPIED, UNKNOWN, OccupancyGrid, update_map
from .kinematics import STANDOFF, Pose, arc_pose, normalize_angle, step
from .lidar import LidarScan, lidar_scan, scan_angles
from .photo import Photo, render_photo, save_photo
from .world import DEFAULT_FOOTPRINT, Obstacle, World, WorldError, load_world, parse_world

__all__ = [
    "FREE", "OCCUPIED", "UNKNOWN", "OccupancyGrid", "update_map",
    "STANDOFF", "Pose", "arc_pose", "normalize_angle", "step",
    "LidarScan", "lidar_scan", "scan_angles",
    "Photo", "render_photo", "save_photo",
    "DEFAULT_FOOTPRINT", "Obstacle", "World", "WorldError", "load_world", "parse_world",
]
