from dataclasses import dataclass


@dataclass(frozen=True)
class OracleThresholds:
    opened: float = 0.7
    dusty: float = 0.25
    grasp_radius: float = 0.02
    visibility: float = 0.5  # contents of a container are drawn above this open fraction


@dataclass(frozen=True)
class DynamicsConstants:
    room_depth: float = 3.0
    face_y: float = 2.6
    container_width: float = 0.6
    pull: float = 0.3
    base_radius: float = 0.25
    bucket_radius: float = 0.15
    object_radius: float = 0.035
    handle_radius: float = 0.04
    unreachable_strip: float = 0.1
    wipe_rate: float = 3.0
    tip_min_reach: float = 0.1
    tip_max_reach: float = 0.75
    link1: float = 0.4
    link2: float = 0.35
    safety_stop_threshold: float = 0.05
    control_period: float = 1.0 / 3.0  # seconds, 3 Hz cameras
    max_objects: int = 12
    placement_attempts: int = 100
