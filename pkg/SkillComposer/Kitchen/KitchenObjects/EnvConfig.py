from dataclasses import asdict, dataclass, field, fields
from typing import Any, Tuple

from SkillComposer.Exceptions.Exceptions import ConfigError
from .Constants import DynamicsConstants, OracleThresholds


def _tuples(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return tuple(_tuples(v) for v in value)
    return value


@dataclass(frozen=True)
class EnvConfig:
    """One sampled assignment of every randomized dimension.

    Field names match the dimension names of the range table. Repeated
    dimensions hold one entry per repeat (objects, cameras); the last
    `object_placement` entry places the bucket.
    """
    seed: int
    object_instance: Tuple[int, ...]
    object_placement: Tuple[Tuple[float, float], ...]
    object_scale: Tuple[float, ...]
    object_texture: Tuple[int, ...]
    indoor_lighting: Tuple[float, float]
    outdoor_lighting: float
    robot_placement: Tuple[float, float, float]
    camera_viewpoint: Tuple[float, float]
    camera_parameters: Tuple[Tuple[float, float, float], ...]
    outdoor_texture: int
    interior_textures: Tuple[int, int, int]
    scene_layout: int
    physics: float
    arm_texture: int
    photorealism: bool = True
    rand_scale: float = 1.0
    resolution: int = 32
    num_cameras: int = 2
    thresholds: OracleThresholds = field(default_factory=OracleThresholds)
    dynamics: DynamicsConstants = field(default_factory=DynamicsConstants)

    @property
    def motion_gain(self) -> float:
        """Displacement per commanded unit; heavier, higher-friction bodies move less."""
        return self.physics ** -0.5

    def GetValue(self) -> dict:
        data = asdict(self)
        for key, value in list(data.items()):
            if isinstance(value, tuple):
                data[key] = [list(v) if isinstance(v, tuple) else v for v in value]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'EnvConfig':
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown EnvConfig keys: {sorted(unknown)}")
        values = {key: _tuples(value) for key, value in data.items()}
        if isinstance(values.get("thresholds"), dict):
            values["thresholds"] = OracleThresholds(**values["thresholds"])
        if isinstance(values.get("dynamics"), dict):
            values["dynamics"] = DynamicsConstants(**values["dynamics"])
        return cls(**values)
