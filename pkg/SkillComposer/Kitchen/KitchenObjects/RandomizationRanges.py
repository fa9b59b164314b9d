import math
from typing import Dict, NamedTuple, Tuple

# the fourteen randomized dimensions, in sampling order
DIMENSIONS: Tuple[str, ...] = (
    "object_instance",
    "object_placement",
    "object_scale",
    "object_texture",
    "indoor_lighting",
    "outdoor_lighting",
    "robot_placement",
    "camera_viewpoint",
    "camera_parameters",
    "outdoor_texture",
    "interior_textures",
    "scene_layout",
    "physics",
    "arm_texture",
)


class ComponentRange(NamedTuple):
    name: str
    low: float
    high: float
    integer: bool = False

    @property
    def width(self) -> float:
        return self.high - self.low

    def scaled(self, scale: float) -> 'ComponentRange':
        """Shrinks the range about its midpoint."""
        mid = 0.5 * (self.low + self.high)
        half = 0.5 * self.width * scale
        if not self.integer:
            return self._replace(low=mid - half, high=mid + half)
        low, high = math.ceil(mid - half - 1e-9), math.floor(mid + half + 1e-9)
        if low > high:
            low = high = int(round(mid))
        return self._replace(low=low, high=high)

    def contains(self, value: float) -> bool:
        return self.low - 1e-12 <= value <= self.high + 1e-12


class DimensionSpec(NamedTuple):
    name: str
    components: Tuple[ComponentRange, ...]
    repeat: int = 1

    def scaled(self, scale: float) -> 'DimensionSpec':
        return self._replace(components=tuple(c.scaled(scale) for c in self.components))

    def GetValue(self) -> dict:
        return {
            "repeat": self.repeat,
            "components": {c.name: [c.low, c.high, "int" if c.integer else "float"] for c in self.components},
        }

    @classmethod
    def from_dict(cls, name: str, data: dict) -> 'DimensionSpec':
        components = tuple(ComponentRange(key, float(low), float(high), kind == "int")
                           for key, (low, high, kind) in data["components"].items())
        return cls(name, components, int(data.get("repeat", 1)))


def _float(name, low, high):
    return ComponentRange(name, low, high)


def _int(name, low, high):
    return ComponentRange(name, low, high, True)


def default_ranges(num_cameras: int = 2, max_objects: int = 12) -> Dict[str, DimensionSpec]:
    texture_seeds = 9999
    specs = (
        DimensionSpec("object_instance", (_int("instance", 0, 5),), max_objects),
        # one extra placement for the bucket
        DimensionSpec("object_placement", (_float("u", -1.0, 1.0), _float("v", -1.0, 1.0)), max_objects + 1),
        DimensionSpec("object_scale", (_float("scale", 0.8, 1.2),), max_objects),
        DimensionSpec("object_texture", (_int("seed", 0, texture_seeds),), max_objects),
        DimensionSpec("indoor_lighting", (_float("intensity", 0.6, 1.2), _float("direction", -math.pi, math.pi))),
        DimensionSpec("outdoor_lighting", (_float("intensity", 0.3, 1.5),)),
        DimensionSpec("robot_placement", (_float("x", -1.0, 1.0), _float("y", 0.6, 1.4),
                                          _float("heading", -0.5, 0.5))),
        DimensionSpec("camera_viewpoint", (_float("head_pan", -0.4, 0.4), _float("torso", 0.0, 0.35))),
        DimensionSpec("camera_parameters", (_float("zoom", 0.85, 1.15), _float("offset_x", -0.05, 0.05),
                                            _float("offset_y", -0.05, 0.05)), num_cameras),
        DimensionSpec("outdoor_texture", (_int("seed", 0, texture_seeds),)),
        DimensionSpec("interior_textures", (_int("wall", 0, texture_seeds), _int("floor", 0, texture_seeds),
                                            _int("ceiling", 0, texture_seeds))),
        DimensionSpec("scene_layout", (_int("layout", 0, 5),)),
        DimensionSpec("physics", (_float("multiplier", 0.5, 3.5),)),
        DimensionSpec("arm_texture", (_int("texture", 0, 24),)),
    )
    return {spec.name: spec for spec in specs}
