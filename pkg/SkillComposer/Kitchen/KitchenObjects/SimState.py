import math
from dataclasses import dataclass, field
from typing import Dict, NamedTuple, Optional, Tuple


@dataclass(frozen=True)
class Scene:
    """Static part of an episode, fixed at reset."""
    layout_id: int
    width: float
    container_x: Dict[str, float]
    cupboards: Tuple[str, ...]
    drawers: Tuple[str, ...]
    bucket: Optional[str]
    bucket_pos: Tuple[float, float]
    item_radius: Dict[str, float]
    item_kind: Dict[str, str]  # "objects" or "cloths"
    item_instance: Dict[str, int]
    item_texture: Dict[str, int]
    entity_ids: Dict[str, int] = field(default_factory=dict)

    @property
    def containers(self) -> Tuple[str, ...]:
        return self.cupboards + self.drawers

    @property
    def items(self) -> Tuple[str, ...]:
        return tuple(self.item_radius)


class ItemState(NamedTuple):
    x: float
    y: float
    container: Optional[str] = None  # container, bucket, or None for floor/gripper
    unreachable: bool = False


@dataclass(frozen=True)
class SimState:
    scene: Scene
    base: Tuple[float, float, float]  # x, y, theta
    tip: Tuple[float, float]  # arm tip offset in the base frame
    aperture: float
    held: Optional[str]
    open: Dict[str, float]
    items: Dict[str, ItemState]
    dust: Dict[str, float]
    head_pan: float = 0.0
    torso: float = 0.0
    cloth_wet: bool = False  # no water source in these kitchens; stays dry
    elapsed: int = 0
    safety_stop: bool = False

    def tip_world(self) -> Tuple[float, float]:
        x, y, theta = self.base
        u, v = self.tip
        c, s = math.cos(theta), math.sin(theta)
        return x + c * u - s * v, y + s * u + c * v
