import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from SkillComposer import Logger
from SkillComposer.Exceptions.Exceptions import LayoutInfeasibleError
from SkillComposer.Goals.GoalObjects import SymbolicState, Universe
from .KitchenObjects import (CLEANING_KITCHEN, LAYOUTS, TRAIN_LAYOUTS, ActivityDescriptor, DimensionSpec,
                             DynamicsConstants, EnvConfig, ItemState,
                             Observation, OracleThresholds, Scene, SimState, StepEvents, clip_action)
from .Oracle import oracle_symbolic_state
from .Randomization import sample_randomization
from .Renderer import render, target_pixel_counts

logger = Logger.get_logger(__name__)

Box = Tuple[float, float, float, float]  # x0, y0, x1, y1

VIEWPOINT_RETRIES = 10


# geometry

def container_front(state: SimState, name: str, dyn: DynamicsConstants, open_: Optional[Dict[str, float]] = None) -> float:
    fraction = (open_ if open_ is not None else state.open)[name]
    return dyn.face_y - fraction * dyn.pull


def container_box(state: SimState, name: str, dyn: DynamicsConstants,
                  open_: Optional[Dict[str, float]] = None) -> Box:
    cx = state.scene.container_x[name]
    half = 0.5 * dyn.container_width
    return cx - half, container_front(state, name, dyn, open_), cx + half, dyn.room_depth


def handle_point(state: SimState, name: str, dyn: DynamicsConstants) -> Tuple[float, float]:
    return state.scene.container_x[name], container_front(state, name, dyn)


def _in_box(x: float, y: float, box: Box) -> bool:
    return box[0] <= x <= box[2] and box[1] <= y <= box[3]


def _disc_hits_box(x: float, y: float, radius: float, box: Box) -> bool:
    nx = min(max(x, box[0]), box[2])
    ny = min(max(y, box[1]), box[3])
    return (x - nx) ** 2 + (y - ny) ** 2 < radius ** 2


def _tip_world(base: Tuple[float, float, float], tip: Tuple[float, float]) -> Tuple[float, float]:
    x, y, theta = base
    c, s = math.cos(theta), math.sin(theta)
    return x + c * tip[0] - s * tip[1], y + s * tip[0] + c * tip[1]


def _clip_reach(u: float, v: float, dyn: DynamicsConstants) -> Tuple[float, float]:
    reach = math.hypot(u, v)
    if reach == 0.0:
        return dyn.tip_min_reach, 0.0
    if reach > dyn.tip_max_reach:
        k = dyn.tip_max_reach / reach
        return u * k, v * k
    if reach < dyn.tip_min_reach:
        k = dyn.tip_min_reach / reach
        return u * k, v * k
    return u, v


# reset

def _item_radius(config: EnvConfig, index: int) -> float:
    instance = config.object_instance[index]
    factor = 0.85 + 0.3 * ((instance % 6) / 5)
    return config.dynamics.object_radius * config.object_scale[index] * factor


def _placements(config: EnvConfig, attempt: int, count: int):
    """Placement (u, v) pairs and robot placement for one rejection-sampling attempt."""
    if attempt == 0:
        return list(config.object_placement[:count]), config.object_placement[-1], config.robot_placement
    rng = np.random.default_rng([config.seed, attempt])
    spread = config.rand_scale
    placements = [tuple(rng.uniform(-spread, spread, 2)) for _ in range(count)]
    bucket = tuple(rng.uniform(-spread, spread, 2))
    x_frac = float(rng.uniform(-spread, spread))
    return placements, bucket, (x_frac, config.robot_placement[1], config.robot_placement[2])


def _layout_attempt(config: EnvConfig, activity: ActivityDescriptor, container_x: Dict[str, float],
                    item_names: List[str], radii: Dict[str, float], containment: Dict[str, str], width: float,
                    attempt: int):
    dyn = config.dynamics
    placements, bucket_uv, robot = _placements(config, attempt, len(item_names))
    half = 0.5 * dyn.container_width
    interior_mid = dyn.face_y + 0.5 * (dyn.room_depth - dyn.face_y)

    positions: Dict[str, Tuple[float, float]] = {}
    for name, (u, v) in zip(item_names, placements):
        r = radii[name]
        container = containment.get(name)
        if container is not None:
            margin = r + 0.01
            x = container_x[container] + u * (half - margin)
            y = interior_mid + v * (0.5 * (dyn.room_depth - dyn.face_y) - margin)
        else:
            x = 0.5 * width + u * (0.5 * width - 0.3)
            y = 1.2 + 0.8 * v
        positions[name] = (x, y)

    for i, a in enumerate(item_names):
        for b in item_names[i + 1:]:
            if containment.get(a) != containment.get(b):
                continue
            (ax, ay), (bx, by) = positions[a], positions[b]
            if math.hypot(ax - bx, ay - by) < radii[a] + radii[b] + 0.005:
                return None

    bucket_pos = (0.5 * width + bucket_uv[0] * (0.5 * width - 0.3), 0.55 + 0.25 * bucket_uv[1])
    base = (0.5 * width + robot[0] * (0.5 * width - 0.4), robot[1], 0.5 * math.pi + robot[2])
    if activity.bucket and math.hypot(base[0] - bucket_pos[0], base[1] - bucket_pos[1]) < \
            dyn.base_radius + dyn.bucket_radius + 0.05:
        return None
    for name in item_names:
        if containment.get(name) is None:
            px, py = positions[name]
            if math.hypot(px - base[0], py - base[1]) < dyn.base_radius + radii[name]:
                return None
    tx, ty = _tip_world(base, (0.3, 0.0))
    if not (0.0 <= tx <= width and 0.0 <= ty <= dyn.face_y):
        return None
    return positions, bucket_pos, base


def _ensure_viewpoint(state: SimState, config: EnvConfig) -> SimState:
    """Resamples the head pose until the first container shows up in some camera."""
    if not state.scene.containers:
        return state
    first = state.scene.containers[0]
    rng = np.random.default_rng([config.seed, 991])
    pan_half = 0.4 * config.rand_scale
    candidate = state
    for _ in range(VIEWPOINT_RETRIES):
        if target_pixel_counts(candidate, config, first).max() > 0:
            return candidate
        candidate = replace(state, head_pan=float(rng.uniform(-pan_half, pan_half)),
                            torso=float(rng.uniform(0.0, 0.35)))
    logger.debug(f"No viewpoint shows {first} after {VIEWPOINT_RETRIES} retries, keeping the sampled one")
    return state


def default_target(scene: Scene) -> str:
    if scene.containers:
        return scene.containers[0]
    if scene.items:
        return scene.items[0]
    return scene.bucket or ""


def reset(config: EnvConfig, activity: ActivityDescriptor = CLEANING_KITCHEN
          ) -> Tuple[SimState, Observation, Universe, Dict[str, str]]:
    """Builds the initial state: containers closed, items inside, cupboards dusty."""
    dyn = config.dynamics
    layout = LAYOUTS.get(config.scene_layout)
    if layout is None:
        raise LayoutInfeasibleError(f"Unknown scene layout {config.scene_layout}")
    containers = activity.container_names()
    if len(containers) > len(layout.slots):
        raise LayoutInfeasibleError(f"Layout {layout.layout_id} has {len(layout.slots)} slots, "
                                    f"activity needs {len(containers)}")
    item_names = activity.object_names() + activity.cloth_names()
    if len(item_names) > dyn.max_objects:
        raise LayoutInfeasibleError(f"{len(item_names)} items exceed the limit of {dyn.max_objects}")

    container_x = {name: layout.slots[i] for i, name in enumerate(containers)}
    containment = activity.containment()
    universe = activity.universe()
    radii = {name: _item_radius(config, i) for i, name in enumerate(item_names)}

    for attempt in range(dyn.placement_attempts):
        placed = _layout_attempt(config, activity, container_x, item_names, radii, containment, layout.width,
                                 attempt)
        if placed is not None:
            break
    else:
        raise LayoutInfeasibleError(f"No feasible placement after {dyn.placement_attempts} attempts "
                                    f"(layout {layout.layout_id}, seed {config.seed})")
    positions, bucket_pos, base = placed

    entity_ids: Dict[str, int] = {}
    for name in containers + (["b1"] if activity.bucket else []) + item_names:
        entity_ids[name] = len(entity_ids) + 1
    scene = Scene(
        layout_id=layout.layout_id,
        width=layout.width,
        container_x=container_x,
        cupboards=tuple(activity.cupboard_names()),
        drawers=tuple(activity.drawer_names()),
        bucket="b1" if activity.bucket else None,
        bucket_pos=bucket_pos,
        item_radius=radii,
        item_kind={name: ("cloths" if name.startswith("cl") else "objects") for name in item_names},
        item_instance={name: config.object_instance[i] for i, name in enumerate(item_names)},
        item_texture={name: config.object_texture[i] for i, name in enumerate(item_names)},
        entity_ids=entity_ids,
    )
    state = SimState(
        scene=scene,
        base=base,
        tip=(0.3, 0.0),
        aperture=1.0,
        held=None,
        open={name: 0.0 for name in containers},
        items={name: ItemState(*positions[name], containment.get(name)) for name in item_names},
        dust={name: 1.0 for name in activity.cupboard_names()},
        head_pan=config.camera_viewpoint[0],
        torso=config.camera_viewpoint[1],
    )
    state = _ensure_viewpoint(state, config)
    observation = render(state, config, default_target(scene))
    logger.debug(f"Reset layout {layout.layout_id} seed {config.seed} after {attempt + 1} placement attempt(s)")
    return state, observation, universe, containment


# step

def _engaged_handle(state: SimState, dyn: DynamicsConstants) -> Optional[str]:
    if state.aperture >= 0.5 or state.held is not None:
        return None
    tx, ty = state.tip_world()
    best, best_distance = None, dyn.handle_radius
    for name in state.scene.containers:
        hx, hy = handle_point(state, name, dyn)
        distance = math.hypot(tx - hx, ty - hy)
        if distance <= best_distance:
            best, best_distance = name, distance
    return best


def _tip_blocked(state: SimState, open_: Dict[str, float], base, tip, current: Tuple[float, float],
                 engaged: Optional[str], config: EnvConfig) -> bool:
    dyn = config.dynamics
    x, y = _tip_world(base, tip)
    if not (0.0 <= x <= state.scene.width and 0.0 <= y <= dyn.room_depth):
        return True
    for name in state.scene.containers:
        if name == engaged or open_[name] > config.thresholds.visibility:
            continue
        box = container_box(state, name, dyn, open_)
        if _in_box(x, y, box) and not _in_box(current[0], current[1], box):
            return True
    return False


def _base_blocked(state: SimState, open_: Dict[str, float], x: float, y: float, current: Tuple[float, float],
                  dyn: DynamicsConstants) -> bool:
    r = dyn.base_radius
    if not (r <= x <= state.scene.width - r and r <= y <= dyn.room_depth - r):
        return True
    for name in state.scene.containers:
        box = container_box(state, name, dyn, open_)
        if _disc_hits_box(x, y, r, box) and not _disc_hits_box(current[0], current[1], r, box):
            return True
    return False


def _release(state: SimState, open_: Dict[str, float], x: float, y: float,
             config: EnvConfig) -> Tuple[ItemState, bool]:
    dyn = config.dynamics
    scene = state.scene
    if scene.bucket is not None and \
            math.hypot(x - scene.bucket_pos[0], y - scene.bucket_pos[1]) <= dyn.bucket_radius:
        return ItemState(x, y, scene.bucket), False
    for name in scene.containers:
        if open_[name] > config.thresholds.opened and _in_box(x, y, container_box(state, name, dyn, open_)):
            return ItemState(x, y, name), False
    half = 0.5 * dyn.container_width
    for name in scene.containers:
        front = container_front(state, name, dyn, open_)
        if abs(x - scene.container_x[name]) <= half and front - dyn.unreachable_strip <= y <= front:
            return ItemState(x, y, None, True), True
    return ItemState(x, y, None), False


def _graspable(state: SimState, open_: Dict[str, float], x: float, y: float, config: EnvConfig) -> Optional[str]:
    best, best_gap = None, math.inf
    for name, item in state.items.items():
        if item.container is None:
            if item.unreachable:
                continue
        elif item.container == state.scene.bucket or open_[item.container] <= config.thresholds.opened:
            continue
        distance = math.hypot(item.x - x, item.y - y)
        gap = distance - state.scene.item_radius[name]
        if gap <= config.thresholds.grasp_radius and gap < best_gap:
            best, best_gap = name, gap
    return best


def step(state: SimState, action, config: EnvConfig,
         target: Optional[str] = None) -> Tuple[SimState, Observation, StepEvents]:
    """Advances one control period; failures show up as events."""
    dyn = config.dynamics
    a = clip_action(action)
    gain = config.motion_gain
    open_ = dict(state.open)
    items = dict(state.items)
    dust = dict(state.dust)
    collision = dropped = triggered = False
    safety_stop = state.safety_stop

    head_pan = float(np.clip(state.head_pan + a[6], -1.0, 1.0))
    torso = float(np.clip(state.torso + a[7], 0.0, 0.35))

    engaged = _engaged_handle(state, dyn)
    tip_before = state.tip_world()
    base = state.base

    if not safety_stop:
        if a[2] != 0.0:
            turned = (base[0], base[1], base[2] + a[2] * gain)
            if _tip_blocked(state, open_, turned, state.tip, tip_before, engaged, config):
                collision = True
            else:
                base = turned
        c, s = math.cos(base[2]), math.sin(base[2])
        world = ((c * a[0] - s * a[1]) * gain, (s * a[0] + c * a[1]) * gain)
        for axis in (0, 1):
            delta = world[axis]
            if delta == 0.0:
                continue
            moved = (base[0] + delta, base[1], base[2]) if axis == 0 else (base[0], base[1] + delta, base[2])
            current_tip = _tip_world(base, state.tip)
            if _base_blocked(state, open_, moved[0], moved[1], base[:2], dyn) or \
                    _tip_blocked(state, open_, moved, state.tip, current_tip, engaged, config):
                collision = True
                if abs(delta) > dyn.safety_stop_threshold:
                    safety_stop = triggered = True
            else:
                base = moved

    tip = state.tip
    if a[3] != 0.0 or a[4] != 0.0:
        candidate = _clip_reach(tip[0] + a[3] * gain, tip[1] + a[4] * gain, dyn)
        if _tip_blocked(state, open_, base, candidate, _tip_world(base, tip), engaged, config):
            collision = True
        else:
            tip = candidate
    tip_after = _tip_world(base, tip)

    if engaged is not None:
        old = open_[engaged]
        fraction = float(np.clip(old - (tip_after[1] - tip_before[1]) / dyn.pull, 0.0, 1.0))
        if abs(base[0] - state.scene.container_x[engaged]) <= 0.5 * dyn.container_width + dyn.base_radius:
            limit = (dyn.face_y - (base[1] + dyn.base_radius)) / dyn.pull
            fraction = min(fraction, max(limit, old))
        shift = (fraction - old) * dyn.pull
        if shift != 0.0:
            for name, item in items.items():
                if item.container == engaged:
                    items[name] = item._replace(y=item.y - shift)
        open_[engaged] = fraction

    aperture = float(np.clip(state.aperture + 0.5 * a[5], 0.0, 1.0))
    held = state.held
    if held is None and state.aperture >= 0.5 > aperture:
        grasped = _graspable(state, open_, tip_after[0], tip_after[1], config)
        if grasped is not None:
            held = grasped
    elif held is not None and state.aperture < 0.5 <= aperture:
        items[held], dropped = _release(state, open_, tip_after[0], tip_after[1], config)
        held = None
    elif held is not None and state.scene.item_kind[held] == "cloths":
        path = math.hypot(tip_after[0] - tip_before[0], tip_after[1] - tip_before[1])
        for name in state.scene.cupboards:
            if open_[name] > config.thresholds.opened and \
                    _in_box(tip_after[0], tip_after[1], container_box(state, name, dyn, open_)):
                dust[name] = max(0.0, dust[name] - dyn.wipe_rate * path)

    if held is not None:
        items[held] = ItemState(tip_after[0], tip_after[1], None)

    new_state = replace(state, base=base, tip=tip, aperture=aperture, held=held, open=open_, items=items, dust=dust,
                        head_pan=head_pan, torso=torso, elapsed=state.elapsed + 1, safety_stop=safety_stop)
    if triggered:
        logger.debug(f"Safety stop latched at step {new_state.elapsed}")
    observation = render(new_state, config, target if target is not None else default_target(state.scene))
    return new_state, observation, StepEvents(collision, dropped, triggered)


class KitchenEnv:
    """Mutable per-episode handle over the pure reset/step/render functions."""

    def __init__(self, config: EnvConfig, activity: ActivityDescriptor = CLEANING_KITCHEN):
        self.activity = activity
        self.reset(config)

    def reset(self, config: Optional[EnvConfig] = None) -> Observation:
        if config is not None:
            self.config = config
        self.state, self.observation, self.universe, self.containment = reset(self.config, self.activity)
        self.target = default_target(self.state.scene)
        self.events = StepEvents()
        self.collisions = 0
        self.dropped = 0
        return self.observation

    def set_target(self, target: str) -> Observation:
        self.target = target
        self.observation = render(self.state, self.config, target)
        return self.observation

    def set_state(self, state: SimState):
        self.state = state
        self.observation = render(state, self.config, self.target)

    def step(self, action) -> Tuple[Observation, StepEvents]:
        self.state, self.observation, self.events = step(self.state, action, self.config, self.target)
        self.collisions += int(self.events.collision)
        self.dropped += int(self.events.dropped_unreachable)
        return self.observation, self.events

    def render(self, target: Optional[str] = None) -> Observation:
        return render(self.state, self.config, target if target is not None else self.target)

    def symbolic_state(self, thresholds: Optional[OracleThresholds] = None) -> SymbolicState:
        return oracle_symbolic_state(self.state, self.universe, self.containment,
                                     thresholds if thresholds is not None else self.config.thresholds)


@dataclass
class SimHandle:
    """Everything needed to spin up randomized episodes of one activity."""
    ranges: Optional[Dict[str, DimensionSpec]] = None
    rand_scale: float = 1.0
    photorealism: bool = True
    resolution: int = 32
    num_cameras: int = 2
    layouts: Tuple[int, ...] = TRAIN_LAYOUTS
    activity: ActivityDescriptor = CLEANING_KITCHEN

    def config(self, seed: int, layout: Optional[int] = None) -> EnvConfig:
        if layout is None and tuple(self.layouts) != TRAIN_LAYOUTS:
            layout = self.layouts[seed % len(self.layouts)]
        return sample_randomization(self.ranges, self.rand_scale, self.photorealism, seed,
                                    resolution=self.resolution, num_cameras=self.num_cameras, layout=layout)

    def make(self, seed: int, layout: Optional[int] = None) -> KitchenEnv:
        return KitchenEnv(self.config(seed, layout), self.activity)
