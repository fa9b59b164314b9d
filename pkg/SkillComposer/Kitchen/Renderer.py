import math
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np
from PIL import Image, ImageDraw

from SkillComposer.Exceptions.Exceptions import UnknownTargetError
from .KitchenObjects import PROPRIO_DIM, EnvConfig, Observation, SimState

OUTDOOR_ID = 0
WALL_ID = 250
FLOOR_ID = 251
TIP_ID = 253
ROBOT_ID = 254

NOISE_SIGMA = 0.08
WALL_THICKNESS = 0.15
TIP_RADIUS = 0.03
DUST_GRAY = np.array([0.72, 0.72, 0.72])

FLAT_COLORS: Dict[str, Tuple[float, float, float]] = {
    "outdoor": (0.55, 0.75, 0.95),
    "wall": (0.80, 0.78, 0.72),
    "floor": (0.55, 0.50, 0.45),
    "cupboards": (0.60, 0.40, 0.20),
    "drawers": (0.35, 0.50, 0.60),
    "buckets": (0.20, 0.60, 0.30),
    "objects": (0.85, 0.20, 0.20),
    "cloths": (0.95, 0.85, 0.30),
    "robot": (0.25, 0.25, 0.25),
    "tip": (0.90, 0.90, 0.90),
}

INSTANCE_COLORS = (
    (0.85, 0.20, 0.20),
    (0.20, 0.35, 0.85),
    (0.90, 0.55, 0.10),
    (0.55, 0.25, 0.70),
    (0.15, 0.70, 0.70),
    (0.80, 0.30, 0.55),
)

PASSIVE_ARM_REST = (0.2, -1.3, -0.2, 1.9, -1.5, 1.37, 0.0)


class Camera(NamedTuple):
    cx: float
    cy: float
    heading: float  # image "up" direction in the world
    half_width: float

    def to_pixels(self, points: Sequence[Tuple[float, float]], size: int) -> List[Tuple[float, float]]:
        fx, fy = math.cos(self.heading), math.sin(self.heading)
        lx, ly = -fy, fx
        k = size / (2.0 * self.half_width)
        out = []
        for x, y in points:
            dx, dy = x - self.cx, y - self.cy
            forward = dx * fx + dy * fy
            left = dx * lx + dy * ly
            out.append(((self.half_width - left) * k, (self.half_width - forward) * k))
        return out

    def scale(self, size: int) -> float:
        return size / (2.0 * self.half_width)


def cameras(state: SimState, config: EnvConfig) -> List[Camera]:
    """Camera 0 looks ahead of the head; camera 1 is a world-aligned crop widened by torso height."""
    x, y, theta = state.base
    look = theta + state.head_pan
    params = config.camera_parameters
    if params and not isinstance(params[0], (tuple, list)):
        params = (params,)
    out = []
    for index in range(config.num_cameras):
        zoom, ox, oy = params[index]
        if index % 2 == 0:
            half = 0.8 / zoom
            reach = half + 0.05
            out.append(Camera(x + reach * math.cos(look) + ox, y + reach * math.sin(look) + oy, look, half))
        else:
            half = (1.0 + 0.6 * state.torso) / zoom
            out.append(Camera(x + 0.9 * math.cos(look) + ox, y + 0.9 * math.sin(look) + oy, 0.5 * math.pi, half))
    return out


def _rgb(color) -> Tuple[int, int, int]:
    return tuple(int(round(255 * min(max(c, 0.0), 1.0))) for c in color)


def _seed_color(base, seed: int, spread: float = 0.12):
    jitter = np.random.default_rng(seed).uniform(-spread, spread, 3)
    return tuple(np.clip(np.asarray(base) + jitter, 0.0, 1.0))


class _Canvas:
    def __init__(self, camera: Camera, size: int, background):
        self.camera = camera
        self.size = size
        self.rgb = Image.new("RGB", (size, size), _rgb(background))
        self.ids = Image.new("L", (size, size), OUTDOOR_ID)
        self.draw_rgb = ImageDraw.Draw(self.rgb)
        self.draw_ids = ImageDraw.Draw(self.ids)

    def polygon(self, corners, color, entity_id: int):
        pixels = self.camera.to_pixels(corners, self.size)
        self.draw_rgb.polygon(pixels, fill=_rgb(color))
        self.draw_ids.polygon(pixels, fill=entity_id)

    def disc(self, x: float, y: float, radius: float, color, entity_id: int):
        (px, py), = self.camera.to_pixels([(x, y)], self.size)
        r = max(radius * self.camera.scale(self.size), 1.0)
        bbox = [px - r, py - r, px + r, py + r]
        self.draw_rgb.ellipse(bbox, fill=_rgb(color))
        self.draw_ids.ellipse(bbox, fill=entity_id)

    def line(self, a, b, color):
        self.draw_rgb.line(self.camera.to_pixels([a, b], self.size), fill=_rgb(color), width=1)


def _box(x0, y0, x1, y1):
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


def _entity_color(state: SimState, config: EnvConfig, name: str, category: str):
    if not config.photorealism:
        return FLAT_COLORS[category]
    scene = state.scene
    if category in ("objects", "cloths"):
        base = INSTANCE_COLORS[scene.item_instance[name] % len(INSTANCE_COLORS)] if category == "objects" \
            else FLAT_COLORS["cloths"]
        return _seed_color(base, scene.item_texture[name])
    return _seed_color(FLAT_COLORS[category], config.interior_textures[0] + scene.entity_ids[name])


def _draw_scene(state: SimState, config: EnvConfig, camera: Camera) -> Tuple[np.ndarray, np.ndarray]:
    dyn = config.dynamics
    scene = state.scene
    photo = config.photorealism
    size = config.resolution

    outdoor = _seed_color(FLAT_COLORS["outdoor"], config.outdoor_texture) if photo else FLAT_COLORS["outdoor"]
    wall = _seed_color(FLAT_COLORS["wall"], config.interior_textures[0]) if photo else FLAT_COLORS["wall"]
    floor = _seed_color(FLAT_COLORS["floor"], config.interior_textures[1]) if photo else FLAT_COLORS["floor"]
    canvas = _Canvas(camera, size, outdoor)

    t = WALL_THICKNESS
    canvas.polygon(_box(-t, -t, scene.width + t, dyn.room_depth + t), wall, WALL_ID)
    canvas.polygon(_box(0.0, 0.0, scene.width, dyn.room_depth), floor, FLOOR_ID)

    half = 0.5 * dyn.container_width
    for name in scene.containers:
        category = "cupboards" if name in scene.cupboards else "drawers"
        color = np.asarray(_entity_color(state, config, name, category))
        if name in state.dust:
            color = color + 0.6 * state.dust[name] * (DUST_GRAY - color)
        cx = scene.container_x[name]
        front = dyn.face_y - state.open[name] * dyn.pull
        canvas.polygon(_box(cx - half, front, cx + half, dyn.room_depth), color, scene.entity_ids[name])
        canvas.line((cx - 0.1, front), (cx + 0.1, front), (0.1, 0.1, 0.1))
        if state.open[name] > config.thresholds.visibility:
            for item_name, item in state.items.items():
                if item.container == name:
                    canvas.disc(item.x, item.y, scene.item_radius[item_name],
                                _entity_color(state, config, item_name, scene.item_kind[item_name]),
                                scene.entity_ids[item_name])

    if scene.bucket is not None:
        canvas.disc(*scene.bucket_pos, dyn.bucket_radius, _entity_color(state, config, scene.bucket, "buckets"),
                    scene.entity_ids[scene.bucket])
    for item_name, item in state.items.items():
        if item_name == state.held:
            continue
        if item.container is None or item.container == scene.bucket:
            canvas.disc(item.x, item.y, scene.item_radius[item_name],
                        _entity_color(state, config, item_name, scene.item_kind[item_name]),
                        scene.entity_ids[item_name])

    robot = _seed_color(FLAT_COLORS["robot"], config.arm_texture, 0.1) if photo else FLAT_COLORS["robot"]
    x, y, _ = state.base
    tip = state.tip_world()
    canvas.disc(x, y, dyn.base_radius, robot, ROBOT_ID)
    canvas.line((x, y), tip, robot)
    canvas.disc(*tip, TIP_RADIUS, FLAT_COLORS["tip"], TIP_ID)
    if state.held is not None:
        canvas.disc(*tip, scene.item_radius[state.held],
                    _entity_color(state, config, state.held, scene.item_kind[state.held]),
                    scene.entity_ids[state.held])

    image = np.asarray(canvas.rgb, dtype=np.float32) / 255.0
    ids = np.asarray(canvas.ids, dtype=np.uint8)
    return image, ids


def _texture(seed: int, size: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    fr, fc = rng.uniform(0.5, 4.0, 2)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    rows, cols = np.mgrid[0:size, 0:size] / size
    return 1.0 + 0.12 * np.sin(2.0 * math.pi * (fr * rows + fc * cols) + phase)


def _shade(image: np.ndarray, ids: np.ndarray, state: SimState, config: EnvConfig) -> np.ndarray:
    """Texture modulation and lighting for the photorealistic mode."""
    size = image.shape[0]
    scene = state.scene
    gain = np.ones((size, size), dtype=np.float64)
    regions = {WALL_ID: config.interior_textures[0], FLOOR_ID: config.interior_textures[1],
               OUTDOOR_ID: config.outdoor_texture, ROBOT_ID: config.arm_texture}
    for name, entity_id in scene.entity_ids.items():
        regions[entity_id] = scene.item_texture.get(name, config.interior_textures[0] + entity_id)
    for region_id, seed in regions.items():
        mask = ids == region_id
        if mask.any():
            gain[mask] *= _texture(seed, size)[mask]

    intensity, direction = config.indoor_lighting
    yn, xn = np.mgrid[-1.0:1.0:size * 1j, -1.0:1.0:size * 1j]
    light = intensity * (1.0 + 0.25 * (math.cos(direction) * xn - math.sin(direction) * yn))
    light[ids == OUTDOOR_ID] = config.outdoor_lighting
    tint = 1.0 + 0.05 * (_texture(config.interior_textures[2], 1)[0, 0] - 1.0) / 0.12
    shaded = image * (gain * light)[..., None] * tint
    return np.clip(shaded, 0.0, 1.0).astype(np.float32)


def _noise(image: np.ndarray, state: SimState, config: EnvConfig, index: int) -> np.ndarray:
    rng = np.random.default_rng([config.seed, state.elapsed, index])
    noisy = image + rng.normal(0.0, NOISE_SIGMA, image.shape)
    return np.clip(noisy, 0.0, 1.0).astype(np.float32)


def render_cameras(state: SimState, config: EnvConfig) -> Tuple[np.ndarray, np.ndarray]:
    """All camera images (N, S, S, 3) and their entity-id buffers (N, S, S)."""
    images, id_buffers = [], []
    for index, camera in enumerate(cameras(state, config)):
        image, ids = _draw_scene(state, config, camera)
        image = _shade(image, ids, state, config) if config.photorealism else _noise(image, state, config, index)
        images.append(image)
        id_buffers.append(ids)
    return np.stack(images), np.stack(id_buffers)


def target_pixel_counts(state: SimState, config: EnvConfig, target: str) -> np.ndarray:
    entity_id = state.scene.entity_ids.get(target)
    if entity_id is None:
        raise UnknownTargetError(f"Unknown render target {target!r}")
    counts = []
    for camera in cameras(state, config):
        _, ids = _draw_scene(state, config, camera)
        counts.append(int(np.count_nonzero(ids == entity_id)))
    return np.array(counts)


def proprioception(state: SimState, config: EnvConfig) -> np.ndarray:
    """19 joint-angle analogs: torso, head pan/tilt, 7 active arm, 7 passive arm, 2 grippers."""
    dyn = config.dynamics
    u, v = state.tip
    l1, l2 = dyn.link1, dyn.link2
    reach = min(max(math.hypot(u, v), abs(l1 - l2) + 1e-6), l1 + l2 - 1e-6)
    elbow = math.acos(min(max((reach ** 2 - l1 ** 2 - l2 ** 2) / (2 * l1 * l2), -1.0), 1.0))
    shoulder = math.atan2(v, u) - math.atan2(l2 * math.sin(elbow), l1 + l2 * math.cos(elbow))
    wrist = -(shoulder + elbow)
    active = (shoulder, elbow, wrist, reach, math.cos(shoulder), math.sin(shoulder),
              1.0 if state.held is not None else 0.0)
    head_tilt = -0.5 + state.torso
    values = (state.torso, state.head_pan, head_tilt) + active + PASSIVE_ARM_REST + (state.aperture, 0.0)
    proprio = np.array(values, dtype=np.float64)
    assert proprio.shape[0] == PROPRIO_DIM
    return proprio


def render(state: SimState, config: EnvConfig, target: str) -> Observation:
    """Renders every camera plus the in-view and masked images for `target`.

    The in-view image is the camera showing the most target pixels (ties go
    to the lower index), or zeros when the target is not visible.
    """
    entity_id = state.scene.entity_ids.get(target)
    if entity_id is None:
        raise UnknownTargetError(f"Unknown render target {target!r}")
    images, ids = render_cameras(state, config)
    counts = (ids == entity_id).reshape(len(ids), -1).sum(axis=1)
    if counts.max() > 0:
        best = int(np.argmax(counts))
        in_view = images[best].copy()
        masked = np.where((ids[best] == entity_id)[..., None], images[best], 0.0).astype(np.float32)
    else:
        in_view = np.zeros_like(images[0])
        masked = np.zeros_like(images[0])
    return Observation(images, in_view, masked, proprioception(state, config), target)
