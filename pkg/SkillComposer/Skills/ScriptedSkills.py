"""Hand-written closed-loop controllers for the five skills.

A controller reads a SimState (the real one when privileged, a believed one
for the scripted baseline) and returns the next action.
"""
import math
from typing import Callable, Dict, Tuple

import numpy as np

from SkillComposer.Kitchen import container_standoff, point_standoff
from SkillComposer.Kitchen.KitchenObjects import ACTION_DIM, ACTION_LIMITS, EnvConfig, SimState
from .SkillIds import Binding, check_skill

Controller = Callable[[SimState, EnvConfig, Binding], np.ndarray]

POSE_TOLERANCE = 0.02
HEADING_TOLERANCE = 0.05
TIP_TOLERANCE = 0.012
HANDLE_OFFSET = 0.02  # tip stops this far in front of a handle
WIPE_SWEEP = 6


def _wrap(angle: float) -> float:
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


def _tip_offset(pose, point) -> Tuple[float, float]:
    """`point` in the base frame of `pose`."""
    x, y, theta = pose
    dx, dy = point[0] - x, point[1] - y
    c, s = math.cos(theta), math.sin(theta)
    return c * dx + s * dy, -s * dx + c * dy


class _Command:
    def __init__(self, gain: float):
        self.gain = gain
        self.action = np.zeros(ACTION_DIM)

    def base_to(self, state: SimState, goal) -> bool:
        """Drives toward `goal`, turning first; True once already there."""
        x, y, theta = state.base
        turn = _wrap(goal[2] - theta)
        dx, dy = goal[0] - x, goal[1] - y
        if abs(turn) <= HEADING_TOLERANCE and math.hypot(dx, dy) <= POSE_TOLERANCE:
            return True
        if abs(turn) > HEADING_TOLERANCE:
            self.action[2] = turn / self.gain
            return False
        c, s = math.cos(theta), math.sin(theta)
        self.action[0] = (c * dx + s * dy) / self.gain
        self.action[1] = (-s * dx + c * dy) / self.gain
        self.action[2] = turn / self.gain
        return False

    def tip_to(self, state: SimState, offset) -> bool:
        du, dv = offset[0] - state.tip[0], offset[1] - state.tip[1]
        if math.hypot(du, dv) <= TIP_TOLERANCE:
            return True
        self.action[3] = du / self.gain
        self.action[4] = dv / self.gain
        return False

    def tip_toward(self, state: SimState, pose, point) -> bool:
        """Moves the tip to where `point` sits relative to `pose` (the base pose being approached)."""
        return self.tip_to(state, _tip_offset(pose, point))

    def grip(self, closed: bool):
        self.action[5] = -1.0 if closed else 1.0

    def done(self) -> np.ndarray:
        return np.clip(self.action, -ACTION_LIMITS, ACTION_LIMITS)


def _handle_approach(state: SimState, container: str, config: EnvConfig) -> Tuple[float, float]:
    dyn = config.dynamics
    front = dyn.face_y - state.open[container] * dyn.pull
    return state.scene.container_x[container], front - HANDLE_OFFSET


def _engaged(state: SimState, container: str, config: EnvConfig) -> bool:
    dyn = config.dynamics
    hx = state.scene.container_x[container]
    hy = dyn.face_y - state.open[container] * dyn.pull
    tx, ty = state.tip_world()
    return state.aperture < 0.5 and state.held is None and math.hypot(tx - hx, ty - hy) <= dyn.handle_radius


def _move_container(state: SimState, config: EnvConfig, binding: Binding, goal_open: float) -> np.ndarray:
    container = binding.target
    dyn = config.dynamics
    cmd = _Command(config.motion_gain)
    opening = goal_open > state.open[container]
    finished = abs(state.open[container] - goal_open) <= 0.05
    if _engaged(state, container, config):
        if finished:
            cmd.grip(False)
        else:
            cmd.grip(True)
            cmd.action[3] = (-1.0 if opening else 1.0) * ACTION_LIMITS[3]
        return cmd.done()
    if state.held is not None:
        cmd.grip(False)
        return cmd.done()
    stand = container_standoff(state, container, dyn)
    approach = _handle_approach(state, container, config)
    at_pose = cmd.base_to(state, stand)
    at_handle = cmd.tip_toward(state, state.base if at_pose else stand, approach) and at_pose
    if at_handle and not finished:
        cmd.grip(True)
    elif state.aperture < 1.0:
        cmd.grip(False)
    return cmd.done()


def open_controller(state: SimState, config: EnvConfig, binding: Binding) -> np.ndarray:
    return _move_container(state, config, binding, 1.0)


def close_controller(state: SimState, config: EnvConfig, binding: Binding) -> np.ndarray:
    return _move_container(state, config, binding, 0.0)


def grasp_controller(state: SimState, config: EnvConfig, binding: Binding) -> np.ndarray:
    item_name = binding.target
    dyn = config.dynamics
    cmd = _Command(config.motion_gain)
    if state.held == item_name:
        return cmd.done()
    if state.held is not None:
        cmd.grip(False)
        return cmd.done()
    item = state.items[item_name]
    point = (item.x, item.y)
    if item.container is not None and item.container in state.open:
        stand = container_standoff(state, item.container, dyn)
        stand = (item.x, stand[1], stand[2])
    else:
        stand = point_standoff(point, dyn)
    at_pose = cmd.base_to(state, stand)
    at_item = cmd.tip_toward(state, stand if not at_pose else state.base, point)
    if at_pose and at_item:
        cmd.grip(True)
    elif state.aperture < 1.0:
        cmd.grip(False)
    return cmd.done()


def place_controller(state: SimState, config: EnvConfig, binding: Binding) -> np.ndarray:
    item_name, bucket = binding.args[0], binding.args[1]
    dyn = config.dynamics
    cmd = _Command(config.motion_gain)
    if state.held != item_name:
        return cmd.done()
    point = state.scene.bucket_pos
    stand = point_standoff(point, dyn)
    at_pose = cmd.base_to(state, stand)
    at_bucket = cmd.tip_toward(state, stand if not at_pose else state.base, point)
    if at_pose and at_bucket:
        cmd.grip(False)
    else:
        cmd.grip(True)
    return cmd.done()


def wipe_controller(state: SimState, config: EnvConfig, binding: Binding) -> np.ndarray:
    cupboard, cloth = binding.args[0], binding.args[1]
    dyn = config.dynamics
    cmd = _Command(config.motion_gain)
    cmd.grip(True)
    if state.held != cloth:
        return cmd.done()
    stand = container_standoff(state, cupboard, dyn)
    front = dyn.face_y - state.open[cupboard] * dyn.pull
    cx = state.scene.container_x[cupboard]
    side = 1.0 if (state.elapsed // WIPE_SWEEP) % 2 else -1.0
    entry = (cx, front + 0.15)
    sweep = (cx + side * 0.18, front + 0.15)
    if not cmd.base_to(state, stand):
        cmd.tip_toward(state, stand, (cx, front - 0.05))
        return cmd.done()
    tx, ty = state.tip_world()
    inside = ty > front + 0.05
    cmd.tip_toward(state, state.base, sweep if inside else entry)
    return cmd.done()


CONTROLLERS: Dict[str, Controller] = {
    "grasp": grasp_controller,
    "place": place_controller,
    "open": open_controller,
    "close": close_controller,
    "wipe": wipe_controller,
}


def scripted_action(state: SimState, config: EnvConfig, binding: Binding) -> np.ndarray:
    return CONTROLLERS[check_skill(binding.skill)](state, config, binding)
