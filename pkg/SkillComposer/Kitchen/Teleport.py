"""Direct edits of a SimState that bypass the dynamics.

Used to build skill start states and by the oracle skills; every helper
returns a new state.
"""
import math
from dataclasses import replace
from typing import Optional, Tuple

from .KitchenObjects import DynamicsConstants, ItemState, SimState

Pose = Tuple[float, float, float]


def set_open(state: SimState, container: str, fraction: float, dyn: DynamicsConstants) -> SimState:
    fraction = min(max(fraction, 0.0), 1.0)
    shift = (fraction - state.open[container]) * dyn.pull
    items = {name: (item._replace(y=item.y - shift) if item.container == container else item)
             for name, item in state.items.items()}
    open_ = dict(state.open)
    open_[container] = fraction
    return replace(state, open=open_, items=items)


def set_dust(state: SimState, cupboard: str, coverage: float) -> SimState:
    dust = dict(state.dust)
    dust[cupboard] = min(max(coverage, 0.0), dust[cupboard])
    return replace(state, dust=dust)


def hold_item(state: SimState, item: str) -> SimState:
    x, y = state.tip_world()
    items = dict(state.items)
    items[item] = ItemState(x, y, None)
    return replace(state, held=item, items=items, aperture=0.0)


def place_item(state: SimState, item: str, container: Optional[str], dyn: DynamicsConstants) -> SimState:
    """Puts `item` in the bucket, centred in a container, or on the floor under the tip."""
    scene = state.scene
    if container is not None and container == scene.bucket:
        x, y = scene.bucket_pos
    elif container is not None:
        x = scene.container_x[container]
        y = dyn.face_y - state.open[container] * dyn.pull + 0.5 * (dyn.room_depth - dyn.face_y)
    else:
        x, y = state.tip_world()
    items = dict(state.items)
    items[item] = ItemState(x, y, container)
    held = None if state.held == item else state.held
    aperture = 1.0 if state.held == item else state.aperture
    return replace(state, items=items, held=held, aperture=aperture)


def set_pose(state: SimState, base: Pose, tip: Optional[Tuple[float, float]] = None) -> SimState:
    new = replace(state, base=base, tip=tip if tip is not None else state.tip)
    if new.held is not None:
        x, y = new.tip_world()
        items = dict(new.items)
        items[new.held] = ItemState(x, y, None)
        new = replace(new, items=items)
    return new


def container_standoff(state: SimState, container: str, dyn: DynamicsConstants) -> Pose:
    """Base pose facing a container from far enough back to pull it fully open."""
    return state.scene.container_x[container], dyn.face_y - dyn.pull - 0.35, 0.5 * math.pi


def point_standoff(point: Tuple[float, float], dyn: DynamicsConstants, distance: float = 0.45) -> Pose:
    """Base pose `distance` from a floor point, approaching from whichever side has room."""
    x, y = point
    if y - distance >= dyn.base_radius + 0.05:
        return x, y - distance, 0.5 * math.pi
    return x, y + distance, -0.5 * math.pi
