import math
from typing import List

import numpy as np

from SkillComposer.Kitchen import (KitchenEnv, container_standoff, hold_item, point_standoff, set_open, set_pose)
from SkillComposer.Kitchen.KitchenObjects import SimState
from .SkillIds import Binding, check_skill


def candidate_bindings(skill: str, env: KitchenEnv) -> List[Binding]:
    """Every binding of `skill` the environment's entities allow."""
    check_skill(skill)
    scene = env.state.scene
    universe = env.universe
    if skill == "grasp":
        return [Binding("grasp", (item,)) for item in scene.items]
    if skill == "place":
        if scene.bucket is None:
            return []
        return [Binding("place", (item, scene.bucket)) for item in scene.items]
    if skill in ("open", "close"):
        return [Binding(skill, (name,)) for name in scene.containers]
    cloths = list(universe.get("cloths", ()))
    return [Binding("wipe", (cupboard, cloth), (cupboard,))
            for cupboard, cloth in zip(scene.cupboards, cloths)]


def _jittered(pose, rng: np.random.Generator, scale: float):
    x, y, theta = pose
    return (x + rng.uniform(-0.05, 0.05) * scale, y + rng.uniform(-0.05, 0.05) * scale,
            theta + rng.uniform(-0.15, 0.15) * scale)


def _random_pose(state: SimState, rng: np.random.Generator):
    width = state.scene.width
    return float(rng.uniform(0.4, width - 0.4)), float(rng.uniform(0.5, 1.9)), \
        0.5 * math.pi + float(rng.uniform(-0.8, 0.8))


def start_state(skill: str, env: KitchenEnv, rng: np.random.Generator, standoff_fraction: float = 0.7) -> Binding:
    """Puts a freshly reset env into a state meeting the skill's preconditions.

    Picks a binding, teleports the scene so the binding is executable and
    places the robot either near a standoff pose or at a random pose.
    Returns the binding; the env's render target is set to its target.
    """
    bindings = candidate_bindings(skill, env)
    if not bindings:
        raise ValueError(f"Activity {env.activity.name} offers no binding for skill {skill!r}")
    binding = bindings[int(rng.integers(len(bindings)))]
    dyn = env.config.dynamics
    state = env.state
    target = binding.target

    if skill == "close":
        state = set_open(state, target, 1.0, dyn)
    elif skill == "grasp":
        container = state.items[target].container
        if container is not None and container in state.open:
            state = set_open(state, container, 1.0, dyn)
    elif skill == "wipe":
        state = set_open(state, target, 1.0, dyn)

    if skill == "place":
        standoff = point_standoff(state.scene.bucket_pos, dyn)
    elif skill == "grasp":
        item = state.items[target]
        container = item.container
        if container is not None and container in state.open:
            standoff = container_standoff(state, container, dyn)
        else:
            standoff = point_standoff((item.x, item.y), dyn)
    else:
        standoff = container_standoff(state, target, dyn)

    if rng.random() < standoff_fraction:
        pose = _jittered(standoff, rng, env.config.rand_scale)
    else:
        pose = _random_pose(state, rng)
    state = set_pose(state, pose, (0.3, 0.0))
    if skill in ("place", "wipe"):
        state = hold_item(state, binding.args[1] if skill == "wipe" else target)

    env.set_state(state)
    env.set_target(target)
    return binding
