from typing import Sequence, Union

import numpy as np

ACTION_DIM = 8
# base dx, dy, dtheta | tip du, dv | gripper | head pan, torso
ACTION_LIMITS = np.array([0.1, 0.1, 0.2, 0.05, 0.05, 1.0, 0.1, 0.1])
ACTION_NAMES = ("base_dx", "base_dy", "base_dtheta", "tip_du", "tip_dv", "gripper", "head_pan", "torso")

Action = np.ndarray


def clip_action(action: Union[Sequence[float], np.ndarray]) -> Action:
    a = np.asarray(action, dtype=np.float64).reshape(-1)
    if a.shape[0] != ACTION_DIM:
        raise ValueError(f"Action must have {ACTION_DIM} components, got {a.shape[0]}")
    return np.clip(a, -ACTION_LIMITS, ACTION_LIMITS)


def zero_action() -> Action:
    return np.zeros(ACTION_DIM)
