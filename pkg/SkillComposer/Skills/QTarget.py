from typing import Callable, Optional, Sequence

import numpy as np

from SkillComposer.Kitchen.KitchenObjects import ACTION_LIMITS
from .SkillModel import SkillModel

ActionSampler = Callable[[int, np.random.Generator], np.ndarray]
ScoreFn = Callable[[np.ndarray], np.ndarray]


def binarize_reward(p) -> int:
    return int(float(p) > 0.5)


def binarize_rewards(p: np.ndarray) -> np.ndarray:
    return (np.asarray(p) > 0.5).astype(np.float64)


def uniform_action_sampler(low: Optional[np.ndarray] = None, high: Optional[np.ndarray] = None) -> ActionSampler:
    low = -ACTION_LIMITS if low is None else np.asarray(low, dtype=np.float64)
    high = ACTION_LIMITS if high is None else np.asarray(high, dtype=np.float64)

    def sample(n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(low, high, size=(n, low.shape[0]))
    return sample


def cycling_action_sampler(actions: Sequence[Sequence[float]]) -> ActionSampler:
    """Deterministic sampler repeating a fixed action list; for small discrete problems."""
    table = np.atleast_2d(np.asarray(actions, dtype=np.float64))

    def sample(n: int, rng: np.random.Generator) -> np.ndarray:
        return np.resize(table, (n, table.shape[1]))
    return sample


def sampled_max(score_fn: ScoreFn, sampler: ActionSampler, num_samples: int, rng: np.random.Generator) -> float:
    if num_samples < 1:
        raise ValueError("num_samples must be at least 1")
    return float(np.max(score_fn(sampler(num_samples, rng))))


def bootstrap_gate(reward, gate: str):
    """Factor multiplying the bootstrapped term: r under "literal", 1 - r under "complement"."""
    if gate == "literal":
        return reward
    if gate == "complement":
        return 1.0 - reward
    raise ValueError(f"Unknown bootstrap gate {gate!r}")


def q_target(model: SkillModel, z_next: np.ndarray, sampler: Optional[ActionSampler] = None,
             num_samples: int = 200, rng: Optional[np.random.Generator] = None) -> float:
    """r + gamma * gate(r) * max_a Q_target(z', a) with r the binarized detector output at z'."""
    reward = binarize_reward(model.detector_prob(z_next))
    gate = bootstrap_gate(reward, model.bootstrap_gate)
    if gate == 0:
        return float(reward)
    sampler = sampler or uniform_action_sampler()
    rng = rng if rng is not None else np.random.default_rng()
    best = sampled_max(lambda actions: model.q_values(z_next, actions, target=True), sampler, num_samples, rng)
    return reward + model.gamma * gate * best


def q_targets(model: SkillModel, z_next: np.ndarray, sampler: Optional[ActionSampler] = None,
              num_samples: int = 200, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Row-wise q_target for a batch of next latents; the max is only evaluated where the gate is open."""
    if num_samples < 1:
        raise ValueError("num_samples must be at least 1")
    z_next = np.atleast_2d(z_next)
    rewards = binarize_rewards(model.detector_prob(z_next))
    gates = bootstrap_gate(rewards, model.bootstrap_gate)
    targets = rewards.copy()
    rows = np.flatnonzero(gates)
    if rows.size == 0:
        return targets
    sampler = sampler or uniform_action_sampler()
    rng = rng if rng is not None else np.random.default_rng()
    actions = sampler(num_samples * rows.size, rng).reshape(rows.size, num_samples, -1)
    latents = np.repeat(z_next[rows, None, :], num_samples, axis=1)
    flat = np.concatenate([latents, actions], axis=2).reshape(rows.size * num_samples, -1)
    best = model.q_target.forward(flat)[:, 0].reshape(rows.size, num_samples).max(axis=1)
    targets[rows] += model.gamma * gates[rows] * best
    return targets
