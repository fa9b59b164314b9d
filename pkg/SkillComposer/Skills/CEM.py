from typing import Callable, List, NamedTuple, Optional

import numpy as np

from SkillComposer.Kitchen.KitchenObjects import ACTION_LIMITS
from .SkillModel import SkillModel

ScoreFn = Callable[[np.ndarray], np.ndarray]


class CEMResult(NamedTuple):
    action: np.ndarray
    score: float
    elite_history: List[float]  # best elite score after each iteration


def cem_maximize(score_fn: ScoreFn, low: np.ndarray, high: np.ndarray, population: int = 64, elites: int = 6,
                 iterations: int = 3, rng: Optional[np.random.Generator] = None,
                 std_floor: float = 1e-3) -> CEMResult:
    """Cross-entropy maximization of `score_fn` over the box [low, high].

    The first population is uniform over the box, later ones come from a
    diagonal Gaussian fitted to the elites. Elites carry over between
    iterations so the best elite never gets worse.
    """
    low = np.asarray(low, dtype=np.float64)
    high = np.asarray(high, dtype=np.float64)
    if low.shape != high.shape or np.any(low > high):
        raise ValueError("CEM bounds must satisfy low <= high")
    if not 1 <= elites <= population or iterations < 1:
        raise ValueError("CEM needs 1 <= elites <= population and at least one iteration")
    rng = rng if rng is not None else np.random.default_rng()
    floor = std_floor * np.maximum(high - low, 1e-12)

    samples = rng.uniform(low, high, size=(population, low.shape[0]))
    kept = np.empty((0, low.shape[0]))
    kept_scores = np.empty(0)
    history: List[float] = []
    for i in range(iterations):
        if i:
            mean = kept.mean(axis=0)
            std = np.maximum(kept.std(axis=0), floor)
            samples = np.clip(rng.normal(mean, std, size=(population, low.shape[0])), low, high)
        scores = np.asarray(score_fn(samples), dtype=np.float64).reshape(-1)
        pool = np.vstack([kept, samples])
        pool_scores = np.concatenate([kept_scores, scores])
        # stable sort keeps earlier (older) candidates first among ties
        order = np.argsort(-pool_scores, kind="stable")[:elites]
        kept, kept_scores = pool[order], pool_scores[order]
        history.append(float(kept_scores[0]))
    return CEMResult(kept[0].copy(), float(kept_scores[0]), history)


def cem_select_action(model: SkillModel, z: np.ndarray, low: Optional[np.ndarray] = None,
                      high: Optional[np.ndarray] = None, population: int = 64, elites: int = 6,
                      iterations: int = 3, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    low = -ACTION_LIMITS if low is None else low
    high = ACTION_LIMITS if high is None else high
    return cem_maximize(lambda actions: model.q_values(z, actions), low, high, population, elites, iterations,
                        rng).action
