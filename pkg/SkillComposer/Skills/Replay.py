from typing import NamedTuple, Tuple

import numpy as np


class TransitionBatch(NamedTuple):
    features: np.ndarray
    actions: np.ndarray
    next_features: np.ndarray


class ReplayBuffer:
    """Fixed-capacity ring of featurized transitions."""

    def __init__(self, capacity: int, feature_dim: int, action_dim: int):
        self.capacity = capacity
        self.features = np.zeros((capacity, feature_dim), dtype=np.float32)
        self.actions = np.zeros((capacity, action_dim), dtype=np.float32)
        self.next_features = np.zeros((capacity, feature_dim), dtype=np.float32)
        self.size = 0
        self.cursor = 0

    def add(self, features: np.ndarray, action: np.ndarray, next_features: np.ndarray):
        i = self.cursor
        self.features[i] = features
        self.actions[i] = action
        self.next_features[i] = next_features
        self.cursor = (i + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, batch_size: int, rng: np.random.Generator) -> TransitionBatch:
        if self.size == 0:
            raise ValueError("Cannot sample from an empty replay buffer")
        idx = rng.integers(0, self.size, size=min(batch_size, self.size))
        return TransitionBatch(self.features[idx].astype(np.float64), self.actions[idx].astype(np.float64),
                               self.next_features[idx].astype(np.float64))

    def __len__(self):
        return self.size


class _Ring:
    def __init__(self, capacity: int, dim: int):
        self.data = np.zeros((capacity, dim), dtype=np.float32)
        self.size = 0
        self.cursor = 0

    def add(self, row: np.ndarray):
        self.data[self.cursor] = row
        self.cursor = (self.cursor + 1) % self.data.shape[0]
        self.size = min(self.size + 1, self.data.shape[0])

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        idx = rng.integers(0, self.size, size=min(n, self.size))
        return self.data[idx].astype(np.float64)


class ExampleSets:
    """Success (D+) and non-success (D-) observations, each a bounded ring.

    Each observation lands in exactly one set according to its oracle label.
    """

    def __init__(self, capacity: int, feature_dim: int):
        half = max(1, capacity // 2)
        self.positives = _Ring(half, feature_dim)
        self.negatives = _Ring(half, feature_dim)

    def add(self, features: np.ndarray, label: bool):
        (self.positives if label else self.negatives).add(features)

    @property
    def counts(self) -> Tuple[int, int]:
        return self.positives.size, self.negatives.size

    def ready(self) -> bool:
        return self.positives.size > 0 and self.negatives.size > 0

    def sample(self, n: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
        """Balanced batch: up to n/2 rows from each set."""
        half = max(1, n // 2)
        return self.positives.sample(half, rng), self.negatives.sample(half, rng)
