from dataclasses import dataclass

import numpy as np

PROPRIO_DIM = 19


@dataclass
class Observation:
    cameras: np.ndarray  # (N, S, S, 3) in [0, 1]
    in_view: np.ndarray  # (S, S, 3)
    masked: np.ndarray  # (S, S, 3)
    proprio: np.ndarray  # (19,)
    target: str = ""

    @property
    def resolution(self) -> int:
        return self.cameras.shape[1]

    @property
    def num_cameras(self) -> int:
        return self.cameras.shape[0]

    def images(self) -> np.ndarray:
        """All camera images followed by the in-view and masked images."""
        return np.concatenate([self.cameras, self.in_view[None], self.masked[None]], axis=0)

    def __eq__(self, other):
        if not isinstance(other, Observation):
            return NotImplemented
        return (self.target == other.target
                and np.array_equal(self.cameras, other.cameras)
                and np.array_equal(self.in_view, other.in_view)
                and np.array_equal(self.masked, other.masked)
                and np.array_equal(self.proprio, other.proprio))
