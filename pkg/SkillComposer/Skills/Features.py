from typing import Sequence

import numpy as np

from SkillComposer.Approx import pyramid, pyramid_size
from SkillComposer.Kitchen.KitchenObjects import PROPRIO_DIM, Observation


def feature_dim(num_cameras: int) -> int:
    return (num_cameras + 2) * pyramid_size() + PROPRIO_DIM


def featurize(obs: Observation) -> np.ndarray:
    """Pooled pyramid of every image followed by proprioception."""
    parts = [pyramid(image) for image in obs.images()]
    parts.append(np.asarray(obs.proprio, dtype=np.float64))
    return np.concatenate(parts)


def featurize_batch(observations: Sequence[Observation]) -> np.ndarray:
    return np.stack([featurize(obs) for obs in observations])
