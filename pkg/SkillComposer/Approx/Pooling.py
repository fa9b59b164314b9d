from typing import Sequence

import numpy as np

from SkillComposer.Exceptions.Exceptions import DimensionMismatchError
from SkillComposer.Logger import get_logger

logger = get_logger(__name__)

PYRAMID = (8, 4)

try:
    from .utils import average_pool as _average_pool
except ImportError:
    logger.warning("Cython based pooling is not available. Slower numpy implementation will be used.")

    def _average_pool(image: np.ndarray, cells: int) -> np.ndarray:
        size, _, channels = image.shape
        block = size // cells
        blocks = image.astype(np.float64).reshape(cells, block, cells, block, channels)
        return blocks.mean(axis=(1, 3))


def average_pool(image: np.ndarray, cells: int) -> np.ndarray:
    """Mean over a cells x cells grid of square blocks of an (S, S, C) image."""
    if image.ndim != 3 or image.shape[0] != image.shape[1]:
        raise DimensionMismatchError(f"Expected a square (S, S, C) image, got {image.shape}")
    if image.shape[0] % cells:
        raise DimensionMismatchError(f"Resolution {image.shape[0]} is not divisible by {cells}")
    return _average_pool(np.ascontiguousarray(image, dtype=np.float32), cells)


def pyramid(image: np.ndarray, levels: Sequence[int] = PYRAMID) -> np.ndarray:
    return np.concatenate([average_pool(image, cells).reshape(-1) for cells in levels])


def pyramid_size(channels: int = 3, levels: Sequence[int] = PYRAMID) -> int:
    return sum(cells * cells * channels for cells in levels)
