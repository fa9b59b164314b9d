from typing import Dict, Iterable, List, Tuple

import numpy as np
from Crypto.Hash import SHA1

from SkillComposer.Exceptions.Exceptions import DimensionMismatchError, NonFiniteError

Shape = Tuple[int, ...]


class ParamVector:
    """Flat float64 parameter array with a registry of named slices."""
    __slots__ = ("data", "registry")

    data: np.ndarray
    registry: Dict[str, Tuple[slice, Shape]]

    def __init__(self, data: np.ndarray, registry: Dict[str, Tuple[slice, Shape]]):
        self.data = np.ascontiguousarray(data, dtype=np.float64)
        self.registry = registry
        size = sum(int(np.prod(shape, dtype=np.int64)) for _, shape in registry.values())
        if size != self.data.shape[0]:
            raise DimensionMismatchError(f"Registry covers {size} parameters, array holds {self.data.shape[0]}")

    @classmethod
    def from_shapes(cls, shapes: Iterable[Tuple[str, Shape]]) -> 'ParamVector':
        registry = {}
        offset = 0
        for name, shape in shapes:
            size = int(np.prod(shape, dtype=np.int64))
            registry[name] = (slice(offset, offset + size), tuple(shape))
            offset += size
        return cls(np.zeros(offset), registry)

    def view(self, name: str) -> np.ndarray:
        where, shape = self.registry[name]
        return self.data[where].reshape(shape)

    @property
    def names(self) -> List[str]:
        return list(self.registry)

    def zeros_like(self) -> 'ParamVector':
        return ParamVector(np.zeros_like(self.data), self.registry)

    def copy(self) -> 'ParamVector':
        return ParamVector(self.data.copy(), self.registry)

    def with_data(self, data: np.ndarray) -> 'ParamVector':
        if data.shape != self.data.shape:
            raise DimensionMismatchError(f"Expected {self.data.shape} parameters, got {data.shape}")
        return ParamVector(data, self.registry)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.data)))

    def check_finite(self, what: str = "parameters"):
        if not self.is_finite():
            raise NonFiniteError(f"Non-finite values in {what}")

    def checksum(self) -> str:
        return SHA1.new(self.data.astype("<f8").tobytes()).hexdigest()

    def __len__(self):
        return self.data.shape[0]

    def __eq__(self, other):
        if not isinstance(other, ParamVector):
            return NotImplemented
        return self.registry == other.registry and np.array_equal(self.data, other.data)
