from dataclasses import dataclass

import numpy as np

from SkillComposer.BinaryReader import BinaryStream
from SkillComposer.Kitchen.KitchenObjects import Observation


@dataclass
class QuantizedObservation:
    """An Observation with every image stored as uint8 pixels and one float32 scale.

    Pixel value p decodes to p / 255 * scale. Images are ordered cameras,
    in-view, masked.
    """
    scales: np.ndarray  # (K,) float32
    pixels: np.ndarray  # (K, S, S, 3) uint8
    proprio: np.ndarray  # (19,) float64
    target: str = ""

    @classmethod
    def from_observation(cls, obs: Observation) -> 'QuantizedObservation':
        images = obs.images()
        scales = images.reshape(images.shape[0], -1).max(axis=1).astype(np.float32)
        safe = np.where(scales > 0, scales, 1.0).astype(np.float64)
        pixels = np.rint(images / safe[:, None, None, None] * 255.0)
        return cls(scales, np.clip(pixels, 0, 255).astype(np.uint8),
                   np.asarray(obs.proprio, dtype=np.float64).copy(), obs.target)

    @property
    def num_images(self) -> int:
        return self.pixels.shape[0]

    @property
    def resolution(self) -> int:
        return self.pixels.shape[1]

    def images(self) -> np.ndarray:
        return self.pixels.astype(np.float64) / 255.0 * self.scales.astype(np.float64)[:, None, None, None]

    def to_observation(self) -> Observation:
        images = self.images()
        return Observation(images[:-2], images[-2], images[-1], self.proprio.copy(), self.target)

    @classmethod
    def read(cls, reader: BinaryStream, num_images: int, resolution: int, proprio_dim: int
             ) -> 'QuantizedObservation':
        target = reader.readFString()
        scales = reader.readArray("<f4", (num_images,))
        pixels = reader.readArray("u1", (num_images, resolution, resolution, 3))
        proprio = reader.readArray("<f8", (proprio_dim,))
        return cls(scales, pixels, proprio, target)

    def write(self, writer: BinaryStream):
        writer.writeFString(self.target)
        writer.writeArray(self.scales, "<f4")
        writer.writeArray(self.pixels, "u1")
        writer.writeArray(self.proprio, "<f8")

    def __eq__(self, other):
        if not isinstance(other, QuantizedObservation):
            return NotImplemented
        return (self.target == other.target and np.array_equal(self.scales, other.scales)
                and np.array_equal(self.pixels, other.pixels) and np.array_equal(self.proprio, other.proprio))
