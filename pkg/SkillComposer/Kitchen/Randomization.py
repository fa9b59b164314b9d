from dataclasses import replace
from typing import Dict, Mapping, Optional, Union

import numpy as np

from SkillComposer import Logger
from SkillComposer.Exceptions.Exceptions import RandomizationError
from .KitchenObjects import DIMENSIONS, DimensionSpec, EnvConfig, default_ranges

logger = Logger.get_logger(__name__)

RangeTable = Mapping[str, DimensionSpec]


def check_ranges(ranges: RangeTable, scale: float):
    if not 0.0 < scale <= 1.0:
        raise RandomizationError(f"Randomization scale must lie in (0, 1], got {scale}")
    missing = [name for name in DIMENSIONS if name not in ranges]
    if missing:
        raise RandomizationError(f"Range table is missing dimensions: {missing}")
    for name in DIMENSIONS:
        spec = ranges[name]
        if spec.repeat < 1 or not spec.components:
            raise RandomizationError(f"Dimension {name} declares no values")
        for component in spec.components:
            if not component.low <= component.high:
                raise RandomizationError(f"Empty range for {name}.{component.name}: "
                                         f"[{component.low}, {component.high}]")


def scale_ranges(ranges: RangeTable, scale: float) -> Dict[str, DimensionSpec]:
    check_ranges(ranges, scale)
    return {name: ranges[name].scaled(scale) for name in DIMENSIONS}


def _shape(spec: DimensionSpec, values: np.ndarray):
    """(repeat, components) array to the tuple layout EnvConfig stores."""
    rows = [tuple(int(v) if c.integer else float(v) for v, c in zip(row, spec.components)) for row in values]
    if len(spec.components) == 1:
        rows = [row[0] for row in rows]
    if spec.repeat == 1:
        return rows[0]
    return tuple(rows)


def _draw(spec: DimensionSpec, rng: np.random.Generator) -> np.ndarray:
    values = np.empty((spec.repeat, len(spec.components)))
    for j, component in enumerate(spec.components):
        if component.integer:
            values[:, j] = rng.integers(int(component.low), int(component.high) + 1, size=spec.repeat)
        else:
            values[:, j] = rng.uniform(component.low, component.high, size=spec.repeat)
    return values


def sample_randomization(ranges: Optional[RangeTable] = None, scale: float = 1.0, photorealism: bool = True,
                         seed: int = 0, *, resolution: int = 32, num_cameras: int = 2,
                         layout: Optional[int] = None) -> EnvConfig:
    """Samples every randomized dimension, deterministically for a given seed.

    Each range is shrunk about its midpoint by `scale` before sampling.
    `layout` pins the scene layout (used for held-out kitchens).
    """
    if ranges is None:
        ranges = default_ranges(num_cameras)
    scaled = scale_ranges(ranges, scale)
    if scaled["camera_parameters"].repeat != num_cameras:
        raise RandomizationError(f"camera_parameters repeats {scaled['camera_parameters'].repeat} times "
                                 f"but {num_cameras} cameras are rendered")

    rng = np.random.default_rng(seed)
    values = {name: _shape(scaled[name], _draw(scaled[name], rng)) for name in DIMENSIONS}
    if layout is not None:
        values["scene_layout"] = int(layout)
    return EnvConfig(seed=int(seed), photorealism=bool(photorealism), rand_scale=float(scale),
                     resolution=int(resolution), num_cameras=int(num_cameras), **values)


def nominal_config(ranges: Optional[RangeTable] = None, *, seed: int = 0, photorealism: bool = True,
                   resolution: int = 32, num_cameras: int = 2, layout: Optional[int] = None) -> EnvConfig:
    """Every dimension at its range midpoint: the scene a non-adaptive script assumes."""
    if ranges is None:
        ranges = default_ranges(num_cameras)
    point = scale_ranges(ranges, 1e-9)
    values = {}
    for name in DIMENSIONS:
        spec = point[name]
        mids = np.array([[0.5 * (c.low + c.high) for c in spec.components]] * spec.repeat)
        values[name] = _shape(spec, mids)
    if layout is not None:
        values["scene_layout"] = int(layout)
    return EnvConfig(seed=int(seed), photorealism=bool(photorealism), rand_scale=1.0,
                     resolution=int(resolution), num_cameras=int(num_cameras), **values)


def within_ranges(config: EnvConfig, ranges: RangeTable, scale: float = 1.0) -> bool:
    scaled = scale_ranges(ranges, scale)
    for name in DIMENSIONS:
        spec = scaled[name]
        value = getattr(config, name)
        rows = np.asarray(value, dtype=np.float64).reshape(spec.repeat, len(spec.components))
        for row in rows:
            if not all(c.contains(v) for v, c in zip(row, spec.components)):
                return False
    return True


def with_layout(config: EnvConfig, layout: Union[int, np.integer]) -> EnvConfig:
    return replace(config, scene_layout=int(layout))
