from .Action import ACTION_DIM, ACTION_LIMITS, ACTION_NAMES, Action, clip_action, zero_action
from .Activity import CLEANING_KITCHEN, ActivityDescriptor
from .Constants import DynamicsConstants, OracleThresholds
from .EnvConfig import EnvConfig
from .Layout import LAYOUTS, HELD_OUT_LAYOUTS, TRAIN_LAYOUTS, Layout
from .Observation import PROPRIO_DIM, Observation
from .RandomizationRanges import DIMENSIONS, ComponentRange, DimensionSpec, default_ranges
from .SimState import ItemState, Scene, SimState
from .StepEvents import StepEvents
