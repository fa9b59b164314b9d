from .KitchenObjects import *
from .KitchenSim import SimHandle, KitchenEnv, container_box, default_target, handle_point, reset, step
from .Teleport import container_standoff, hold_item, place_item, point_standoff, set_dust, set_open, set_pose
from .Oracle import objects_left_inside, oracle_symbolic_state
from .Randomization import nominal_config, sample_randomization, scale_ranges, with_layout, within_ranges
from .Renderer import proprioception, render, target_pixel_counts
