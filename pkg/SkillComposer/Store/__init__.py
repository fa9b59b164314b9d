from .StoreObjects import *
from .CheckpointFile import (checkpoint_from_model, load_checkpoint, model_from_checkpoint, restore_rng,
                             save_checkpoint)
from .ConfigFile import load_env_config, load_ranges, read_config, save_env_config, save_ranges, write_config
from .DatasetFile import load_dataset, save_dataset
from .MetricsLog import append_metrics, format_success, read_metrics, summarize_activity, wilson_interval
