from .RunConfig import RunConfig, run_config_from_args
from .Commands import (cmd_ablate, cmd_eval_skill, cmd_plan, cmd_run_activity, cmd_train_skill, evaluate_skill,
                       run_activity_trials)
from .Main import build_parser, main
