from dataclasses import dataclass, field, fields
from typing import Any, Dict, Optional, Tuple

from SkillComposer.Exceptions.Exceptions import ConfigError
from SkillComposer.Kitchen.KitchenObjects import HELD_OUT_LAYOUTS, LAYOUTS
from SkillComposer.Planner.Executor import ActivityBudgets
from SkillComposer.Skills.Hyperparameters import SkillHyperparameters
from SkillComposer.Store.ConfigFile import read_config


@dataclass
class RunConfig:
    seed: int = 0
    layouts: Tuple[int, ...] = HELD_OUT_LAYOUTS
    trials: int = 10  # activity trials per layout
    eval_configs: int = 50  # held-out configs per skill evaluation
    rand_scale: float = 1.0
    photorealism: bool = True
    resolution: int = 32
    num_cameras: int = 2
    scripted: bool = False
    random: bool = False
    oracle_grounding: bool = False
    out_dir: str = "runs"
    checkpoint_dir: Optional[str] = None
    ranges_file: Optional[str] = None
    goal_file: str = "goals/cleaning_kitchen.goal"
    checkpoint_every: int = 100  # episodes
    skills: SkillHyperparameters = field(default_factory=SkillHyperparameters)
    budgets: ActivityBudgets = field(default_factory=ActivityBudgets)

    def validate(self) -> 'RunConfig':
        unknown = [layout for layout in self.layouts if layout not in LAYOUTS]
        if unknown:
            raise ConfigError(f"Unknown kitchen layouts {unknown}; known ids are {sorted(LAYOUTS)}")
        if not self.layouts:
            raise ConfigError("At least one kitchen layout is required")
        if not 0.0 < self.rand_scale <= 1.0:
            raise ConfigError(f"rand_scale must lie in (0, 1], got {self.rand_scale}")
        if self.trials < 0 or self.eval_configs < 0:
            raise ConfigError("trials and eval_configs must be non-negative")
        if self.resolution < 8 or self.resolution % 8:
            raise ConfigError(f"resolution must be a positive multiple of 8, got {self.resolution}")
        if self.num_cameras < 1:
            raise ConfigError("At least one camera is required")
        if self.scripted and self.random:
            raise ConfigError("--scripted and --random are mutually exclusive")
        if self.checkpoint_every < 1:
            raise ConfigError("checkpoint_every must be at least 1")
        self.skills.validate()
        self.budgets.validate()
        return self

    @property
    def checkpoints(self) -> str:
        return self.checkpoint_dir or f"{self.out_dir}/checkpoints"

    def GetValue(self) -> Dict[str, Any]:
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data["layouts"] = list(self.layouts)
        data["skills"] = self.skills.GetValue()
        data["budgets"] = self.budgets.GetValue()
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"Unknown run config keys: {unknown}")
        values = dict(data)
        if "layouts" in values:
            values["layouts"] = tuple(int(layout) for layout in values["layouts"])
        if "skills" in values:
            values["skills"] = SkillHyperparameters.from_dict(values["skills"] or {})
        if "budgets" in values:
            values["budgets"] = ActivityBudgets.from_dict(values["budgets"] or {})
        try:
            return cls(**values)
        except TypeError as e:
            raise ConfigError(str(e)) from e


# command-line flag -> RunConfig field; None means the flag was not given
_FLAG_FIELDS = {
    "seed": "seed",
    "out": "out_dir",
    "rand_scale": "rand_scale",
    "resolution": "resolution",
    "scripted": "scripted",
    "random": "random",
    "oracle_grounding": "oracle_grounding",
    "trials": "trials",
    "eval_configs": "eval_configs",
    "ranges": "ranges_file",
    "goal": "goal_file",
    "checkpoints": "checkpoint_dir",
}


def run_config_from_args(args) -> RunConfig:
    """Config file values, overridden by whichever flags were given, validated."""
    config_path = getattr(args, "config", None)
    run = RunConfig.from_dict(read_config(config_path)) if config_path else RunConfig()
    for flag, name in _FLAG_FIELDS.items():
        value = getattr(args, flag, None)
        if value is not None:
            setattr(run, name, value)
    photorealism = getattr(args, "photorealism", None)
    if photorealism is not None:
        run.photorealism = photorealism == "on"
    if getattr(args, "layouts", None):
        run.layouts = tuple(args.layouts)
    if getattr(args, "bootstrap_gate", None) is not None:
        run.skills.bootstrap_gate = args.bootstrap_gate
    if getattr(args, "episodes", None) is not None:
        run.skills.episodes = args.episodes
    return run.validate()
