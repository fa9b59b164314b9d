from dataclasses import asdict, dataclass, fields
from typing import Tuple

from SkillComposer.Exceptions.Exceptions import ConfigError

BOOTSTRAP_GATES = ("literal", "complement")


@dataclass
class SkillHyperparameters:
    gamma: float = 0.99
    latent_dim: int = 32
    horizon: int = 40
    batch_size: int = 128
    lr: float = 3e-4
    episodes: int = 2000
    hidden: Tuple[int, ...] = (64, 64)
    target_sync: int = 500
    epsilon_start: float = 1.0
    epsilon_end: float = 0.1
    cem_population: int = 64
    cem_elites: int = 6
    cem_iterations: int = 3
    target_samples: int = 200
    replay_capacity: int = 10000
    train_every: int = 10  # episodes between gradient phases
    vae_steps: int = 20
    detector_steps: int = 20
    q_steps: int = 20
    recon_sigma: float = 0.1
    bootstrap_gate: str = "literal"
    keep_trajectories: int = 20
    standoff_fraction: float = 0.7

    def validate(self) -> 'SkillHyperparameters':
        if not 0.0 <= self.gamma < 1.0:
            raise ConfigError(f"gamma must lie in [0, 1), got {self.gamma}")
        if self.bootstrap_gate not in BOOTSTRAP_GATES:
            raise ConfigError(f"bootstrap_gate must be one of {BOOTSTRAP_GATES}, got {self.bootstrap_gate!r}")
        if self.episodes < 0:
            raise ConfigError("episodes must be non-negative")
        for name in ("latent_dim", "horizon", "batch_size", "target_sync", "cem_population", "cem_elites",
                     "cem_iterations", "target_samples", "replay_capacity", "train_every"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1, got {getattr(self, name)}")
        if self.cem_elites > self.cem_population:
            raise ConfigError("cem_elites cannot exceed cem_population")
        if self.lr <= 0.0 or self.recon_sigma <= 0.0:
            raise ConfigError("lr and recon_sigma must be positive")
        if not 0.0 <= self.epsilon_end <= self.epsilon_start <= 1.0:
            raise ConfigError("expected 0 <= epsilon_end <= epsilon_start <= 1")
        if not 0.0 <= self.standoff_fraction <= 1.0:
            raise ConfigError("standoff_fraction must lie in [0, 1]")
        return self

    def GetValue(self) -> dict:
        data = asdict(self)
        data["hidden"] = list(self.hidden)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'SkillHyperparameters':
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"Unknown skill hyperparameters: {unknown}")
        values = dict(data)
        if "hidden" in values:
            values["hidden"] = tuple(int(h) for h in values["hidden"])
        return cls(**values).validate()
