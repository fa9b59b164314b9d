from dataclasses import dataclass, replace
from typing import Dict, Optional, Tuple

import numpy as np

from SkillComposer.Approx import Net
from SkillComposer.Kitchen.KitchenObjects import ACTION_DIM, Observation
from .Features import featurize
from .Hyperparameters import SkillHyperparameters
from .SkillIds import check_skill

# log-variance is squashed into (-LOGVAR_BOUND, LOGVAR_BOUND)
LOGVAR_BOUND = 8.0


def split_encoder_output(out: np.ndarray, latent_dim: int) -> Tuple[np.ndarray, np.ndarray]:
    mu = out[..., :latent_dim]
    logvar = LOGVAR_BOUND * np.tanh(out[..., latent_dim:] / LOGVAR_BOUND)
    return mu, logvar


def reparameterize(mu: np.ndarray, logvar: np.ndarray, eps: np.ndarray) -> np.ndarray:
    return mu + np.exp(0.5 * logvar) * eps


def sigmoid(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * np.asarray(x, dtype=np.float64)))


@dataclass
class SkillModel:
    """Everything one skill learns: its own VAE, success detector and Q-function."""
    skill: str
    encoder: Net
    decoder: Net
    detector: Net
    q: Net
    q_target: Net
    gamma: float = 0.99
    bootstrap_gate: str = "literal"
    recon_sigma: float = 0.1
    steps: int = 0

    def __post_init__(self):
        check_skill(self.skill)
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError(f"gamma must lie in [0, 1), got {self.gamma}")

    @classmethod
    def build(cls, skill: str, feature_dim: int, hyper: SkillHyperparameters, rng: np.random.Generator,
              action_dim: int = ACTION_DIM) -> 'SkillModel':
        latent = hyper.latent_dim
        hidden = tuple(hyper.hidden)
        encoder = Net.build(feature_dim, hidden, 2 * latent, rng=rng, output_scale=0.1)
        decoder = Net.build(latent, tuple(reversed(hidden)), feature_dim, rng=rng)
        detector = Net.build(latent, hidden, 1, rng=rng, output_scale=0.1)
        q = Net.build(latent + action_dim, hidden, 1, rng=rng, output_scale=0.1)
        return cls(skill, encoder, decoder, detector, q, q.copy(), hyper.gamma, hyper.bootstrap_gate,
                   hyper.recon_sigma)

    @property
    def latent_dim(self) -> int:
        return self.decoder.input_dim

    @property
    def feature_dim(self) -> int:
        return self.encoder.input_dim

    @property
    def action_dim(self) -> int:
        return self.q.input_dim - self.latent_dim

    def nets(self) -> Dict[str, Net]:
        return {"encoder": self.encoder, "decoder": self.decoder, "detector": self.detector,
                "q": self.q, "q_target": self.q_target}

    def manifest(self) -> dict:
        return {
            "skill": self.skill,
            "gamma": self.gamma,
            "bootstrap_gate": self.bootstrap_gate,
            "recon_sigma": self.recon_sigma,
            "nets": {name: net.manifest() for name, net in self.nets().items()},
        }

    def copy(self) -> 'SkillModel':
        return replace(self, **{name: net.copy() for name, net in self.nets().items()})

    def sync_target(self):
        self.q_target = self.q.copy()

    def posterior(self, features: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return split_encoder_output(self.encoder.forward(features), self.latent_dim)

    def encode_features(self, features: np.ndarray, deterministic: bool = True,
                        rng: Optional[np.random.Generator] = None) -> np.ndarray:
        mu, logvar = self.posterior(features)
        if deterministic:
            return mu
        rng = rng if rng is not None else np.random.default_rng()
        return reparameterize(mu, logvar, rng.standard_normal(mu.shape))

    def detector_logit(self, z: np.ndarray) -> np.ndarray:
        return self.detector.forward(z)[..., 0]

    def detector_prob(self, z: np.ndarray) -> np.ndarray:
        return sigmoid(self.detector_logit(z))

    def q_values(self, z: np.ndarray, actions: np.ndarray, target: bool = False) -> np.ndarray:
        """Q(z, a) for every row of `actions`; `z` is a single latent or one per row."""
        actions = np.atleast_2d(actions)
        z = np.broadcast_to(z, (actions.shape[0], self.latent_dim)) if np.ndim(z) == 1 else z
        net = self.q_target if target else self.q
        return net.forward(np.hstack([z, actions]))[:, 0]


def encode(model: SkillModel, obs: Observation, deterministic: bool = True,
           rng: Optional[np.random.Generator] = None) -> np.ndarray:
    return model.encode_features(featurize(obs), deterministic, rng)
