from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Deque, Dict, List, Optional

import numpy as np

from SkillComposer import Logger
from SkillComposer.Approx import OptimizerState, sgd_step
from SkillComposer.Kitchen import SimHandle
from SkillComposer.Kitchen.KitchenObjects import ACTION_DIM, ACTION_LIMITS
from SkillComposer.Store.StoreObjects import TrajectoryRecord
from .CEM import cem_select_action
from .Features import feature_dim, featurize
from .Hyperparameters import SkillHyperparameters
from .Losses import detector_loss_and_grad, td_loss_and_grad, vae_loss_and_grad
from .QTarget import ActionSampler, q_targets, uniform_action_sampler
from .Replay import ExampleSets, ReplayBuffer
from .SkillIds import check_skill, skill_succeeded
from .SkillModel import SkillModel
from .StartStates import start_state

logger = Logger.get_logger(__name__)


@dataclass
class TrainingState:
    """Optimizer memories, one per trained component."""
    vae: OptimizerState = field(default_factory=OptimizerState)
    vae_decoder: OptimizerState = field(default_factory=OptimizerState)
    detector: OptimizerState = field(default_factory=OptimizerState)
    q: OptimizerState = field(default_factory=OptimizerState)


class TrajectoryDataset:
    """Keeps the most recent full trajectory records for persistence."""

    def __init__(self, keep: int):
        self.records: Deque[TrajectoryRecord] = deque(maxlen=max(keep, 0))
        self.episodes = 0
        self.transitions = 0

    def add(self, record: TrajectoryRecord):
        self.episodes += 1
        self.transitions += len(record)
        self.records.append(record)

    def __len__(self):
        return len(self.records)


def epsilon_at(episode: int, episodes: int, start: float, end: float) -> float:
    if episodes <= 1:
        return end
    return start + (end - start) * min(episode / (episodes - 1), 1.0)


def vae_step(model: SkillModel, features: np.ndarray, lr: float, opt: TrainingState,
             rng: np.random.Generator) -> float:
    eps = rng.standard_normal((features.shape[0], model.latent_dim))
    result = vae_loss_and_grad(model, features, eps)
    model.encoder = sgd_step(model.encoder, result.encoder_grad, lr, opt.vae)
    model.decoder = sgd_step(model.decoder, result.decoder_grad, lr, opt.vae_decoder)
    return result.loss


def detector_step(model: SkillModel, positives: np.ndarray, negatives: np.ndarray, lr: float,
                  opt: TrainingState) -> float:
    """One detector update on frozen VAE means."""
    loss, gradient = detector_loss_and_grad(model.detector, model.encode_features(positives),
                                            model.encode_features(negatives))
    model.detector = sgd_step(model.detector, gradient, lr, opt.detector)
    return loss


def q_step(model: SkillModel, latents: np.ndarray, actions: np.ndarray, next_latents: np.ndarray, lr: float,
           opt: TrainingState, sampler: ActionSampler, num_samples: int, rng: np.random.Generator,
           target_sync: int) -> float:
    """One TD update on latents; refreshes the target net every `target_sync` Q updates."""
    targets = q_targets(model, next_latents, sampler, num_samples, rng)
    loss, gradient = td_loss_and_grad(model.q, latents, actions, targets)
    model.q = sgd_step(model.q, gradient, lr, opt.q)
    model.steps += 1
    if model.steps % target_sync == 0:
        model.sync_target()
    return loss


def q_phase(model: SkillModel, replay: ReplayBuffer, hyper: SkillHyperparameters, opt: TrainingState,
            rng: np.random.Generator, sampler: Optional[ActionSampler] = None) -> float:
    sampler = sampler or uniform_action_sampler()
    loss = 0.0
    for _ in range(hyper.q_steps):
        batch = replay.sample(hyper.batch_size, rng)
        loss = q_step(model, model.encode_features(batch.features), batch.actions,
                      model.encode_features(batch.next_features), hyper.lr, opt, sampler, hyper.target_samples,
                      rng, hyper.target_sync)
    return loss


def gradient_phases(model: SkillModel, replay: ReplayBuffer, examples: ExampleSets, hyper: SkillHyperparameters,
                    opt: TrainingState, rng: np.random.Generator) -> Dict[str, float]:
    losses: Dict[str, float] = {}
    if len(replay) == 0:
        return losses
    for _ in range(hyper.vae_steps):
        losses["vae"] = vae_step(model, replay.sample(hyper.batch_size, rng).features, hyper.lr, opt, rng)
    if examples.ready():
        for _ in range(hyper.detector_steps):
            positives, negatives = examples.sample(hyper.batch_size, rng)
            losses["detector"] = detector_step(model, positives, negatives, hyper.lr, opt)
    losses["td"] = q_phase(model, replay, hyper, opt, rng)
    return losses


ProgressFn = Callable[[int, Dict[str, float], SkillModel], None]


def train_skill(sim: SimHandle, skill: str, hyper: Optional[SkillHyperparameters] = None, seed: int = 0,
                progress: Optional[ProgressFn] = None):
    """Collects episodes of one skill and trains its model.

    Returns (SkillModel, ExampleSets, TrajectoryDataset). Every random draw
    derives from `seed`, so two runs with the same arguments give identical
    parameters.
    """
    check_skill(skill)
    hyper = (hyper or SkillHyperparameters()).validate()
    model_seq, episode_seq, train_seq = np.random.SeedSequence(seed).spawn(3)
    rng_model = np.random.default_rng(model_seq)
    rng_episode = np.random.default_rng(episode_seq)
    rng_train = np.random.default_rng(train_seq)

    dim = feature_dim(sim.num_cameras)
    model = SkillModel.build(skill, dim, hyper, rng_model)
    replay = ReplayBuffer(hyper.replay_capacity, dim, ACTION_DIM)
    examples = ExampleSets(hyper.replay_capacity, dim)
    dataset = TrajectoryDataset(hyper.keep_trajectories)
    opt = TrainingState()
    if hyper.episodes == 0:
        logger.warning(f"Training {skill} for 0 episodes; the model stays untrained")

    successes: List[bool] = []
    for episode in range(hyper.episodes):
        env = sim.make(int(rng_episode.integers(2 ** 31 - 1)))
        binding = start_state(skill, env, rng_episode, hyper.standoff_fraction)
        epsilon = epsilon_at(episode, hyper.episodes, hyper.epsilon_start, hyper.epsilon_end)
        record = TrajectoryRecord(episode, skill, env.config.GetValue())
        features = featurize(env.observation)
        success = False
        for _ in range(hyper.horizon):
            if rng_episode.random() < epsilon:
                action = rng_episode.uniform(-ACTION_LIMITS, ACTION_LIMITS)
            else:
                action = cem_select_action(model, model.encode_features(features), population=hyper.cem_population,
                                           elites=hyper.cem_elites, iterations=hyper.cem_iterations,
                                           rng=rng_episode)
            previous = env.observation
            obs, events = env.step(action)
            success = skill_succeeded(binding, env.symbolic_state())
            next_features = featurize(obs)
            replay.add(features, action, next_features)
            examples.add(next_features, success)
            record.append(previous, action, success, events)
            features = next_features
            if success:
                break
        dataset.add(record)
        successes.append(success)

        if (episode + 1) % hyper.train_every == 0 or episode + 1 == hyper.episodes:
            losses = gradient_phases(model, replay, examples, hyper, opt, rng_train)
            recent = successes[-hyper.train_every:]
            losses["success_rate"] = sum(recent) / len(recent)
            logger.info(f"{skill} episode {episode + 1}/{hyper.episodes} eps={epsilon:.2f} "
                        + " ".join(f"{k}={v:.4g}" for k, v in losses.items()))
            if progress is not None:
                progress(episode + 1, losses, model)
    return model, examples, dataset
