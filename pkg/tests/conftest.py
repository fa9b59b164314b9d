import os

import numpy as np
import pytest

from SkillComposer.Kitchen import SimHandle
from SkillComposer.Kitchen.KitchenObjects import ActivityDescriptor
from SkillComposer.Skills import SkillHyperparameters

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CLEANING_GOAL = os.path.join(REPO_ROOT, "goals", "cleaning_kitchen.goal")

ONE_CUPBOARD = ActivityDescriptor("one_cupboard", cupboards=1, drawers=0, objects=1)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def goal_text():
    with open(CLEANING_GOAL, "r", encoding="utf-8") as f:
        return f.read()


@pytest.fixture
def sim():
    return SimHandle(resolution=16)


@pytest.fixture
def small_hyper():
    """Tiny networks and budgets so learning code runs in well under a second."""
    return SkillHyperparameters(latent_dim=4, hidden=(8,), batch_size=8, episodes=2, horizon=3,
                                replay_capacity=64, train_every=1, vae_steps=1, detector_steps=1, q_steps=1,
                                target_samples=5, cem_population=8, cem_elites=2, cem_iterations=2,
                                keep_trajectories=2)

# the shortest plan for ONE_CUPBOARD's cleaning goal
CANONICAL_PLAN = ["open(c1)", "grasp(o1)", "place(o1,b1)", "grasp(cl1)", "wipe(c1)", "place(cl1,b1)", "close(c1)"]
