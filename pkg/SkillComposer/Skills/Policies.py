"""Ways of executing a bound skill in a KitchenEnv.

A policy answers two questions every control period: does it believe the
skill is done, and if not, which action to take.
"""
from typing import Optional

import numpy as np

from SkillComposer import Logger
from SkillComposer.Kitchen import (KitchenEnv, hold_item, nominal_config, place_item, set_dust, set_open)
from SkillComposer.Kitchen.KitchenObjects import ACTION_LIMITS, SimState, zero_action
from .CEM import cem_select_action
from .Hyperparameters import SkillHyperparameters
from .ScriptedSkills import scripted_action
from .SkillIds import Binding, skill_succeeded
from .SkillModel import SkillModel, encode

logger = Logger.get_logger(__name__)

# the layout a non-adaptive script is written for
NOMINAL_LAYOUT = 2


class SkillPolicy:
    name = "policy"

    def begin(self, env: KitchenEnv, binding: Binding):
        env.set_target(binding.target)

    def believes_done(self, env: KitchenEnv, binding: Binding) -> bool:
        raise NotImplementedError

    def act(self, env: KitchenEnv, binding: Binding, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError


class LearnedSkill(SkillPolicy):
    """Greedy CEM on the skill's Q-function, terminated by its own detector."""
    name = "learned"

    def __init__(self, model: SkillModel, hyper: Optional[SkillHyperparameters] = None):
        self.model = model
        self.hyper = hyper or SkillHyperparameters()

    def believes_done(self, env: KitchenEnv, binding: Binding) -> bool:
        z = encode(self.model, env.observation)
        return bool(self.model.detector_prob(z) > 0.5)

    def act(self, env: KitchenEnv, binding: Binding, rng: np.random.Generator) -> np.ndarray:
        z = encode(self.model, env.observation)
        return cem_select_action(self.model, z, population=self.hyper.cem_population,
                                 elites=self.hyper.cem_elites, iterations=self.hyper.cem_iterations, rng=rng)


class ScriptedSkill(SkillPolicy):
    """The scripted controller fed the true simulator state."""
    name = "privileged"

    def believes_done(self, env: KitchenEnv, binding: Binding) -> bool:
        return skill_succeeded(binding, env.symbolic_state())

    def act(self, env: KitchenEnv, binding: Binding, rng: np.random.Generator) -> np.ndarray:
        return scripted_action(env.state, env.config, binding)


def _mirror_facts(real: SimState, belief: SimState, dyn) -> SimState:
    """Copies which containers are open, what is held, dust and bucket contents; geometry stays nominal."""
    for name, fraction in real.open.items():
        belief = set_open(belief, name, fraction, dyn)
    for name, coverage in real.dust.items():
        belief = set_dust(belief, name, coverage)
    for name, item in real.items.items():
        if item.container is not None and item.container == real.scene.bucket:
            belief = place_item(belief, name, belief.scene.bucket, dyn)
    if real.held is not None:
        belief = hold_item(belief, real.held)
    return belief


class ScriptedBaseline(SkillPolicy):
    """The scripted controller run open loop against a believed nominal kitchen.

    The belief env is built on first use and then advanced with the same
    actions as the real one, so one instance should serve one episode or
    activity trial.
    """
    name = "scripted"

    def __init__(self):
        self.belief: Optional[KitchenEnv] = None

    def begin(self, env: KitchenEnv, binding: Binding):
        super().begin(env, binding)
        if self.belief is None:
            config = env.config
            self.belief = KitchenEnv(nominal_config(seed=config.seed, photorealism=config.photorealism,
                                                    resolution=config.resolution, num_cameras=config.num_cameras,
                                                    layout=NOMINAL_LAYOUT), env.activity)
            self.belief.set_state(_mirror_facts(env.state, self.belief.state, self.belief.config.dynamics))
            logger.debug(f"Scripted baseline believes layout {NOMINAL_LAYOUT}, "
                         f"real layout is {env.config.scene_layout}")
        self.belief.set_target(binding.target)

    def believes_done(self, env: KitchenEnv, binding: Binding) -> bool:
        return skill_succeeded(binding, self.belief.symbolic_state())

    def act(self, env: KitchenEnv, binding: Binding, rng: np.random.Generator) -> np.ndarray:
        action = scripted_action(self.belief.state, self.belief.config, binding)
        self.belief.step(action)
        return action


class OracleSkill(SkillPolicy):
    """Realises the skill's symbolic effect by editing the simulator state."""
    name = "oracle"

    def believes_done(self, env: KitchenEnv, binding: Binding) -> bool:
        return skill_succeeded(binding, env.symbolic_state())

    def act(self, env: KitchenEnv, binding: Binding, rng: np.random.Generator) -> np.ndarray:
        state = env.state
        dyn = env.config.dynamics
        skill, target = binding.skill, binding.target
        if skill == "open":
            state = set_open(state, target, 1.0, dyn)
        elif skill == "close":
            state = set_open(state, target, 0.0, dyn)
        elif skill == "grasp":
            state = hold_item(state, target)
        elif skill == "place":
            state = place_item(state, target, binding.args[1], dyn)
        else:
            state = set_dust(state, target, 0.0)
        env.set_state(state)
        return zero_action()


class RandomSkill(SkillPolicy):
    """Uniform actions over the action box; stops only when the skill truly succeeded."""
    name = "random"

    def believes_done(self, env: KitchenEnv, binding: Binding) -> bool:
        return skill_succeeded(binding, env.symbolic_state())

    def act(self, env: KitchenEnv, binding: Binding, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(-ACTION_LIMITS, ACTION_LIMITS)
