from .CEM import CEMResult, cem_maximize, cem_select_action
from .Features import feature_dim, featurize, featurize_batch
from .Hyperparameters import BOOTSTRAP_GATES, SkillHyperparameters
from .Losses import (VaeLoss, detector_loss, detector_loss_and_grad, kl_divergence, td_loss, td_loss_and_grad,
                     vae_loss, vae_loss_and_grad)
from .Policies import LearnedSkill, OracleSkill, RandomSkill, ScriptedBaseline, ScriptedSkill, SkillPolicy
from .QTarget import (binarize_reward, binarize_rewards, cycling_action_sampler, q_target, q_targets,
                      sampled_max, uniform_action_sampler)
from .Replay import ExampleSets, ReplayBuffer, TransitionBatch
from .ScriptedSkills import scripted_action
from .SkillIds import PREDICATE_DETECTORS, SKILLS, Binding, check_skill, skill_succeeded, success_literal
from .SkillModel import SkillModel, encode, reparameterize, sigmoid
from .StartStates import candidate_bindings, start_state
from .Trainer import TrainingState, TrajectoryDataset, q_phase, q_step, train_skill
