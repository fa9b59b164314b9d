from dataclasses import asdict, dataclass, field, fields
from typing import List, Mapping, NamedTuple, Optional, Protocol, Sequence, Union

import numpy as np

from SkillComposer import Logger
from SkillComposer.Exceptions.Exceptions import ConfigError, MissingArtifactError
from SkillComposer.Goals import GoalSpec, evaluate, ground_quantifiers, parse_goal
from SkillComposer.Goals.GoalObjects import GroundedGoal, SymbolicState
from SkillComposer.Kitchen import KitchenEnv, objects_left_inside
from SkillComposer.Kitchen.KitchenObjects import StepEvents
from SkillComposer.Skills.Policies import LearnedSkill, SkillPolicy
from SkillComposer.Skills.SkillIds import SKILLS, Binding, skill_succeeded
from SkillComposer.Skills.SkillModel import SkillModel
from .OperatorSchema import OperatorSchema
from .StateGrounder import DetectorGrounder
from .SymbolicPlanner import plan

logger = Logger.get_logger(__name__)

FAILURE_TAGS = ("collision", "object-left-inside", "unreachable-object", "timeout", "no-plan")


@dataclass
class ActivityBudgets:
    max_replans: int = 25
    steps_per_skill: int = 40
    total_steps: int = 1500

    def validate(self) -> 'ActivityBudgets':
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ConfigError(f"Budget {f.name} must be non-negative")
        return self

    def GetValue(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'ActivityBudgets':
        unknown = sorted(set(data) - {f.name for f in fields(cls)})
        if unknown:
            raise ConfigError(f"Unknown activity budgets: {unknown}")
        return cls(**{k: int(v) for k, v in data.items()}).validate()


class SkillResult(NamedTuple):
    success: bool
    steps: int
    events: List[StepEvents]


@dataclass
class ActivityOutcome:
    success: bool = False
    steps: int = 0
    skills_attempted: int = 0
    skills_succeeded: int = 0
    replans: int = 0
    failure_tags: List[str] = field(default_factory=list)
    executed: List[str] = field(default_factory=list)

    def GetValue(self) -> dict:
        return asdict(self)


class Grounder(Protocol):
    def ground(self, env: KitchenEnv) -> SymbolicState: ...


def _as_policy(skill: Union[SkillPolicy, SkillModel]) -> SkillPolicy:
    return LearnedSkill(skill) if isinstance(skill, SkillModel) else skill


def execute_skill(env: KitchenEnv, skill: Union[SkillPolicy, SkillModel], binding: Binding, max_steps: int,
                  rng: Optional[np.random.Generator] = None) -> SkillResult:
    """Acts until the policy believes the skill is done or `max_steps` actions were taken.

    The result's success flag is the policy's own verdict at termination.
    """
    policy = _as_policy(skill)
    rng = rng if rng is not None else np.random.default_rng(0)
    policy.begin(env, binding)
    events: List[StepEvents] = []
    steps = 0
    while True:
        if policy.believes_done(env, binding):
            return SkillResult(True, steps, events)
        if steps >= max_steps:
            return SkillResult(False, steps, events)
        _, event = env.step(policy.act(env, binding, rng))
        events.append(event)
        steps += 1


def inspect_failures(env: KitchenEnv) -> List[str]:
    """Failure tags visible in the simulator at termination."""
    tags = []
    if env.collisions or env.state.safety_stop:
        tags.append("collision")
    if objects_left_inside(env.state, env.config.thresholds):
        tags.append("object-left-inside")
    if env.dropped or any(item.unreachable for item in env.state.items.values()):
        tags.append("unreachable-object")
    return tags


def execute_activity(env: KitchenEnv, goal: Union[str, GoalSpec], skills: Mapping[str, Union[SkillPolicy, SkillModel]],
                     budgets: Optional[ActivityBudgets] = None, grounder: Optional[Grounder] = None,
                     rng: Optional[np.random.Generator] = None,
                     schemas: Optional[Sequence[OperatorSchema]] = None) -> ActivityOutcome:
    """Ground, plan, run the first skill, repeat.

    The agent stops when its grounded state satisfies the goal; the outcome
    is a success only if the simulator's own state satisfies it too.
    """
    missing = [skill for skill in SKILLS if skill not in skills]
    if missing:
        raise MissingArtifactError(f"Missing skills: {', '.join(missing)}")
    budgets = (budgets or ActivityBudgets()).validate()
    policies = {name: _as_policy(skill) for name, skill in skills.items()}
    if grounder is None:
        grounder = DetectorGrounder({name: p.model for name, p in policies.items() if isinstance(p, LearnedSkill)})
    rng = rng if rng is not None else np.random.default_rng(0)
    spec = parse_goal(goal) if isinstance(goal, str) else goal
    grounded: GroundedGoal = ground_quantifiers(spec, env.universe, env.containment)

    outcome = ActivityOutcome()
    plans = 0
    while True:
        believed = grounder.ground(env)
        if evaluate(grounded, believed):
            outcome.success = evaluate(grounded, env.symbolic_state())
            if not outcome.success:
                logger.info("Activity believed complete but the simulator disagrees")
            break
        if plans > budgets.max_replans:
            outcome.failure_tags.append("timeout")
            break
        remaining = budgets.total_steps - outcome.steps
        if remaining <= 0:
            outcome.failure_tags.append("timeout")
            break
        found = plan(grounded, believed, schemas)
        plans += 1
        outcome.replans = max(plans - 1, 0)
        if found is None or len(found) == 0:
            outcome.failure_tags.append("no-plan")
            break
        step = found[0]
        logger.debug(f"Plan ({len(found)} steps): {found}; executing {step}")
        result = execute_skill(env, policies[step.binding.skill], step.binding,
                               min(budgets.steps_per_skill, remaining), rng)
        outcome.skills_attempted += 1
        outcome.steps += result.steps
        outcome.executed.append(str(step))
        if skill_succeeded(step.binding, env.symbolic_state()):
            outcome.skills_succeeded += 1
        if not result.success:
            logger.warning(f"{step} failed after {result.steps} steps, replanning")

    if not outcome.success:
        for tag in inspect_failures(env):
            if tag not in outcome.failure_tags:
                outcome.failure_tags.append(tag)
    logger.info(f"Activity {'succeeded' if outcome.success else 'failed'} after {outcome.skills_attempted} skills, "
                f"{outcome.steps} steps" + (f", tags {outcome.failure_tags}" if outcome.failure_tags else ""))
    return outcome
