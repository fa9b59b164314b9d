import numpy as np
import pytest

from SkillComposer.Approx import Net
from SkillComposer.Exceptions import MissingArtifactError, MissingDetectorError
from SkillComposer.Goals.GoalObjects import SymbolicState
from SkillComposer.Kitchen import KitchenEnv, sample_randomization
from SkillComposer.Planner import (FAILURE_TAGS, ActivityBudgets, DetectorGrounder, OracleGrounder,
                                   execute_activity, execute_skill, ground_state, grounding_queries,
                                   inspect_failures)
from SkillComposer.Skills import SKILLS, Binding, OracleSkill, RandomSkill, SkillModel, feature_dim
from conftest import CANONICAL_PLAN, ONE_CUPBOARD


@pytest.fixture
def env():
    return KitchenEnv(sample_randomization(seed=11, resolution=16, layout=0), ONE_CUPBOARD)


@pytest.fixture
def oracle_skills():
    return {skill: OracleSkill() for skill in SKILLS}


def untrained_models(hyper, detector_zero: bool = True):
    rng = np.random.default_rng(0)
    models = {skill: SkillModel.build(skill, feature_dim(2), hyper, rng) for skill in SKILLS}
    if detector_zero:
        for model in models.values():
            model.detector = Net(model.detector.layers)
    return models


class TestActivity:
    def test_oracle_skills_complete_the_activity(self, env, oracle_skills, goal_text):
        outcome = execute_activity(env, goal_text, oracle_skills, grounder=OracleGrounder())
        assert outcome.success
        assert outcome.executed == CANONICAL_PLAN
        assert outcome.skills_attempted == outcome.skills_succeeded == 7
        assert outcome.replans == 6
        assert outcome.failure_tags == []

    def test_goal_holding_at_reset(self, env, oracle_skills):
        outcome = execute_activity(env, "(and)", oracle_skills, grounder=OracleGrounder())
        assert outcome.success and outcome.skills_attempted == 0 and outcome.steps == 0

    def test_missing_skill(self, env, oracle_skills, goal_text):
        del oracle_skills["wipe"]
        with pytest.raises(MissingArtifactError):
            execute_activity(env, goal_text, oracle_skills, grounder=OracleGrounder())

    def test_zero_step_budget_times_out(self, env, oracle_skills, goal_text):
        budgets = ActivityBudgets(max_replans=3, steps_per_skill=0)
        outcome = execute_activity(env, goal_text, oracle_skills, budgets, OracleGrounder())
        assert not outcome.success
        assert "timeout" in outcome.failure_tags
        assert outcome.skills_attempted == 4 and outcome.steps == 0

    def test_total_step_budget(self, env, oracle_skills, goal_text):
        outcome = execute_activity(env, goal_text, oracle_skills, ActivityBudgets(total_steps=3), OracleGrounder())
        assert not outcome.success
        assert outcome.executed == CANONICAL_PLAN[:3]
        assert "timeout" in outcome.failure_tags

    def test_unreachable_goal_reports_no_plan(self, env, oracle_skills):
        outcome = execute_activity(env, "(and (HOLDING o1) (HOLDING cl1))", oracle_skills,
                                   grounder=OracleGrounder())
        assert not outcome.success and "no-plan" in outcome.failure_tags

    def test_untrained_models_respect_budgets(self, env, goal_text, small_hyper):
        budgets = ActivityBudgets(max_replans=2, steps_per_skill=2, total_steps=5)
        outcome = execute_activity(env, goal_text, untrained_models(small_hyper, detector_zero=False), budgets,
                                   rng=np.random.default_rng(0))
        assert outcome.steps <= budgets.total_steps
        assert outcome.skills_attempted == len(outcome.executed)
        assert set(outcome.failure_tags) <= set(FAILURE_TAGS)


class TestSkillExecution:
    def test_zero_steps(self, env):
        result = execute_skill(env, RandomSkill(), Binding("open", ("c1",)), 0)
        assert not result.success and result.steps == 0 and result.events == []

    def test_oracle_skill_single_step(self, env):
        result = execute_skill(env, OracleSkill(), Binding("open", ("c1",)), 5)
        assert result.success and result.steps == 1
        assert ("OPENED", ("c1",)) in env.symbolic_state().facts

    def test_random_skill_stays_within_budget(self, env):
        result = execute_skill(env, RandomSkill(), Binding("open", ("c1",)), 10, np.random.default_rng(3))
        assert result.steps <= 10 and len(result.events) == result.steps
        assert env.state.elapsed == result.steps

    def test_reset_kitchen_has_objects_inside(self, env):
        assert inspect_failures(env) == ["object-left-inside"]


class TestGrounding:
    def test_queries(self):
        queries = grounding_queries(ONE_CUPBOARD.universe())
        assert queries == [("OPENED", "c1"), ("DUSTY", "c1"), ("HOLDING", "o1"), ("HOLDING", "cl1"),
                           ("IN", "o1"), ("IN", "cl1")]

    def test_undecided_detectors_match_reset_state(self, env, small_hyper):
        believed = DetectorGrounder(untrained_models(small_hyper)).ground(env)
        expected = SymbolicState([("DUSTY", ("c1",)), ("IN", ("o1", "c1")), ("IN", ("cl1", "c1"))], env.universe)
        assert believed == expected
        assert believed == env.symbolic_state()

    def test_missing_detector(self, env, small_hyper):
        models = untrained_models(small_hyper)
        del models["wipe"]
        observations = DetectorGrounder(models).observations(env)
        with pytest.raises(MissingDetectorError):
            ground_state(observations, models, env.universe)
