import os
from dataclasses import replace
from typing import Dict, List, Mapping, Optional

import numpy as np

from SkillComposer import Logger
from SkillComposer.Exceptions.Exceptions import ManifestMismatchError, MissingArtifactError
from SkillComposer.Goals import ground_quantifiers, read_goal_file, read_symbolic_state
from SkillComposer.Kitchen import SimHandle
from SkillComposer.Kitchen.KitchenObjects import TRAIN_LAYOUTS, DimensionSpec, default_ranges
from SkillComposer.Planner import DetectorGrounder, OracleGrounder, execute_activity, execute_skill, inspect_failures
from SkillComposer.Planner import plan as make_plan
from SkillComposer.Skills import (SKILLS, LearnedSkill, RandomSkill, ScriptedBaseline, SkillModel, SkillPolicy,
                                  check_skill, feature_dim, skill_succeeded, start_state, train_skill)
from SkillComposer.Store import (append_metrics, checkpoint_from_model, load_checkpoint, load_ranges,
                                 model_from_checkpoint, save_checkpoint, save_dataset, summarize_activity)
from SkillComposer.Store.StoreObjects import MetricsRow
from .Reports import ablation_report, activity_report, skill_report
from .RunConfig import RunConfig, run_config_from_args

logger = Logger.get_logger(__name__)


class RunLog:
    """The metrics file of one command; starts fresh with the echoed config."""

    def __init__(self, run: RunConfig, command: str, directory: Optional[str] = None):
        self.path = os.path.join(directory or run.out_dir, "metrics", f"{command}.jsonl")
        self.run_id = f"{command}-seed{run.seed}"
        self.rows: List[MetricsRow] = []
        if os.path.exists(self.path):
            os.remove(self.path)
        self.write("header", {"command": command, "config": run.GetValue()})

    def write(self, phase: str, metrics: dict) -> MetricsRow:
        row = MetricsRow(self.run_id, phase, metrics)
        append_metrics(self.path, row)
        self.rows.append(row)
        return row


def trial_seeds(seed: int, count: int) -> List[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(count)] if count else []


def run_ranges(run: RunConfig) -> Optional[Dict[str, DimensionSpec]]:
    """The default range table with the run's range file laid over it."""
    if not run.ranges_file:
        return None
    return {**default_ranges(run.num_cameras), **load_ranges(run.ranges_file)}


def train_sim(run: RunConfig) -> SimHandle:
    return SimHandle(run_ranges(run), run.rand_scale, run.photorealism, run.resolution, run.num_cameras,
                     TRAIN_LAYOUTS)


def eval_sim(run: RunConfig) -> SimHandle:
    return SimHandle(run_ranges(run), run.rand_scale, run.photorealism, run.resolution, run.num_cameras,
                     run.layouts)


def checkpoint_path(directory: str, skill: str) -> str:
    return os.path.join(directory, f"{skill}.ckpt")


def load_skill_model(run: RunConfig, skill: str, directory: Optional[str] = None) -> SkillModel:
    path = checkpoint_path(directory or run.checkpoints, skill)
    if not os.path.exists(path):
        raise MissingArtifactError(f"No checkpoint for skill {skill!r} at {path}; run train-skill first")
    model = model_from_checkpoint(load_checkpoint(path))
    expected = feature_dim(run.num_cameras)
    if model.feature_dim != expected:
        raise ManifestMismatchError(f"{path}: model reads {model.feature_dim} features, "
                                    f"{run.num_cameras} cameras give {expected}")
    return model


def _train_one(run: RunConfig, skill: str, directory: str, log: RunLog) -> str:
    hyper = run.skills
    path = checkpoint_path(directory, skill)

    def progress(episode: int, losses: Dict[str, float], model: SkillModel):
        log.write("train", {"skill": skill, "episode": episode, **losses})
        if episode % run.checkpoint_every == 0 and episode < hyper.episodes:
            save_checkpoint(path, checkpoint_from_model(model))

    model, examples, dataset = train_skill(train_sim(run), skill, hyper, seed=run.seed, progress=progress)
    save_checkpoint(path, checkpoint_from_model(model))
    save_dataset(os.path.join(os.path.dirname(directory), "datasets", f"{skill}.trajectories"),
                 list(dataset.records))
    positives, negatives = examples.counts
    log.write("trained", {"skill": skill, "episodes": dataset.episodes, "transitions": dataset.transitions,
                          "q_steps": model.steps, "positives": positives, "negatives": negatives,
                          "checkpoint": path})
    return path


def cmd_train_skill(args) -> str:
    run = run_config_from_args(args)
    skill = check_skill(args.skill)
    log = RunLog(run, f"train-{skill}")
    path = _train_one(run, skill, run.checkpoints, log)
    logger.info(f"Trained {skill}; checkpoint {path}, metrics {log.path}")
    return path


def _skill_policy(run: RunConfig, skill: str) -> SkillPolicy:
    if run.scripted:
        return ScriptedBaseline()
    if run.random:
        return RandomSkill()
    return LearnedSkill(load_skill_model(run, skill), run.skills)


def _policy_name(run: RunConfig) -> str:
    return "scripted" if run.scripted else "random" if run.random else "learned"


def evaluate_skill(run: RunConfig, skill: str, log: RunLog) -> Mapping:
    """Runs the skill from `eval_configs` held-out start states."""
    sim = eval_sim(run)
    learned = None if (run.scripted or run.random) else _skill_policy(run, skill)
    for index, seed in enumerate(trial_seeds(run.seed, run.eval_configs)):
        layout = run.layouts[index % len(run.layouts)]
        env = sim.make(seed, layout)
        rng = np.random.default_rng(seed)
        binding = start_state(skill, env, rng, run.skills.standoff_fraction)
        policy = learned or _skill_policy(run, skill)
        result = execute_skill(env, policy, binding, run.skills.horizon, rng)
        success = skill_succeeded(binding, env.symbolic_state())
        tags = [] if success else inspect_failures(env) + ([] if result.success else ["timeout"])
        log.write("skill", {"skill": skill, "binding": str(binding), "layout": layout, "success": success,
                            "steps": result.steps, "failure_tags": tags})
    return summarize_activity(log.rows, phase="skill")


def cmd_eval_skill(args) -> str:
    run = run_config_from_args(args)
    skill = check_skill(args.skill)
    log = RunLog(run, f"eval-{skill}-{_policy_name(run)}")
    summary = evaluate_skill(run, skill, log)
    log.write("summary", {key: value for key, value in summary.items() if key != "per_layout"})
    return skill_report(skill, _policy_name(run), summary)


def _activity_skills(run: RunConfig, models: Mapping[str, SkillModel]) -> Dict[str, SkillPolicy]:
    if run.scripted:
        baseline = ScriptedBaseline()  # one belief kitchen per trial, shared by the five skills
        return {skill: baseline for skill in SKILLS}
    if run.random:
        return {skill: RandomSkill() for skill in SKILLS}
    return {skill: LearnedSkill(models[skill], run.skills) for skill in SKILLS}


def run_activity_trials(run: RunConfig, log: RunLog, checkpoints: Optional[str] = None,
                        phase: str = "activity") -> Mapping:
    """`trials` activity runs on each layout; returns the per-layout summary."""
    goal = read_goal_file(run.goal_file)
    models: Dict[str, SkillModel] = {}
    if not (run.scripted or run.random):
        models = {skill: load_skill_model(run, skill, checkpoints) for skill in SKILLS}
    sim = eval_sim(run)
    seeds = trial_seeds(run.seed, run.trials * len(run.layouts))
    index = 0
    for layout in run.layouts:
        for trial in range(run.trials):
            seed = seeds[index]
            index += 1
            env = sim.make(seed, layout)
            if run.scripted or run.random or run.oracle_grounding:
                grounder = OracleGrounder()
            else:
                grounder = DetectorGrounder(models)
            outcome = execute_activity(env, goal, _activity_skills(run, models), run.budgets, grounder,
                                       np.random.default_rng(seed))
            log.write(phase, {"layout": layout, "trial": trial, **outcome.GetValue()})
            logger.info(f"Kitchen {layout} trial {trial + 1}/{run.trials}: "
                        f"{'success' if outcome.success else 'failure'}")
    return summarize_activity(log.rows, phase=phase)


def cmd_run_activity(args) -> str:
    run = run_config_from_args(args)
    log = RunLog(run, f"activity-{_policy_name(run)}")
    summary = run_activity_trials(run, log)
    log.write("summary", {key: value for key, value in summary.items() if key != "per_layout"})
    return activity_report(f"Activity success ({_policy_name(run)} skills)", summary)


def ablation_conditions(run: RunConfig) -> Dict[str, RunConfig]:
    """Training configs per condition; evaluation always uses `run` itself."""
    return {
        "baseline": run,
        "no_photorealism": replace(run, photorealism=False),
        "half_randomization": replace(run, rand_scale=0.5),
    }


def cmd_ablate(args) -> str:
    run = run_config_from_args(args)
    log = RunLog(run, "ablate")
    summaries = {}
    for condition, train_run in ablation_conditions(run).items():
        directory = os.path.join(run.out_dir, "ablate", condition, "checkpoints")
        logger.info(f"Ablation {condition}: training {len(SKILLS)} skills "
                    f"(photorealism {'on' if train_run.photorealism else 'off'}, scale {train_run.rand_scale})")
        for skill in SKILLS:
            _train_one(train_run, skill, directory, log)
        summaries[condition] = run_activity_trials(run, log, directory, phase=f"activity:{condition}")
    base = summaries["baseline"]["rate"]
    log.write("summary", {condition: {"successes": s["successes"], "trials": s["trials"],
                                      "delta": s["rate"] - base}
                          for condition, s in summaries.items()})
    return ablation_report(summaries)


def cmd_plan(args) -> str:
    """Plans from a goal file and a symbolic state file, one grounded skill per line."""
    goal = read_goal_file(args.goal)
    with open(args.state, "r", encoding="utf-8") as f:
        state, containment = read_symbolic_state(f.read())
    found = make_plan(ground_quantifiers(goal, state.universe, containment), state)
    if found is None:
        return None
    return "\n".join(found.lines())
