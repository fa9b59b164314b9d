"""Held-out behaviour of skills trained with the default hyperparameters.

Every test here trains at full budget and is deselected unless ``-m slow``.
"""
import os
from collections import defaultdict

import numpy as np
import pytest

from SkillComposer.Cli import main
from SkillComposer.Kitchen import SimHandle, hold_item, place_item, set_dust, set_open
from SkillComposer.Kitchen.KitchenObjects import HELD_OUT_LAYOUTS
from SkillComposer.Planner import DetectorGrounder, ground_state
from SkillComposer.Skills import SKILLS
from SkillComposer.Store import load_checkpoint, model_from_checkpoint, read_metrics, write_config
from conftest import CLEANING_GOAL

pytestmark = pytest.mark.slow


def summary_of(out_dir: str, command: str) -> dict:
    rows = read_metrics(os.path.join(out_dir, "metrics", f"{command}.jsonl"))
    assert rows[-1].phase == "summary"
    return rows[-1].metrics


@pytest.fixture(scope="module")
def trained(tmp_path_factory):
    """Output directory and run config with all five skills trained."""
    out_dir = str(tmp_path_factory.mktemp("trained"))
    config = os.path.join(out_dir, "run.yaml")
    write_config(config, {"out_dir": out_dir, "goal_file": CLEANING_GOAL})
    for skill in SKILLS:
        assert main(["train-skill", "--config", config, "--skill", skill]) == 0
    return out_dir, config


@pytest.mark.parametrize("skill", SKILLS)
def test_skill_success_on_held_out_kitchens(trained, skill):
    out_dir, config = trained
    assert main(["eval-skill", "--config", config, "--skill", skill]) == 0
    learned = summary_of(out_dir, f"eval-{skill}-learned")
    assert learned["trials"] == 50
    assert learned["rate"] >= 0.6

    assert main(["eval-skill", "--config", config, "--skill", skill, "--random"]) == 0
    random = summary_of(out_dir, f"eval-{skill}-random")
    assert random["trials"] == 50
    assert random["rate"] <= 0.1


def varied_kitchen(sim: SimHandle, seed: int):
    """A held-out kitchen teleported into a random mix of opened, wiped, held and binned states."""
    rng = np.random.default_rng(seed)
    env = sim.make(seed)
    dyn = env.config.dynamics
    universe = env.universe
    state = env.state
    for container in list(universe.get("cupboards", ())) + list(universe.get("drawers", ())):
        opened = rng.random() < 0.5
        state = set_open(state, container, rng.uniform(0.85, 1.0) if opened else rng.uniform(0.0, 0.3), dyn)
    for cupboard in universe.get("cupboards", ()):
        if rng.random() < 0.5:
            state = set_dust(state, cupboard, rng.uniform(0.0, 0.1))
    items = list(universe.get("objects", ())) + list(universe.get("cloths", ()))
    items = [str(item) for item in rng.permutation(items)]
    if items and rng.random() < 0.5:
        state = place_item(state, items.pop(), state.scene.bucket, dyn)
    if items and rng.random() < 0.5:
        state = hold_item(state, items.pop())
    env.set_state(state)
    return env


def test_detector_grounding_agrees_with_oracle(trained):
    out_dir, _ = trained
    models = {skill: model_from_checkpoint(load_checkpoint(os.path.join(out_dir, "checkpoints", f"{skill}.ckpt")))
              for skill in SKILLS}
    sim = SimHandle(layouts=HELD_OUT_LAYOUTS)
    grounder = DetectorGrounder(models)
    agree, seen = defaultdict(int), defaultdict(int)
    for seed in range(100_000, 100_200):
        env = varied_kitchen(sim, seed)
        observations = grounder.observations(env)
        believed = ground_state(observations, models, env.universe)
        oracle = env.symbolic_state()
        for predicate, entity in observations:
            atoms = [atom for atom in believed.facts | believed.negatives if atom[0] == predicate and
                     atom[1][0] == entity]
            assert len(atoms) == 1
            seen[predicate] += 1
            agree[predicate] += (atoms[0] in believed.facts) == (atoms[0] in oracle.facts)
    for predicate in ("OPENED", "DUSTY", "HOLDING", "IN"):
        assert seen[predicate] >= 200
        assert agree[predicate] / seen[predicate] >= 0.9, predicate


def test_learned_skills_beat_both_baselines(trained):
    out_dir, config = trained
    rates = {}
    for policy, flags in (("learned", []), ("scripted", ["--scripted"]), ("random", ["--random"])):
        assert main(["run-activity", "--config", config] + flags) == 0
        summary = summary_of(out_dir, f"activity-{policy}")
        assert summary["trials"] == 30
        rates[policy] = summary["rate"]
    assert rates["learned"] > rates["scripted"]
    assert rates["learned"] > rates["random"]


def test_ablations_reduce_success(tmp_path):
    reductions = defaultdict(int)
    seeds = (0, 1, 2)
    for seed in seeds:
        out_dir = str(tmp_path / f"seed{seed}")
        assert main(["ablate", "--seed", str(seed), "--out", out_dir, "--goal", CLEANING_GOAL]) == 0
        summary = summary_of(out_dir, "ablate")
        assert summary["baseline"]["delta"] == 0.0
        for condition in ("no_photorealism", "half_randomization"):
            reductions[condition] += summary[condition]["delta"] < 0.0
    assert reductions == {"no_photorealism": len(seeds), "half_randomization": len(seeds)}
