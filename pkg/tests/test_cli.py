import argparse
import os

import pytest

from SkillComposer.Cli import RunConfig, main, run_config_from_args
from SkillComposer.Cli.Commands import ablation_conditions, trial_seeds
from SkillComposer.Exceptions import ConfigError
from SkillComposer.Store import load_checkpoint, load_dataset, read_metrics, write_config
from conftest import CANONICAL_PLAN, CLEANING_GOAL

ONE_CUPBOARD_STATE = """
(universe (cupboards c1) (drawers) (buckets b1) (objects o1) (cloths cl1))
(containment (o1 c1) (cl1 c1))
(facts (DUSTY c1) (IN o1 c1) (IN cl1 c1))
"""


def write_state(tmp_path, text=ONE_CUPBOARD_STATE):
    path = tmp_path / "kitchen.state"
    path.write_text(text)
    return str(path)


def args(**kwargs):
    return argparse.Namespace(**kwargs)


class TestPlanCommand:
    def test_prints_plan(self, tmp_path, capsys):
        assert main(["plan", "--goal", CLEANING_GOAL, "--state", write_state(tmp_path)]) == 0
        assert capsys.readouterr().out.split() == CANONICAL_PLAN

    def test_goal_already_holds(self, tmp_path, capsys):
        state = write_state(tmp_path, "(universe (cupboards c1) (drawers) (buckets b1) (objects) (cloths cl1))\n"
                                      "(containment)\n(facts)\n")
        assert main(["plan", "--goal", CLEANING_GOAL, "--state", state]) == 0
        assert capsys.readouterr().out == ""

    def test_no_plan(self, tmp_path, capsys):
        goal = tmp_path / "hold_both.goal"
        goal.write_text("(and (HOLDING o1) (HOLDING cl1))")
        assert main(["plan", "--goal", str(goal), "--state", write_state(tmp_path)]) == 1
        assert "no plan" in capsys.readouterr().out

    def test_bad_goal(self, tmp_path):
        goal = tmp_path / "bad.goal"
        goal.write_text("(and (OPENED c1)")
        assert main(["plan", "--goal", str(goal), "--state", write_state(tmp_path)]) == 2

    def test_missing_state_file(self, tmp_path):
        assert main(["plan", "--goal", CLEANING_GOAL, "--state", str(tmp_path / "nowhere.state")]) == 3

    def test_missing_arguments(self):
        assert main(["plan", "--goal", CLEANING_GOAL]) == 2


class TestRunConfig:
    def test_defaults(self):
        run = run_config_from_args(args())
        assert run == RunConfig().validate()
        assert run.checkpoints == "runs/checkpoints"

    def test_flags_override_file(self, tmp_path):
        path = str(tmp_path / "run.yaml")
        write_config(path, {"seed": 4, "trials": 3, "skills": {"episodes": 7}})
        run = run_config_from_args(args(config=path, seed=9, photorealism="off", layouts=[6], episodes=None,
                                        bootstrap_gate="complement"))
        assert (run.seed, run.trials, run.photorealism, run.layouts) == (9, 3, False, (6,))
        assert run.skills.episodes == 7 and run.skills.bootstrap_gate == "complement"

    def test_unknown_key(self, tmp_path):
        path = str(tmp_path / "run.yaml")
        write_config(path, {"seeds": 4})
        with pytest.raises(ConfigError):
            run_config_from_args(args(config=path))

    @pytest.mark.parametrize("flags", [{"layouts": [99]}, {"rand_scale": 0.0}, {"resolution": 12},
                                       {"scripted": True, "random": True}])
    def test_invalid(self, flags):
        with pytest.raises(ConfigError):
            run_config_from_args(args(**flags))

    def test_round_trip(self):
        run = RunConfig(seed=3, layouts=(7, 8))
        assert RunConfig.from_dict(run.GetValue()) == run

    def test_ablation_conditions(self):
        conditions = ablation_conditions(RunConfig())
        assert list(conditions) == ["baseline", "no_photorealism", "half_randomization"]
        assert not conditions["no_photorealism"].photorealism
        assert conditions["half_randomization"].rand_scale == 0.5

    def test_trial_seeds(self):
        assert trial_seeds(0, 4) == trial_seeds(0, 4) and len(set(trial_seeds(0, 4))) == 4
        assert trial_seeds(0, 0) == []


class TestExperimentCommands:
    def test_unknown_skill(self, tmp_path):
        assert main(["eval-skill", "--skill", "juggle", "--scripted", "--out", str(tmp_path)]) == 2

    def test_missing_checkpoint(self, tmp_path):
        assert main(["eval-skill", "--skill", "open", "--configs", "1", "--out", str(tmp_path)]) == 4

    def test_scripted_eval_with_no_configs(self, tmp_path, capsys):
        assert main(["eval-skill", "--skill", "open", "--scripted", "--configs", "0", "--out", str(tmp_path)]) == 0
        assert "No trials." in capsys.readouterr().out
        rows = read_metrics(os.path.join(str(tmp_path), "metrics", "eval-open-scripted.jsonl"))
        assert [row.phase for row in rows] == ["header", "summary"]
        assert rows[0].metrics["config"]["eval_configs"] == 0

    def test_bad_ranges(self, tmp_path):
        ranges = tmp_path / "ranges.yaml"
        ranges.write_text("gravity:\n  components:\n    g: [9.0, 10.0, float]\n")
        assert main(["eval-skill", "--skill", "open", "--scripted", "--configs", "0", "--out", str(tmp_path),
                     "--ranges", str(ranges)]) == 2

    def test_metrics_replaced_on_rerun(self, tmp_path):
        command = ["eval-skill", "--skill", "close", "--scripted", "--configs", "0", "--out", str(tmp_path)]
        main(command)
        main(command)
        rows = read_metrics(os.path.join(str(tmp_path), "metrics", "eval-close-scripted.jsonl"))
        assert len(rows) == 2

    def test_train_then_evaluate(self, tmp_path, small_hyper, capsys):
        config = str(tmp_path / "run.yaml")
        write_config(config, {"out_dir": str(tmp_path), "resolution": 16, "skills": small_hyper.GetValue()})
        assert main(["train-skill", "--config", config, "--skill", "close"]) == 0
        checkpoint = os.path.join(str(tmp_path), "checkpoints", "close.ckpt")
        assert load_checkpoint(checkpoint).skill == "close"
        assert len(load_dataset(os.path.join(str(tmp_path), "datasets", "close.trajectories"))) <= 2
        rows = read_metrics(os.path.join(str(tmp_path), "metrics", "train-close.jsonl"))
        assert rows[0].phase == "header" and rows[-1].phase == "trained"
        capsys.readouterr()

        assert main(["eval-skill", "--config", config, "--skill", "close", "--configs", "2",
                     "--layouts", "6"]) == 0
        report = capsys.readouterr().out
        assert report.startswith("Skill close (learned)") and "/2 (" in report


def small_run_config(tmp_path, hyper) -> str:
    path = str(tmp_path / "run.yaml")
    write_config(path, {"out_dir": str(tmp_path), "resolution": 16, "layouts": [6], "trials": 1,
                        "skills": hyper.GetValue(),
                        "budgets": {"max_replans": 3, "steps_per_skill": 10, "total_steps": 60}})
    return path


class TestActivityCommands:
    def test_scripted_activity(self, tmp_path, small_hyper, capsys):
        assert main(["run-activity", "--config", small_run_config(tmp_path, small_hyper), "--scripted"]) == 0
        report = capsys.readouterr().out
        assert report.startswith("Activity success (scripted skills)")
        assert "Kitchen 6: " in report and "Total: " in report
        rows = read_metrics(os.path.join(str(tmp_path), "metrics", "activity-scripted.jsonl"))
        assert [row.phase for row in rows] == ["header", "activity", "summary"]
        assert rows[1].metrics["steps"] <= 60

    def test_learned_activity_needs_checkpoints(self, tmp_path, small_hyper):
        assert main(["run-activity", "--config", small_run_config(tmp_path, small_hyper)]) == 4

    @pytest.mark.slow
    def test_ablation(self, tmp_path, small_hyper, capsys):
        assert main(["ablate", "--config", small_run_config(tmp_path, small_hyper)]) == 0
        report = capsys.readouterr().out
        assert "no_photorealism" in report and "half_randomization" in report
        for condition in ("baseline", "no_photorealism", "half_randomization"):
            assert os.path.exists(os.path.join(str(tmp_path), "ablate", condition, "checkpoints", "wipe.ckpt"))
