import os

import numpy as np
import pytest

from SkillComposer.Exceptions import (ConfigError, CorruptFileError, DimensionInconsistencyError,
                                      ManifestMismatchError, VersionMismatchError)
from SkillComposer.Kitchen import sample_randomization
from SkillComposer.Kitchen.KitchenObjects import default_ranges, zero_action
from SkillComposer.Skills import SkillModel
from SkillComposer.Store import (append_metrics, checkpoint_from_model, format_success, load_checkpoint,
                                 load_dataset, load_env_config, load_ranges, model_from_checkpoint, read_config,
                                 read_metrics, restore_rng, save_checkpoint, save_dataset, save_env_config,
                                 save_ranges, summarize_activity, wilson_interval)
from SkillComposer.Store.StoreObjects import MetricsRow, TrajectoryRecord


def rollout_record(sim, seed=0, steps=3, episode_id=0) -> TrajectoryRecord:
    env = sim.make(seed)
    record = TrajectoryRecord(episode_id, "open", env.config.GetValue())
    rng = np.random.default_rng(seed)
    for i in range(steps):
        previous = env.observation
        action = rng.uniform(-0.05, 0.05, 8)
        _, events = env.step(action)
        record.append(previous, action, i == steps - 1, events)
    return record


@pytest.fixture
def model(small_hyper):
    return SkillModel.build("open", 20, small_hyper, np.random.default_rng(0))


class TestDataset:
    def test_round_trip(self, tmp_path, sim):
        records = [rollout_record(sim, seed, episode_id=seed) for seed in range(2)]
        path = save_dataset(str(tmp_path / "open.trajectories"), records)
        assert load_dataset(path) == records

    def test_quantization_error_is_bounded(self, tmp_path, sim):
        record = rollout_record(sim, steps=1)
        env = sim.make(0)
        loaded = load_dataset(save_dataset(str(tmp_path / "one.trajectories"), [record]))
        stored = loaded[0].transitions[0].observation
        assert np.max(np.abs(stored.images() - env.observation.images())) <= stored.scales.max() / 510 + 1e-6
        assert np.array_equal(stored.proprio, env.observation.proprio)

    def test_empty(self, tmp_path):
        assert load_dataset(save_dataset(str(tmp_path / "empty.trajectories"), [])) == []

    def test_mixed_resolutions_rejected(self, tmp_path, sim):
        from SkillComposer.Kitchen import SimHandle
        records = [rollout_record(sim), rollout_record(SimHandle(resolution=8), episode_id=1)]
        with pytest.raises(DimensionInconsistencyError):
            save_dataset(str(tmp_path / "mixed.trajectories"), records)

    def test_dataset_is_not_a_checkpoint(self, tmp_path):
        path = save_dataset(str(tmp_path / "empty.trajectories"), [])
        with pytest.raises(CorruptFileError):
            load_checkpoint(path)


class TestCheckpoint:
    def test_round_trip(self, tmp_path, model):
        model.steps = 17
        rng = np.random.default_rng(5)
        path = save_checkpoint(str(tmp_path / "open.ckpt"), checkpoint_from_model(model, rng))
        checkpoint = load_checkpoint(path, model.manifest())
        restored = model_from_checkpoint(checkpoint)
        assert restored.nets() == model.nets()
        assert restored.steps == 17 and restored.bootstrap_gate == model.bootstrap_gate
        assert restore_rng(checkpoint).random() == rng.random()

    def test_no_temporary_file_left(self, tmp_path, model):
        save_checkpoint(str(tmp_path / "open.ckpt"), checkpoint_from_model(model))
        assert os.listdir(tmp_path) == ["open.ckpt"]

    def test_truncated(self, tmp_path, model):
        path = save_checkpoint(str(tmp_path / "open.ckpt"), checkpoint_from_model(model))
        with open(path, "rb") as f:
            data = f.read()
        for size in (10, len(data) - 1):
            with open(path, "wb") as f:
                f.write(data[:size])
            with pytest.raises(CorruptFileError) as info:
                load_checkpoint(path)
            assert info.value.path == path

    def test_flipped_payload_byte(self, tmp_path, model):
        path = save_checkpoint(str(tmp_path / "open.ckpt"), checkpoint_from_model(model))
        data = bytearray(open(path, "rb").read())
        data[-5] ^= 0xFF
        open(path, "wb").write(bytes(data))
        with pytest.raises(CorruptFileError):
            load_checkpoint(path)

    def test_bad_magic(self, tmp_path, model):
        path = save_checkpoint(str(tmp_path / "open.ckpt"), checkpoint_from_model(model))
        data = bytearray(open(path, "rb").read())
        data[0:4] = b"UE4\x00"
        open(path, "wb").write(bytes(data))
        with pytest.raises(CorruptFileError):
            load_checkpoint(path)

    @pytest.mark.parametrize("version", [1, 2, 4])
    def test_other_version(self, tmp_path, model, version):
        path = save_checkpoint(str(tmp_path / "open.ckpt"), checkpoint_from_model(model))
        data = bytearray(open(path, "rb").read())
        data[4:8] = version.to_bytes(4, "little")
        open(path, "wb").write(bytes(data))
        with pytest.raises(VersionMismatchError):
            load_checkpoint(path)

    def test_manifest_mismatch(self, tmp_path, model, small_hyper):
        path = save_checkpoint(str(tmp_path / "open.ckpt"), checkpoint_from_model(model))
        other = SkillModel.build("open", 30, small_hyper, np.random.default_rng(0))
        with pytest.raises(ManifestMismatchError):
            load_checkpoint(path, other.manifest())

    def test_arrays_disagree_with_manifest(self, model):
        checkpoint = checkpoint_from_model(model)
        checkpoint.arrays["q"] = checkpoint.arrays["q"][:-1]
        with pytest.raises(ManifestMismatchError):
            model_from_checkpoint(checkpoint)


class TestMetrics:
    def test_format(self):
        assert format_success(16, 30) == "16/30 (53.3%)"
        assert format_success(0, 0) == "0/0 (n/a)"

    def test_wilson_contains_estimate(self):
        low, high = wilson_interval(16, 30)
        assert low < 16 / 30 < high
        assert 0.0 <= low and high <= 1.0
        assert wilson_interval(0, 0) == (0.0, 1.0)

    def test_append_and_summarize(self, tmp_path):
        path = str(tmp_path / "metrics" / "activity.jsonl")
        outcomes = [(6, True, []), (6, False, ["collision"]), (7, True, []), (7, False, ["timeout", "collision"])]
        for layout, success, tags in outcomes:
            append_metrics(path, MetricsRow("run", "activity", {"layout": layout, "success": success,
                                                                "failure_tags": tags}, timestamp=1.0))
        append_metrics(path, MetricsRow("run", "summary", {"text": "ignored"}, timestamp=2.0))
        rows = read_metrics(path)
        assert len(rows) == 5 and rows[0].timestamp == 1.0
        summary = summarize_activity(rows)
        assert summary["trials"] == 4 and summary["successes"] == 2
        assert summary["per_layout"] == {6: (1, 2), 7: (1, 2)}
        assert summary["failure_tags"] == {"collision": 2, "timeout": 1}
        assert summary["text"] == "2/4 (50.0%)"

    def test_lines_have_sorted_keys(self, tmp_path):
        path = str(tmp_path / "m.jsonl")
        append_metrics(path, MetricsRow("run", "train", {"b": 1, "a": 2}, timestamp=0.0))
        with open(path) as f:
            line = f.readline()
        assert line.index('"metrics"') < line.index('"phase"') < line.index('"run_id"') < line.index('"timestamp"')


class TestConfigFiles:
    def test_env_config_round_trip(self, tmp_path):
        config = sample_randomization(seed=4, resolution=16)
        path = str(tmp_path / "env.yaml")
        save_env_config(path, config)
        assert load_env_config(path) == config

    def test_ranges_round_trip(self, tmp_path):
        ranges = default_ranges()
        path = str(tmp_path / "ranges.yaml")
        save_ranges(path, ranges)
        assert load_ranges(path) == ranges

    def test_unknown_dimension(self, tmp_path):
        path = tmp_path / "ranges.yaml"
        path.write_text("gravity:\n  components:\n    g: [9.0, 10.0, float]\n")
        with pytest.raises(ConfigError):
            load_ranges(str(path))

    def test_top_level_must_be_mapping(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            read_config(str(path))

    def test_empty_file(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("")
        assert read_config(str(path)) == {}

    def test_unknown_env_config_key(self, tmp_path):
        path = tmp_path / "env.yaml"
        path.write_text("seed: 1\nwind: 3\n")
        with pytest.raises(ConfigError):
            load_env_config(str(path))


def test_zero_action_record(sim):
    record = TrajectoryRecord(0, "close", {})
    record.append(sim.make(0).observation, zero_action(), False)
    assert len(record) == 1 and record.shape == (4, 16, 19)
