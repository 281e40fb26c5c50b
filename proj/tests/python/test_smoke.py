import json
import math

import numpy as np
import pytest

import tsrnn


@pytest.fixture(scope="module")
def dataset():
    return tsrnn.generate_synthetic(
        class_count=3, joint_count=10, samples_per_class=4, min_length=8, max_length=12, seed=1
    )


def test_generate_and_validate(dataset):
    assert len(dataset.sequences) == 12
    assert dataset.class_count == 3
    dataset.validate()
    seq = dataset.sequences[0]
    assert seq.frames.shape == (seq.valid_length, seq.joint_count * 3)


def test_preprocess_round_trip(dataset):
    seq = dataset.sequences[0]
    centered = tsrnn.normalize_center(seq, dataset.graph)
    again = tsrnn.normalize_center(centered, dataset.graph)
    assert np.allclose(centered.frames, again.frames)
    resampled = tsrnn.resample_to_length(centered, 6)
    assert resampled.frames.shape[0] == 6


def test_orders_and_spatial_input(dataset):
    g = dataset.graph
    chain = tsrnn.chain_order(g)
    trav = tsrnn.traversal_order(g)
    assert sorted(chain.order) == list(range(g.joint_count))
    assert len(trav.order) == 2 * g.joint_count - 1
    assert trav.order[0] == g.root_joint == trav.order[-1]

    seq = dataset.sequences[0]
    steps = tsrnn.build_spatial_input(seq, trav, 4, 5)
    assert steps.shape == (len(trav.order), 4 * seq.dims)

    centers = tsrnn.spatial_centers(40, 10, mode="eval-grid")
    assert centers == [5, 15, 25, 35]


def test_rotation_matrices():
    r = tsrnn.compose_rotation(0.3, -0.2, 0.7)
    assert np.allclose(r @ r.T, np.eye(3), atol=1e-12)
    assert math.isclose(np.linalg.det(r), 1.0, abs_tol=1e-12)
    oracle = tsrnn.rot_z(0.7) @ tsrnn.rot_y(-0.2) @ tsrnn.rot_x(0.3)
    assert np.allclose(r, oracle, atol=1e-14)


def test_apply_transform_isometry(dataset):
    seq = dataset.sequences[1]
    out = tsrnn.apply_transform(seq, tsrnn.sample_transform(rotation=True, seed=3))
    a = seq.frames[0].reshape(-1, 3)
    b = out.frames[0].reshape(-1, 3)
    da = np.linalg.norm(a[0] - a[5])
    db = np.linalg.norm(b[0] - b[5])
    assert math.isclose(da, db, rel_tol=1e-10)


def test_forward_and_fusion(dataset):
    spec = tsrnn.NetworkSpec()
    spec.variant = "stacked"
    spec.layer_widths = [8]
    spec.input_dim = dataset.graph.joint_count * 3
    spec.class_count = dataset.class_count
    params = tsrnn.init_params(spec, 7)
    assert tsrnn.parameter_count(spec) > 0

    seq = dataset.sequences[0]
    probs = tsrnn.forward(spec, params, seq.frames, seq.valid_length)
    assert probs.shape == (3,)
    assert math.isclose(probs.sum(), 1.0, abs_tol=1e-12)

    fused = tsrnn.fuse(probs, probs, 0.9)
    assert np.allclose(fused, probs)
    assert tsrnn.predict(probs) == int(np.argmax(probs))
    assert tsrnn.cross_entropy(probs, 0) == pytest.approx(-math.log(probs[0]))


def test_evaluate_and_errors():
    report = tsrnn.evaluate([0, 1, 1], [0, 1, 0], 2)
    assert report.accuracy == pytest.approx(2 / 3)
    with pytest.raises(ValueError):
        tsrnn.evaluate([0], [0, 1], 2)
    with pytest.raises(ValueError):
        tsrnn.scaling(0.0, 1.0, 1.0)


def test_dataset_and_checkpoint_files(tmp_path, dataset):
    path = str(tmp_path / "ds.jsonl")
    tsrnn.save_dataset(dataset, path)
    loaded = tsrnn.load_dataset(path)
    assert len(loaded.sequences) == len(dataset.sequences)

    with pytest.raises(RuntimeError):
        tsrnn.load_dataset(str(tmp_path / "missing.jsonl"))


def test_train_and_eval(tmp_path, dataset):
    ds_path = str(tmp_path / "ds.jsonl")
    tsrnn.save_dataset(dataset, ds_path)
    cfg = {
        "dataset": {"path": ds_path},
        "fixed_length": 10,
        "temporal": {"variant": "stacked", "widths": [6]},
        "spatial": {"widths": [6]},
        "fusion": {"lambda": 0.9, "tau": 3},
        "train": {"epochs": 2, "batch_size": 6},
        "split": {"mode": "by-sequence", "folds": 2},
        "seed": 9,
    }
    cfg_path = tmp_path / "run.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tsrnn.train_and_eval(str(cfg_path))
    for key in ("fused_accuracy", "temporal_accuracy", "spatial_accuracy", "macro_f1"):
        assert 0.0 <= out[key] <= 1.0
