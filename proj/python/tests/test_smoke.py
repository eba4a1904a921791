import numpy as np
import pytest

import logosym


def test_feature_vector_of_synthetic_logo():
    images, labels, names = logosym.generate_synthetic(2, seed=4, size=64)
    assert names == ["both", "symbol", "text"]
    assert labels == [0, 0, 1, 1, 2, 2]
    assert images[0].shape == (64, 64, 3)
    f = logosym.extract(images[0])
    assert f.shape == (60,)
    assert np.all(np.isfinite(f))
    # Percentages of each channel over the eight blocks sum to 100.
    for ch in range(3):
        assert f[[b * 6 + ch * 2 + 1 for b in range(8)]].sum() == pytest.approx(100.0)


def test_gray_and_rgba_inputs():
    gray = np.full((30, 40), 128, dtype=np.uint8)
    rgb = np.repeat(gray[:, :, None], 3, axis=2)
    rgba = np.dstack([rgb, np.full((30, 40), 255, dtype=np.uint8)])
    a = logosym.extract(gray)
    np.testing.assert_array_equal(a, logosym.extract(rgb))
    np.testing.assert_array_equal(a, logosym.extract(rgba))
    assert a[0] == pytest.approx(128.0)
    assert a[1] == pytest.approx(12.5)


def test_kmeans_two_groups():
    pts = np.array([[0.0], [0.1], [10.0], [10.1]])
    r = logosym.kmeans(pts, 2, seed=1)
    assert r["sse"] == pytest.approx(0.01)
    assert sorted(r["centroids"][:, 0]) == pytest.approx([0.05, 10.05])
    assert all(b <= a + 1e-12 for a, b in zip(r["sse_history"], r["sse_history"][1:]))


def test_reference_and_classify(tmp_path):
    rng = np.random.default_rng(0)
    train = np.vstack([rng.normal(c * 3.0, 0.5, size=(20, 4)) for c in range(3)])
    labels = [c for c in range(3) for _ in range(20)]
    ref = logosym.build_reference(train, labels, 3, k=2, seed=1, class_names=["a", "b", "c"])
    assert ref.size == 6
    assert ref.intervals.shape == (6, 4, 2)
    assert ref.class_labels == [0, 0, 1, 1, 2, 2]
    out = logosym.classify(np.full(4, 6.0), ref)
    assert out["predicted_class"] == 2
    assert len(out["acceptance_counts"]) == 6
    assert logosym.knn1_classify(np.full(4, 6.0), train, labels) == 2

    ref.save(tmp_path / "m.csv")
    back = logosym.ReferenceMatrix.load(tmp_path / "m.csv")
    np.testing.assert_array_equal(back.intervals, ref.intervals)

    with pytest.raises(logosym.InfeasibleError):
        logosym.build_reference(train, labels, 3, k=25)


def test_normalizer():
    n = logosym.Normalizer.fit(np.array([[0.0, 5.0], [10.0, 5.0]]))
    np.testing.assert_allclose(n.apply(np.array([5.0, 5.0])), [0.5, 0.0])
    np.testing.assert_allclose(n.apply(np.array([[20.0, 1.0]])), [[2.0, 0.0]])


def test_metrics_on_published_matrix():
    cm = [[818, 86, 47], [154, 194, 25], [93, 24, 71]]
    m = logosym.metrics(cm, class_sizes=[951, 419, 188])
    assert m["accuracy"] == pytest.approx(69.51, abs=0.01)
    assert m["class_recall"][0] == pytest.approx(86.02, abs=0.01)
    assert m["class_precision"][0] == pytest.approx(76.81, abs=0.01)
    assert logosym.f_measure(66.89, 57.27) == pytest.approx(61.71, abs=0.01)


def test_compare_models_report():
    rng = np.random.default_rng(1)
    feats = np.vstack([rng.normal(c * 2.0, 1.0, size=(20, 5)) for c in range(3)])
    labels = [c for c in range(3) for _ in range(20)]
    cfg = "train_fractions = 0.5\nk_values = 2, 3\ntrials = 2\n"
    rep = logosym.compare_models(cfg, feats, labels, ["a", "b", "c"])
    assert rep == logosym.compare_models(cfg, feats, labels, ["a", "b", "c"])
    assert {c["model"] for c in rep["cells"]} == {"proposed", "model1", "model2"}
    with pytest.raises(logosym.ConfigError):
        logosym.run_experiment("nope = 1", feats, labels, ["a", "b", "c"])
