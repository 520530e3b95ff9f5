import math

import numpy as np
import pytest

import tdalab


def circle(n):
    a = 2 * np.pi * np.arange(n) / n
    return np.column_stack([np.cos(a), np.sin(a)])


def test_two_points():
    d = tdalab.euclidean_distance_matrix(np.array([[0.0, 0.0], [2.0, 0.0]]))
    assert d.shape == (2, 2)
    pd = tdalab.rips_persistence(d)
    assert pd.shape == (2, 3)
    assert pd[0].tolist() == [0.0, 0.0, 2.0]
    assert pd[1, 0] == 0 and math.isinf(pd[1, 2])


def test_unit_square_loop():
    d = tdalab.euclidean_distance_matrix(np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float))
    pd = tdalab.rips_persistence(d)
    loops = pd[pd[:, 0] == 1]
    assert loops.shape == (1, 3)
    assert loops[0, 1] == 1.0
    assert loops[0, 2] == pytest.approx(math.sqrt(2), abs=1e-15)


def test_circle_has_one_long_loop():
    pd = tdalab.rips_persistence(tdalab.euclidean_distance_matrix(circle(60)))
    h1 = pd[pd[:, 0] == 1]
    long = h1[h1[:, 2] - h1[:, 1] > 0.5]
    assert len(long) == 1
    assert long[0, 2] == pytest.approx(math.sqrt(3), rel=0.1)


def test_weighted_rips_and_dtm():
    pts = circle(40)
    d = tdalab.euclidean_distance_matrix(pts)
    w = tdalab.dtm(d, 0.1)
    assert w.shape == (40,)
    assert np.all(w > 0)
    pd = tdalab.rips_persistence(d, weights=w.tolist())
    assert pd[:, 1].min() >= w.min() - 1e-12


def test_farthest_point_indices_distinct():
    idx = tdalab.farthest_point_indices(circle(50), 10, seed=3)
    assert len(idx) == 10 and len(set(idx)) == 10


def test_full_square_is_convex():
    mask = np.ones((12, 12), dtype=np.uint8)
    assert tdalab.convexity_measure(mask) == pytest.approx(1.0)
    assert max(tdalab.concavity_features(mask)) == 0.0
    pd = tdalab.tubular_persistence(mask, "bottom")
    assert (pd[:, 0] == 0).sum() == 1


def test_u_mask_has_concavity():
    mask = np.ones((9, 9), dtype=np.uint8)
    mask[0:6, 3:6] = 0  # notch open at the top
    assert max(tdalab.concavity_features(mask)) > 0
    assert tdalab.convexity_measure(mask) < 1.0
    with pytest.raises(ValueError):
        tdalab.tubular_persistence(mask, "sideways")


def test_rasterize_shape_and_orientation():
    m = tdalab.rasterize(np.array([[0, 0], [1, 0], [0, 1], [1, 1]], dtype=float), 4)
    assert m.shape == (4, 4) and m.dtype == np.uint8
    assert m[0, 0] == 1 and m[3, 3] == 1


def test_signatures():
    pd = np.array([[1, 0.0, 2.0], [1, 0.5, 1.0], [0, 0.0, math.inf]])
    assert tdalab.lifespans_topk(pd, 1, 3) == [2.0, 0.5, 0.0]
    img = tdalab.persistence_image(pd, 1, resolution=8, sigma=0.2)
    assert len(img) == 64 and all(math.isfinite(v) for v in img)
    land = tdalab.persistence_landscape(pd, 1, resolution=3, levels=2)
    assert len(land) == 6
    assert land[1] == pytest.approx(1.0)


def test_curvature_sampler_bounds():
    c = tdalab.sample_constant_curvature_disk(1.5, 500, seed=2)
    assert c.shape == (500, 2)
    assert c[:, 0].min() >= 0 and c[:, 0].max() <= 1
    with pytest.raises(ValueError):
        tdalab.sample_constant_curvature_disk(3.0, 10)


def test_datasets_deterministic():
    a = tdalab.gen_holes_dataset(1, 50, seed=9)
    b = tdalab.gen_holes_dataset(1, 50, seed=9)
    assert a.keys() == b.keys()
    assert len(a["labels"]) == 20
    assert all(np.array_equal(x, y) for x, y in zip(a["items"], b["items"]))


def test_convexity_measure_report():
    r = tdalab.run_convexity_measure(count=30, seed=1)
    assert r["experiment"]
    names = {reg["name"] for reg in r["regimes"]}
    assert {"test", "feature-sum"} <= names
