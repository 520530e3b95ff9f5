"""Persistent homology pipelines for point clouds and binary masks.

Diagrams are (n, 3) float arrays of (dim, birth, death); infinite deaths are inf.
Masks are square uint8 arrays with row 0 at the top.
"""

import json

from . import _core
from ._core import (
    concavity_features,
    convexity_measure,
    dtm,
    euclidean_distance_matrix,
    farthest_point_indices,
    gen_convexity_dataset,
    gen_holes_dataset,
    lifespans_topk,
    persistence_image,
    persistence_landscape,
    rasterize,
    rips_persistence,
    sample_constant_curvature_disk,
    tubular_persistence,
)


def run_holes(data_dir, seed=0, jobs=1):
    return json.loads(_core.run_holes(str(data_dir), seed, jobs))


def run_convexity(seed=0, points=1000, jobs=1):
    return json.loads(_core.run_convexity(seed, points, jobs))


def run_convexity_measure(count=200, seed=0):
    return json.loads(_core.run_convexity_measure(count, seed))


__all__ = [
    "concavity_features",
    "convexity_measure",
    "dtm",
    "euclidean_distance_matrix",
    "farthest_point_indices",
    "gen_convexity_dataset",
    "gen_holes_dataset",
    "lifespans_topk",
    "persistence_image",
    "persistence_landscape",
    "rasterize",
    "rips_persistence",
    "run_convexity",
    "run_convexity_measure",
    "run_holes",
    "sample_constant_curvature_disk",
    "tubular_persistence",
]
