"""Random Forest ensemble: bootstrap bagging plus per-node feature subsets.

Every source of randomness is the PCG64 generator. Tree i draws from
``SeedSequence(entropy=master_seed, spawn_key=(i,))``, so parallel and
serial training produce identical forests and golden tests are stable
across platforms.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import cart
from .signal_model import N_FEATURES, Dataset

MODEL_FORMAT = "gaitid-forest/1"

DEFAULT_TREE_COUNT = 64
DEFAULT_K_TRY = int(np.sqrt(N_FEATURES))  # floor(sqrt(30)) = 5


@dataclass(frozen=True)
class ForestParams:
    tree_count: int = DEFAULT_TREE_COUNT
    feature_subset_size: int | None = DEFAULT_K_TRY  # None means all features
    max_depth: int | None = None
    min_samples_split: int = 2
    bootstrap: bool = True
    master_seed: int = 0

    def __post_init__(self):
        if self.tree_count < 1:
            raise ValueError("tree_count must be >= 1")
        if self.feature_subset_size is not None and not (
            1 <= self.feature_subset_size <= N_FEATURES
        ):
            raise ValueError(f"feature_subset_size must lie in [1, {N_FEATURES}]")

    def tree_params(self) -> cart.TreeParams:
        return cart.TreeParams(
            max_depth=self.max_depth,
            min_samples_split=self.min_samples_split,
            feature_subset_size=self.feature_subset_size,
        )


@dataclass
class Forest:
    trees: list
    params: ForestParams
    n_classes: int


def _tree_rng(master_seed: int, tree_index: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(tree_index,))
    return np.random.Generator(np.random.PCG64(seq))


def bootstrap_sample(dataset: Dataset, rng: np.random.Generator) -> Dataset:
    """n rows drawn uniformly with replacement (n = dataset size)."""
    n = len(dataset)
    if n == 0:
        raise ValueError("cannot bootstrap an empty dataset")
    idx = rng.integers(0, n, size=n)
    return Dataset(dataset.X[idx], dataset.y[idx], dataset.class_count)


def train_forest(dataset: Dataset, params: ForestParams, n_threads: int = 1) -> Forest:
    """Train ``tree_count`` trees, each on its own bootstrap sample.

    Trees are stored by index, so the result is identical for any thread
    count.
    """
    if len(np.unique(dataset.y)) < 2:
        raise ValueError("training requires at least 2 classes")
    tree_params = params.tree_params()

    def build(i: int) -> cart.TreeNode:
        rng = _tree_rng(params.master_seed, i)
        if params.bootstrap:
            idx = rng.integers(0, len(dataset), size=len(dataset))
            Xb, yb = dataset.X[idx], dataset.y[idx]
        else:
            Xb, yb = dataset.X, dataset.y
        return cart.build_tree(Xb, yb, dataset.class_count, tree_params, rng)

    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            trees = list(pool.map(build, range(params.tree_count)))
    else:
        trees = [build(i) for i in range(params.tree_count)]
    return Forest(trees, params, dataset.class_count)


def predict_forest(forest: Forest, feature_vector) -> int:
    """Plurality vote over tree predictions; ties go to the lowest label."""
    votes = np.bincount(
        [cart.predict(t, feature_vector) for t in forest.trees],
        minlength=forest.n_classes,
    )
    return int(np.argmax(votes))


def predict_forest_many(forest: Forest, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    votes = np.zeros((len(X), forest.n_classes), dtype=np.int64)
    for tree in forest.trees:
        pred = cart.predict_many(tree, X)
        votes[np.arange(len(X)), pred] += 1
    return votes.argmax(axis=1)


def save_model(forest: Forest, path, label_map=None) -> None:
    doc = {
        "format": MODEL_FORMAT,
        "params": {
            "tree_count": forest.params.tree_count,
            "feature_subset_size": forest.params.feature_subset_size,
            "max_depth": forest.params.max_depth,
            "min_samples_split": forest.params.min_samples_split,
            "bootstrap": forest.params.bootstrap,
            "master_seed": forest.params.master_seed,
        },
        "n_classes": forest.n_classes,
        "label_map": label_map,
        "trees": [cart.tree_to_dict(t) for t in forest.trees],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True)


def load_model(path) -> tuple[Forest, dict | None]:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format") != MODEL_FORMAT:
        raise ValueError(f"unsupported model format: {doc.get('format')!r}")
    params = ForestParams(**doc["params"])
    trees = [cart.tree_from_dict(t) for t in doc["trees"]]
    return Forest(trees, params, doc["n_classes"]), doc.get("label_map")
