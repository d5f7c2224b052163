"""CART decision tree classifier with Gini impurity splitting.

Split selection scans, per candidate feature, thresholds at midpoints
between consecutive distinct sorted values and keeps the split with the
largest impurity drop. The drop is normalized by the ROOT sample count
(observation ratios measured against the whole training set), which
rescales the score but not the argmax within a node. Ties break to the
lower feature index, then the lower threshold, so training is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TreeParams:
    max_depth: int | None = None
    min_samples_split: int = 2
    feature_subset_size: int | None = None  # None means "all"

    def __post_init__(self):
        if self.min_samples_split < 2:
            raise ValueError("min_samples_split must be >= 2")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")


class TreeNode:
    """Internal node (left/right set) or leaf (label/histogram set).

    Internal nodes route value <= threshold to the left child.
    """

    __slots__ = ("feature", "threshold", "left", "right", "label", "histogram")

    def __init__(self, feature=None, threshold=None, left=None, right=None,
                 label=None, histogram=None):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.label = label
        self.histogram = histogram

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def gini(p: float) -> float:
    """Per-class Gini term p*(1-p)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"proportion out of range: {p}")
    return p * (1.0 - p)


def node_impurity(class_histogram) -> float:
    """Sum of per-class Gini terms at a node."""
    hist = np.asarray(class_histogram, dtype=np.float64)
    total = hist.sum()
    if total < 1:
        raise ValueError("node impurity of an empty node")
    return float(sum(gini(c / total) for c in hist))


def impurity_drop(parent_hist, left_hist, right_hist, root_total: int) -> float:
    """Weighted parent impurity minus weighted child impurities.

    Weights are node totals over the root total.
    """
    parent = np.asarray(parent_hist, dtype=np.float64)
    left = np.asarray(left_hist, dtype=np.float64)
    right = np.asarray(right_hist, dtype=np.float64)
    n0, n1, n2 = parent.sum(), left.sum(), right.sum()
    if n1 < 1 or n2 < 1:
        raise ValueError("both children must be non-empty")
    if n1 + n2 != n0:
        raise ValueError("children must partition the parent")
    return (n0 / root_total) * node_impurity(parent) - (
        (n1 / root_total) * node_impurity(left)
        + (n2 / root_total) * node_impurity(right)
    )


def _split_threshold(lo: float, hi: float) -> float:
    # Midpoint; if rounding collapses it onto the upper value, fall back to
    # the lower so the <= routing reproduces the evaluated partition.
    mid = lo + (hi - lo) / 2.0
    if mid >= hi:
        mid = lo
    return mid


def best_split(X, y, n_classes: int, candidate_features, root_total: int):
    """Best (feature_index, threshold, drop) over the candidates, or None.

    Returns None when the node is already pure, every candidate split has
    drop < 0, or the rows are identical on all candidate features. A
    zero-drop split of an impure node is admissible (required to separate
    XOR-like labelings).
    """
    n = len(y)
    if n < 2:
        raise ValueError("best_split requires at least 2 rows")
    candidates = sorted(candidate_features)
    if not candidates:
        raise ValueError("candidate feature set is empty")

    parent_hist = np.bincount(y, minlength=n_classes)
    parent_imp = node_impurity(parent_hist)
    if parent_imp == 0.0:
        return None
    parent_term = (n / root_total) * parent_imp

    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y] = 1.0

    best = None
    for f in candidates:
        v = X[:, f]
        order = np.argsort(v, kind="stable")
        sv = v[order]
        cuts = np.nonzero(sv[:-1] < sv[1:])[0]
        if cuts.size == 0:
            continue
        cum = np.cumsum(onehot[order], axis=0)
        nl = (cuts + 1).astype(np.float64)
        nr = n - nl
        cl = cum[cuts]
        cr = cum[-1] - cl
        pl = cl / nl[:, None]
        pr = cr / nr[:, None]
        il = (pl * (1.0 - pl)).sum(axis=1)
        ir = (pr * (1.0 - pr)).sum(axis=1)
        drop = parent_term - ((nl / root_total) * il + (nr / root_total) * ir)
        j = int(np.argmax(drop))  # first max: lowest threshold on ties
        # Zero-drop splits are kept on impure nodes: splits like XOR's first
        # cut purify nothing immediately but enable pure grandchildren.
        if drop[j] >= 0.0 and (best is None or drop[j] > best[2]):
            thr = _split_threshold(float(sv[cuts[j]]), float(sv[cuts[j] + 1]))
            best = (int(f), thr, float(drop[j]))
    return best


def build_tree(X, y, n_classes: int, params: TreeParams, rng=None) -> TreeNode:
    """Grow a tree until purity, min_samples_split, max_depth, or no usable split.

    ``rng`` is consulted only to sample candidate features of size
    ``feature_subset_size`` at each node (forest mode); with the default
    "all" subset it is ignored.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if len(y) == 0:
        raise ValueError("cannot build a tree from zero rows")
    if params.feature_subset_size is not None:
        if not 1 <= params.feature_subset_size <= X.shape[1]:
            raise ValueError("feature_subset_size out of range")
        if rng is None:
            raise ValueError("feature subsampling requires an rng")
    root_total = len(y)
    n_features = X.shape[1]

    def leaf(hist) -> TreeNode:
        return TreeNode(label=int(np.argmax(hist)), histogram=hist)

    def grow(idx, depth) -> TreeNode:
        hist = np.bincount(y[idx], minlength=n_classes)
        if (
            np.count_nonzero(hist) == 1
            or len(idx) < params.min_samples_split
            or (params.max_depth is not None and depth >= params.max_depth)
        ):
            return leaf(hist)
        if params.feature_subset_size is None:
            candidates = range(n_features)
        else:
            candidates = rng.choice(n_features, size=params.feature_subset_size,
                                    replace=False)
        found = best_split(X[idx], y[idx], n_classes, candidates, root_total)
        if found is None:
            return leaf(hist)
        f, thr, _ = found
        mask = X[idx, f] <= thr
        return TreeNode(
            feature=f,
            threshold=thr,
            left=grow(idx[mask], depth + 1),
            right=grow(idx[~mask], depth + 1),
        )

    return grow(np.arange(len(y)), 0)


def predict(tree: TreeNode, feature_vector) -> int:
    vec = np.asarray(feature_vector, dtype=np.float64)
    node = tree
    while not node.is_leaf:
        node = node.left if vec[node.feature] <= node.threshold else node.right
    return node.label


def predict_many(tree: TreeNode, X) -> np.ndarray:
    """Vectorized prediction: routes index blocks down the tree."""
    X = np.asarray(X, dtype=np.float64)
    out = np.empty(len(X), dtype=np.int64)
    stack = [(tree, np.arange(len(X)))]
    while stack:
        node, idx = stack.pop()
        if idx.size == 0:
            continue
        if node.is_leaf:
            out[idx] = node.label
        else:
            mask = X[idx, node.feature] <= node.threshold
            stack.append((node.left, idx[mask]))
            stack.append((node.right, idx[~mask]))
    return out


def tree_to_dict(node: TreeNode) -> dict:
    if node.is_leaf:
        return {"label": node.label, "histogram": [int(c) for c in node.histogram]}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "left": tree_to_dict(node.left),
        "right": tree_to_dict(node.right),
    }


def tree_from_dict(doc: dict) -> TreeNode:
    if "label" in doc:
        return TreeNode(label=doc["label"],
                        histogram=np.array(doc["histogram"], dtype=np.int64))
    return TreeNode(
        feature=doc["feature"],
        threshold=doc["threshold"],
        left=tree_from_dict(doc["left"]),
        right=tree_from_dict(doc["right"]),
    )
