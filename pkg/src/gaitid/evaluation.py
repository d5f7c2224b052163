"""Stratified k-fold cross-validation and the metric suite.

Per-class recall, specificity, and AUC use the 1-vs-others reduction; the
AUC here is the per-class mean of recall and specificity (balanced
accuracy), not ROC area. Final values are class-weighted sums with weights
W_c = n_c / n. Division-by-zero cases (absent class, no negatives) yield 0
plus a structured warning so degenerate folds cannot abort a CV run.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import forest as forest_mod
from .signal_model import Dataset


class StratificationError(ValueError):
    pass


def stratified_kfold(y, k: int = 10, seed: int = 0):
    """Partition indices into k folds with per-class counts differing by <= 1.

    Within each class, indices are shuffled by ``seed`` and dealt
    round-robin across folds. Raises StratificationError naming any class
    with fewer than k rows.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    y = np.asarray(y, dtype=np.int64)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    folds = [[] for _ in range(k)]
    for c in np.unique(y):
        idx = np.nonzero(y == c)[0]
        if len(idx) < k:
            raise StratificationError(
                f"class {int(c)} has {len(idx)} rows, need >= {k} for {k}-fold CV"
            )
        idx = rng.permutation(idx)
        for i, j in enumerate(idx):
            folds[i % k].append(int(j))
    return [np.array(sorted(f), dtype=np.int64) for f in folds]


def confusion_matrix(y_true, y_pred, n_classes: int) -> np.ndarray:
    """cm[t][p] = count of rows with true label t predicted as p."""
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape:
        raise ValueError("y_true and y_pred lengths differ")
    if len(y_true) and (
        y_true.min() < 0 or y_true.max() >= n_classes
        or y_pred.min() < 0 or y_pred.max() >= n_classes
    ):
        raise ValueError(f"labels must lie in [0, {n_classes})")
    cm = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(cm, (y_true, y_pred), 1)
    return cm


@dataclass
class MetricsResult:
    accuracy: float
    weights: np.ndarray
    recall: np.ndarray
    specificity: np.ndarray
    auc: np.ndarray
    per_class_accuracy: np.ndarray
    weighted_recall: float
    weighted_specificity: float
    weighted_auc: float
    warnings: list = field(default_factory=list)


def per_class_accuracy(cm: np.ndarray) -> np.ndarray:
    """1-vs-others accuracy per class: (tp_c + tn_c) / n."""
    n = cm.sum()
    out = np.zeros(len(cm))
    for c in range(len(cm)):
        tp = cm[c, c]
        fn = cm[c].sum() - tp
        fp = cm[:, c].sum() - tp
        tn = n - tp - fn - fp
        out[c] = (tp + tn) / n if n else 0.0
    return out


def metrics(cm: np.ndarray) -> MetricsResult:
    cm = np.asarray(cm, dtype=np.int64)
    n = int(cm.sum())
    if n < 1:
        raise ValueError("metrics of an empty confusion matrix")
    K = len(cm)
    weights = np.zeros(K)
    recall = np.zeros(K)
    specificity = np.zeros(K)
    warnings = []
    for c in range(K):
        tp = int(cm[c, c])
        fn = int(cm[c].sum()) - tp
        fp = int(cm[:, c].sum()) - tp
        tn = n - tp - fn - fp
        n_c = tp + fn
        weights[c] = n_c / n
        if n_c == 0:
            warnings.append(f"class {c}: no observations, recall set to 0")
            recall[c] = 0.0
        else:
            recall[c] = tp / n_c
        if fp + tn == 0:
            warnings.append(f"class {c}: no negative observations, specificity set to 0")
            specificity[c] = 0.0
        else:
            specificity[c] = tn / (fp + tn)
    auc = (recall + specificity) / 2.0
    return MetricsResult(
        accuracy=float(np.trace(cm)) / n,
        weights=weights,
        recall=recall,
        specificity=specificity,
        auc=auc,
        per_class_accuracy=per_class_accuracy(cm),
        weighted_recall=float(np.dot(weights, recall)),
        weighted_specificity=float(np.dot(weights, specificity)),
        weighted_auc=float(np.dot(weights, auc)),
        warnings=warnings,
    )


@dataclass
class FoldResult:
    fold: int
    test_size: int
    accuracy: float
    weighted_recall: float
    weighted_specificity: float
    weighted_auc: float


@dataclass
class EvaluationReport:
    """CV result: per-fold breakdown plus headline and aggregate views.

    ``headline`` metrics are the mean of the per-fold values; ``aggregate``
    metrics are recomputed from the summed confusion matrix. Both are
    reported, headline first.
    """

    k: int
    seed: int
    folds: list
    headline: dict
    aggregate: MetricsResult
    confusion: np.ndarray
    warnings: list

    def to_dict(self) -> dict:
        agg = self.aggregate
        return {
            "schema_version": 1,
            "k": self.k,
            "seed": self.seed,
            "headline": self.headline,
            "aggregate": {
                "accuracy": agg.accuracy,
                "weighted_recall": agg.weighted_recall,
                "weighted_specificity": agg.weighted_specificity,
                "weighted_auc": agg.weighted_auc,
            },
            "per_class": {
                "weight": agg.weights.tolist(),
                "recall": agg.recall.tolist(),
                "specificity": agg.specificity.tolist(),
                "auc": agg.auc.tolist(),
                "accuracy": agg.per_class_accuracy.tolist(),
            },
            "confusion": self.confusion.tolist(),
            "folds": [
                {
                    "fold": f.fold,
                    "test_size": f.test_size,
                    "accuracy": f.accuracy,
                    "weighted_recall": f.weighted_recall,
                    "weighted_specificity": f.weighted_specificity,
                    "weighted_auc": f.weighted_auc,
                }
                for f in self.folds
            ],
            "warnings": list(self.warnings),
        }


def _fold_seed(master_seed: int, fold: int) -> int:
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(fold,))
    return int(seq.generate_state(1)[0])


def cross_validate(dataset: Dataset, params: forest_mod.ForestParams,
                   k: int = 10, seed: int = 0, n_threads: int = 1) -> EvaluationReport:
    """Stratified k-fold CV: train on k-1 folds, test on the held-out fold.

    Each fold's forest is trained with a seed derived from
    (params.master_seed, fold index), so the whole run is deterministic for
    any thread count.
    """
    folds = stratified_kfold(dataset.y, k, seed)
    all_idx = np.arange(len(dataset))
    fold_results = []
    agg_cm = np.zeros((dataset.class_count, dataset.class_count), dtype=np.int64)
    warnings = []
    for i, test_idx in enumerate(folds):
        train_mask = np.ones(len(dataset), dtype=bool)
        train_mask[test_idx] = False
        train_idx = all_idx[train_mask]
        train = Dataset(dataset.X[train_idx], dataset.y[train_idx], dataset.class_count)
        fold_params = replace(params, master_seed=_fold_seed(params.master_seed, i))
        model = forest_mod.train_forest(train, fold_params, n_threads=n_threads)
        y_pred = forest_mod.predict_forest_many(model, dataset.X[test_idx])
        cm = confusion_matrix(dataset.y[test_idx], y_pred, dataset.class_count)
        agg_cm += cm
        m = metrics(cm)
        warnings.extend(f"fold {i}: {w}" for w in m.warnings)
        fold_results.append(FoldResult(
            fold=i,
            test_size=len(test_idx),
            accuracy=m.accuracy,
            weighted_recall=m.weighted_recall,
            weighted_specificity=m.weighted_specificity,
            weighted_auc=m.weighted_auc,
        ))
    headline = {
        "accuracy": float(np.mean([f.accuracy for f in fold_results])),
        "weighted_recall": float(np.mean([f.weighted_recall for f in fold_results])),
        "weighted_specificity": float(np.mean([f.weighted_specificity for f in fold_results])),
        "weighted_auc": float(np.mean([f.weighted_auc for f in fold_results])),
    }
    return EvaluationReport(
        k=k,
        seed=seed,
        folds=fold_results,
        headline=headline,
        aggregate=metrics(agg_cm),
        confusion=agg_cm,
        warnings=warnings,
    )
