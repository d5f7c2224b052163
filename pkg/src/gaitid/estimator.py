"""Scikit-learn style wrappers so the pipeline composes with the ecosystem."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin

from . import features, forest
from .signal_model import Dataset
from .validation import check_feature_matrix, check_labels


class WindowFeaturizer(BaseEstimator, TransformerMixin):
    """Stateless transformer from identification windows to feature rows."""

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        return np.stack([features.extract_feature_vector(w).values for w in X])


class GaitForestClassifier(BaseEstimator, ClassifierMixin):
    """Random-forest person classifier over 30-dimensional gait features.

    ``n_trees=1`` with ``k_try=None`` and ``bootstrap=False`` reduces to a
    single unrestricted CART tree (the decision-tree baseline).
    """

    def __init__(self, n_trees=forest.DEFAULT_TREE_COUNT, k_try=forest.DEFAULT_K_TRY,
                 max_depth=None, min_samples_split=2, bootstrap=True,
                 random_state=0, n_jobs=1):
        self.n_trees = n_trees
        self.k_try = k_try
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.bootstrap = bootstrap
        self.random_state = random_state
        self.n_jobs = n_jobs

    def fit(self, X, y):
        X = check_feature_matrix(X)
        y = check_labels(y, len(X))
        self.classes_, y_dense = np.unique(y, return_inverse=True)
        dataset = Dataset(X, y_dense, len(self.classes_))
        params = forest.ForestParams(
            tree_count=self.n_trees,
            feature_subset_size=self.k_try,
            max_depth=self.max_depth,
            min_samples_split=self.min_samples_split,
            bootstrap=self.bootstrap,
            master_seed=self.random_state,
        )
        self.forest_ = forest.train_forest(dataset, params, n_threads=self.n_jobs)
        return self

    def predict(self, X):
        if not hasattr(self, "forest_"):
            raise ValueError("classifier is not fitted")
        X = check_feature_matrix(X)
        return self.classes_[forest.predict_forest_many(self.forest_, X)]
