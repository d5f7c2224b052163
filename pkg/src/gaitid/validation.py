"""Input validation helpers shared by the estimator layer."""

from __future__ import annotations

import numpy as np

from .signal_model import N_FEATURES


def check_feature_matrix(X, n_features: int = N_FEATURES) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-d feature matrix, got ndim={X.ndim}")
    if X.shape[1] != n_features:
        raise ValueError(f"expected {n_features} feature columns, got {X.shape[1]}")
    if not np.all(np.isfinite(X)):
        raise ValueError("feature matrix contains non-finite values")
    return X


def check_labels(y, n_rows: int) -> np.ndarray:
    y = np.asarray(y)
    if y.ndim != 1 or len(y) != n_rows:
        raise ValueError("labels must be 1-d and match the number of rows")
    return y
