"""Gait-based person recognition from accelerometer data.

Pipeline: recording ingestion -> overlapping-window feature extraction
(time + frequency domain) -> random-forest classification -> stratified
cross-validated evaluation, plus a seeded synthetic gait generator.
"""

from .signal_model import (
    AxialSample,
    Dataset,
    FeatureVector,
    N_FEATURES,
    Recording,
    Spectrum,
    Window,
)
from .estimator import GaitForestClassifier, WindowFeaturizer
from .forest import Forest, ForestParams, train_forest, predict_forest
from .evaluation import EvaluationReport, cross_validate

__all__ = [
    "AxialSample",
    "Dataset",
    "EvaluationReport",
    "FeatureVector",
    "Forest",
    "ForestParams",
    "GaitForestClassifier",
    "N_FEATURES",
    "Recording",
    "Spectrum",
    "Window",
    "WindowFeaturizer",
    "cross_validate",
    "predict_forest",
    "train_forest",
]

__version__ = "0.1.0"
