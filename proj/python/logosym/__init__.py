"""Logo classification with clustered symbolic interval representatives."""

import json

from ._core import (
    ConfigError,
    DataError,
    Error,
    FeatureConfig,
    InfeasibleError,
    InvalidImage,
    Normalizer,
    ReferenceMatrix,
    build_reference,
    classify,
    extract,
    f_measure,
    generate_synthetic,
    kmeans,
    knn1_classify,
    metrics,
    read_image,
    run_sweep_json,
)

__all__ = [
    "ConfigError",
    "DataError",
    "Error",
    "FeatureConfig",
    "InfeasibleError",
    "InvalidImage",
    "Normalizer",
    "ReferenceMatrix",
    "build_reference",
    "classify",
    "compare_models",
    "extract",
    "f_measure",
    "generate_synthetic",
    "kmeans",
    "knn1_classify",
    "metrics",
    "read_image",
    "run_experiment",
]


def run_experiment(config_text, features, labels, class_names):
    """Sweep of the proposed classifier; returns the report as a dict."""
    return json.loads(run_sweep_json(config_text, features, labels, class_names, False))


def compare_models(config_text, features, labels, class_names):
    """Proposed, Model-1 and Model-2 on identical splits; returns a dict."""
    return json.loads(run_sweep_json(config_text, features, labels, class_names, True))
