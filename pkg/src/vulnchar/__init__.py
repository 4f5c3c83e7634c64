"""Automatic characterization of vulnerability descriptions.

A toolkit for assigning NIST VDO characterizations to CVE description
text: preprocessing and TF-IDF features, six classifiers, stratified
cross-validation with the usual metrics, and nonparametric significance
tests for comparing classifiers.
"""

from .taxonomy import CHARACTERIZATIONS, Category, Characterization, characterization
from .corpus import (
    Corpus,
    CveRecord,
    DatasetError,
    LabeledExample,
    load_labeled,
    save_labeled,
    summarize,
    validate,
)
from .textprep import (
    FeatureMatrix,
    Vocabulary,
    build_vocabulary,
    count_transform,
    preprocess,
    tfidf_transform,
)
from .classifiers import KINDS, AlgorithmSpec, algorithm_spec, predict, train
from .evaluation import (
    ConfusionMatrix,
    EvalReport,
    ScoreMatrix,
    cross_validate,
    rbp,
    read_score_matrix,
    stratified_folds,
    write_score_matrix,
)
from .stats import conover, friedman, tail_probability

__version__ = "0.1.0"

__all__ = [
    "CHARACTERIZATIONS",
    "Category",
    "Characterization",
    "characterization",
    "Corpus",
    "CveRecord",
    "LabeledExample",
    "DatasetError",
    "load_labeled",
    "save_labeled",
    "summarize",
    "validate",
    "FeatureMatrix",
    "Vocabulary",
    "build_vocabulary",
    "count_transform",
    "preprocess",
    "tfidf_transform",
    "KINDS",
    "AlgorithmSpec",
    "algorithm_spec",
    "train",
    "predict",
    "ConfusionMatrix",
    "EvalReport",
    "ScoreMatrix",
    "cross_validate",
    "stratified_folds",
    "rbp",
    "read_score_matrix",
    "write_score_matrix",
    "friedman",
    "conover",
    "tail_probability",
    "__version__",
]
