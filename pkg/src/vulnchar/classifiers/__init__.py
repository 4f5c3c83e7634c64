"""Six classification algorithms behind a uniform train/predict contract.

``train`` dispatches on the spec kind and returns an immutable model whose
``predict(x, x_counts=None)`` maps a sparse feature row to one of the
classes seen in training.  Ties everywhere resolve to the lowest taxonomy
index (except the random forest, which breaks vote ties with a seeded
random pick).  Given the same spec, data, and seed, training is
deterministic regardless of worker-thread count.
"""

from __future__ import annotations

from typing import Sequence

from ..taxonomy import Characterization
from ..textprep import FeatureMatrix
from ._common import SingleClassError, check_training_input
from .boost import AdaBoostModel, boost_round, train_adaboost
from .forest import RandomForestModel, train_random_forest
from .naive_bayes import NaiveBayesModel, nb_posterior, train_naive_bayes
from .params import (
    KINDS,
    AdaBoostParams,
    AlgorithmSpec,
    DecisionTreeParams,
    InvalidParamsError,
    MajorityVoteParams,
    NaiveBayesParams,
    RandomForestParams,
    SvmParams,
    algorithm_spec,
)
from .svm import (
    BinaryMachine,
    SmoConvergenceError,
    SvmModel,
    dual_objective,
    kkt_violation,
    pairwise_predict,
    smo_solve,
    train_svm,
)
from .tree import DecisionTreeModel, gain_ratio, pessimistic_errors, train_decision_tree
from .vote import MajorityVoteModel, majority_combine, train_majority_vote

__all__ = [
    "KINDS",
    "AlgorithmSpec",
    "algorithm_spec",
    "train",
    "predict",
    "NaiveBayesParams",
    "DecisionTreeParams",
    "SvmParams",
    "RandomForestParams",
    "AdaBoostParams",
    "MajorityVoteParams",
    "InvalidParamsError",
    "SingleClassError",
    "NaiveBayesModel",
    "DecisionTreeModel",
    "SvmModel",
    "RandomForestModel",
    "AdaBoostModel",
    "MajorityVoteModel",
    "BinaryMachine",
    "SmoConvergenceError",
    "nb_posterior",
    "gain_ratio",
    "pessimistic_errors",
    "smo_solve",
    "dual_objective",
    "kkt_violation",
    "pairwise_predict",
    "boost_round",
    "majority_combine",
]


def train(
    spec: AlgorithmSpec,
    X: FeatureMatrix,
    y: Sequence[Characterization],
    X_counts: FeatureMatrix | None = None,
    workers: int = 1,
):
    """Train a model of the spec's kind.

    ``X`` carries the primary (TF-IDF) features; ``X_counts``, when given,
    carries raw term counts for count-based members.  Both must share the
    column layout.
    """
    check_training_input(X, y)
    if X_counts is not None and (
        X_counts.num_rows != X.num_rows or X_counts.num_columns != X.num_columns
    ):
        raise ValueError("X_counts must have the same shape as X")

    kind = spec.kind
    if kind == "naive_bayes":
        return train_naive_bayes(spec.params, X, y, X_counts)
    if kind == "decision_tree":
        return train_decision_tree(spec.params, X, y)
    if kind == "svm":
        return train_svm(spec.params, X, y, seed=spec.seed)
    if kind == "random_forest":
        return train_random_forest(spec.params, X, y, seed=spec.seed, workers=workers)
    if kind == "adaboost_svm":
        return train_adaboost(spec.params, X, y, seed=spec.seed)
    if kind == "majority_vote":
        return train_majority_vote(spec.params, X, y, X_counts, seed=spec.seed, workers=workers)
    raise InvalidParamsError(f"unknown algorithm kind {kind!r}")


def predict(model, x: dict[int, float], x_counts: dict[int, float] | None = None) -> Characterization:
    """Predict a label for one sparse feature row.

    Pass ``x_counts`` whenever the model was trained with ``X_counts``;
    count-based members fall back to ``x`` otherwise, which only matches a
    model that made the same fallback at training time.
    """
    return model.predict(x, x_counts)
