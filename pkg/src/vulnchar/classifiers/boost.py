"""Adaptive boosting of SVM base learners via weighted resampling.

Each round draws a with-replacement resample proportional to the current
item weights, trains a fresh multiclass SVM, and measures its weighted
error on the full training set.  Misclassified items have their weight
multiplied by (1 - e) / e before renormalization.  The loop stops early on
a perfect round (member kept) or when e >= 0.5 (member discarded).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .._rng import derive_rng
from ..taxonomy import Characterization
from ..textprep import FeatureMatrix
from ._common import check_training_input
from .params import AdaBoostParams, SvmParams
from .svm import SvmModel, train_svm

# weight assigned to an error-free member: ln((1 - e)/e) at e = 1e-10
_MIN_ERROR = 1e-10
_RESAMPLE_RETRIES = 10


def _subset(X: FeatureMatrix, indices: np.ndarray) -> FeatureMatrix:
    return FeatureMatrix([dict(X.rows[i]) for i in indices], X.num_columns)


@dataclass
class BoostRound:
    member: SvmModel
    error: float
    beta: float
    next_weights: np.ndarray


def boost_round(
    weights: np.ndarray,
    X: FeatureMatrix,
    y: Sequence[Characterization],
    base: SvmParams,
    seed: int,
    round_index: int,
    resample_fraction: float = 1.0,
) -> BoostRound:
    """Run one boosting round; the caller applies the stopping rules."""
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (len(y),) or weights.min() < 0 or abs(weights.sum() - 1.0) > 1e-9:
        raise ValueError("weights must be a probability distribution over the training items")

    rng = derive_rng(seed, "boost_resample", round_index)
    n = len(y)
    size = max(1, round(resample_fraction * n))
    member = None
    for _ in range(_RESAMPLE_RETRIES):
        indices = rng.choice(n, size=size, replace=True, p=weights)
        if len({y[i] for i in indices}) < 2:
            continue  # resample collapsed to one class; redraw
        member = train_svm(base, _subset(X, indices), [y[i] for i in indices], seed=seed)
        break
    if member is None:
        raise ValueError("resampling repeatedly produced single-class samples")

    predictions = [member.predict(row) for row in X.rows]
    missed = np.array([pred != true for pred, true in zip(predictions, y)])
    error = float(weights[missed].sum())

    beta = math.log((1.0 - error) / max(error, _MIN_ERROR))
    next_weights = weights.copy()
    if 0.0 < error < 0.5:
        next_weights[missed] *= (1.0 - error) / error
        next_weights /= next_weights.sum()
    return BoostRound(member, error, beta, next_weights)


@dataclass
class AdaBoostModel:
    kind = "adaboost_svm"
    class_list: list[Characterization]
    num_columns: int
    members: list[SvmModel]
    betas: list[float]

    def weighted_votes(self, x: dict[int, float]) -> np.ndarray:
        position = {c: i for i, c in enumerate(self.class_list)}
        votes = np.zeros(len(self.class_list))
        for member, beta in zip(self.members, self.betas):
            votes[position[member.predict(x)]] += beta
        return votes

    def predict(
        self, x: dict[int, float], x_counts: dict[int, float] | None = None
    ) -> Characterization:
        return self.class_list[int(np.argmax(self.weighted_votes(x)))]

    def score_detail(self, x, x_counts=None) -> dict[str, float]:
        return {c.name: float(v) for c, v in zip(self.class_list, self.weighted_votes(x))}


def train_adaboost(
    params: AdaBoostParams,
    X: FeatureMatrix,
    y: Sequence[Characterization],
    seed: int = 123,
) -> AdaBoostModel:
    check_training_input(X, y)
    class_list = sorted(set(y), key=lambda c: c.index)
    n = X.num_rows
    weights = np.full(n, 1.0 / n)

    members: list[SvmModel] = []
    betas: list[float] = []
    fallback: SvmModel | None = None
    for t in range(params.iterations):
        outcome = boost_round(weights, X, list(y), params.base, seed, t, params.resample_fraction)
        if outcome.error >= 0.5:
            fallback = outcome.member
            break
        members.append(outcome.member)
        betas.append(outcome.beta)
        if outcome.error == 0.0:
            break
        weights = outcome.next_weights

    if not members:
        # the very first member was already at chance level; keep it rather
        # than returning an ensemble that cannot vote
        members = [fallback]
        betas = [1.0]
    return AdaBoostModel(class_list, X.num_columns, members, betas)
