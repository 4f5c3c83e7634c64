"""Multinomial naive Bayes over term counts.

Class priors come from document counts, term likelihoods from per-class
term totals with add-1 smoothing over the vocabulary size.  All scoring is
done in log space.  By default the model consumes raw term counts; it can
be configured to treat TF-IDF weights as fractional counts instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..taxonomy import Characterization
from ..textprep import FeatureMatrix
from ._common import argmax_lowest, check_training_input, encode_labels, row_to_dense
from .params import NaiveBayesParams


@dataclass
class NaiveBayesModel:
    kind = "naive_bayes"
    class_list: list[Characterization]
    num_columns: int
    log_priors: np.ndarray  # (k,)
    log_likelihoods: np.ndarray  # (k, V)
    input: str = "counts"

    def _features(self, x: dict[int, float], x_counts: dict[int, float] | None) -> np.ndarray:
        chosen = x_counts if (self.input == "counts" and x_counts is not None) else x
        return row_to_dense(chosen, self.num_columns)

    def posterior(self, x: dict[int, float], x_counts: dict[int, float] | None = None) -> np.ndarray:
        """Per-class log scores: log P(c) + sum_t count(t) * log P(t|c)."""
        counts = self._features(x, x_counts)
        return self.log_priors + self.log_likelihoods @ counts

    def predict(
        self, x: dict[int, float], x_counts: dict[int, float] | None = None
    ) -> Characterization:
        return self.class_list[argmax_lowest(self.posterior(x, x_counts))]

    def score_detail(self, x, x_counts=None) -> dict[str, float]:
        scores = self.posterior(x, x_counts)
        return {c.name: float(s) for c, s in zip(self.class_list, scores)}


def train_naive_bayes(
    params: NaiveBayesParams,
    X: FeatureMatrix,
    y: Sequence[Characterization],
    X_counts: FeatureMatrix | None = None,
) -> NaiveBayesModel:
    check_training_input(X, y)
    source = X_counts if (params.input == "counts" and X_counts is not None) else X
    class_list, y_idx = encode_labels(y)
    k, v = len(class_list), source.num_columns

    doc_counts = np.bincount(y_idx, minlength=k).astype(float)
    term_totals = np.zeros((k, v))
    for row, cls in zip(source.rows, y_idx):
        for col, weight in row.items():
            term_totals[cls, col] += weight

    log_priors = np.log(doc_counts / len(y))
    log_likelihoods = np.log(term_totals + 1.0) - np.log(
        term_totals.sum(axis=1, keepdims=True) + v
    )
    return NaiveBayesModel(class_list, v, log_priors, log_likelihoods, params.input)


def nb_posterior(
    model: NaiveBayesModel, x: dict[int, float], x_counts: dict[int, float] | None = None
) -> np.ndarray:
    return model.posterior(x, x_counts)
