"""Shared helpers for the classifier implementations."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..taxonomy import Characterization
from ..textprep import FeatureMatrix


class SingleClassError(ValueError):
    """Training data contains fewer than two distinct classes."""


def to_dense(X: FeatureMatrix) -> np.ndarray:
    dense = np.zeros((X.num_rows, X.num_columns))
    for i, row in enumerate(X.rows):
        for col, weight in row.items():
            if not 0 <= col < X.num_columns:
                raise IndexError(f"row {i}: column {col} out of range 0..{X.num_columns - 1}")
            dense[i, col] = weight
    return dense


def row_to_dense(x: dict[int, float], num_columns: int) -> np.ndarray:
    dense = np.zeros(num_columns)
    for col, weight in x.items():
        if not 0 <= col < num_columns:
            raise IndexError(f"column {col} out of range 0..{num_columns - 1}")
        dense[col] = weight
    return dense


def encode_labels(
    y: Sequence[Characterization],
) -> tuple[list[Characterization], np.ndarray]:
    """Map labels to indices into the class list (sorted by taxonomy index)."""
    class_list = sorted(set(y), key=lambda c: c.index)
    position = {c: i for i, c in enumerate(class_list)}
    return class_list, np.array([position[label] for label in y], dtype=np.intp)


def check_training_input(X: FeatureMatrix, y: Sequence[Characterization]) -> None:
    if X.num_rows < 2:
        raise ValueError(f"need at least 2 training rows, got {X.num_rows}")
    if len(y) != X.num_rows:
        raise ValueError(f"feature matrix has {X.num_rows} rows but y has {len(y)} labels")
    if len(set(y)) < 2:
        raise SingleClassError("training data must contain at least 2 distinct classes")


def argmax_lowest(values: np.ndarray) -> int:
    """Index of the maximum; ties resolve to the lowest index."""
    return int(np.argmax(values))
