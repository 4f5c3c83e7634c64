"""Majority-vote ensemble over heterogeneous member classifiers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..taxonomy import Characterization
from ..textprep import FeatureMatrix
from ._common import check_training_input
from .params import MajorityVoteParams


def majority_combine(predictions: Sequence[Characterization]) -> Characterization:
    """Plurality label; ties resolve to the lowest taxonomy index."""
    if not predictions:
        raise ValueError("no member predictions to combine")
    counts: dict[Characterization, int] = {}
    for label in predictions:
        counts[label] = counts.get(label, 0) + 1
    best = max(counts.values())
    return min((c for c, n in counts.items() if n == best), key=lambda c: c.index)


@dataclass
class MajorityVoteModel:
    kind = "majority_vote"
    class_list: list[Characterization]
    num_columns: int
    member_kinds: tuple[str, ...]
    members: list  # trained member models, aligned with member_kinds

    def member_predictions(
        self, x: dict[int, float], x_counts: dict[int, float] | None = None
    ) -> list[Characterization]:
        return [m.predict(x, x_counts) for m in self.members]

    def predict(
        self, x: dict[int, float], x_counts: dict[int, float] | None = None
    ) -> Characterization:
        return majority_combine(self.member_predictions(x, x_counts))

    def score_detail(self, x, x_counts=None) -> dict[str, float]:
        votes: dict[str, float] = {c.name: 0.0 for c in self.class_list}
        for label in self.member_predictions(x, x_counts):
            votes[label.name] += 1.0
        return votes


def train_majority_vote(
    params: MajorityVoteParams,
    X: FeatureMatrix,
    y: Sequence[Characterization],
    X_counts: FeatureMatrix | None = None,
    seed: int = 123,
    workers: int = 1,
) -> MajorityVoteModel:
    from . import train as train_member  # dispatch lives one level up
    from .params import algorithm_spec

    check_training_input(X, y)
    class_list = sorted(set(y), key=lambda c: c.index)
    members = [
        train_member(algorithm_spec(kind, seed=seed), X, y, X_counts=X_counts, workers=workers)
        for kind in params.members
    ]
    return MajorityVoteModel(class_list, X.num_columns, tuple(params.members), members)
