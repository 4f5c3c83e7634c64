"""Stratified cross-validation, confusion matrices, and the six metrics.

Folds are stratified per class: within each class, examples are shuffled
by a seeded RNG and dealt round-robin starting at a seeded offset, so
per-class fold counts never differ by more than one.  Metrics are computed
on the confusion matrix pooled over all held-out predictions.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import classifiers
from ._rng import derive_rng
from .corpus import Corpus
from .taxonomy import Characterization
from .textprep import build_vocabulary, count_transform, preprocess, tfidf_transform


@dataclass(frozen=True)
class FoldAssignment:
    fold_of: tuple[int, ...]
    k: int
    seed: int

    def test_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.fold_of) if f == fold]

    def train_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.fold_of) if f != fold]


def stratified_folds(y: Sequence[Characterization], k: int, seed: int) -> FoldAssignment:
    """Assign each example a fold in 0..k-1, keeping classes proportional.

    Within a class the per-fold counts differ by at most one.
    """
    n = len(y)
    if n == 0:
        raise ValueError("cannot build folds for an empty label vector")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of examples ({n})")

    fold_of = [0] * n
    classes = sorted(set(y), key=lambda c: c.index)
    for cls in classes:
        indices = np.array([i for i, label in enumerate(y) if label == cls])
        rng = derive_rng(seed, "stratify", cls.index)
        shuffled = indices[rng.permutation(indices.size)]
        offset = int(rng.integers(k))
        for j, i in enumerate(shuffled):
            fold_of[int(i)] = (offset + j) % k
    return FoldAssignment(tuple(fold_of), k, seed)


@dataclass
class ConfusionMatrix:
    """counts[t, p] = examples of true class t predicted as class p."""

    counts: np.ndarray
    class_list: list[Characterization]

    @classmethod
    def from_pairs(
        cls,
        truth: Sequence[Characterization],
        predicted: Sequence[Characterization],
        class_list: Sequence[Characterization] | None = None,
    ) -> "ConfusionMatrix":
        if len(truth) != len(predicted):
            raise ValueError("truth and predictions differ in length")
        if class_list is None:
            class_list = sorted(set(truth) | set(predicted), key=lambda c: c.index)
        position = {c: i for i, c in enumerate(class_list)}
        counts = np.zeros((len(class_list), len(class_list)), dtype=np.int64)
        for t, p in zip(truth, predicted):
            counts[position[t], position[p]] += 1
        return cls(counts, list(class_list))

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class ClassCounts:
    tp: int
    fp: int
    fn: int
    tn: int


def class_counts(confusion: ConfusionMatrix, cls: Characterization) -> ClassCounts:
    """One-vs-rest binarization of the multiclass matrix for ``cls``."""
    i = confusion.class_list.index(cls)
    counts = confusion.counts
    tp = int(counts[i, i])
    fp = int(counts[:, i].sum() - tp)
    fn = int(counts[i, :].sum() - tp)
    tn = int(counts.sum() - tp - fp - fn)
    return ClassCounts(tp, fp, fn, tn)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float


def per_class_metrics(
    confusion: ConfusionMatrix,
) -> tuple[dict[Characterization, ClassMetrics], set[Characterization]]:
    """P, R, F1 per class; zero-denominator cases yield 0 and are flagged."""
    metrics: dict[Characterization, ClassMetrics] = {}
    degenerate: set[Characterization] = set()
    for cls in confusion.class_list:
        c = class_counts(confusion, cls)
        if c.tp + c.fp == 0 or c.tp + c.fn == 0:
            degenerate.add(cls)
        precision = c.tp / (c.tp + c.fp) if c.tp + c.fp else 0.0
        recall = c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        metrics[cls] = ClassMetrics(precision, recall, f1)
    return metrics, degenerate


def accuracy(confusion: ConfusionMatrix) -> float:
    total = confusion.total
    if total == 0:
        raise ValueError("empty confusion matrix")
    return float(np.trace(confusion.counts)) / total


def kappa(confusion: ConfusionMatrix) -> float:
    """Chance-corrected agreement from the marginal distributions."""
    total = confusion.total
    if total == 0:
        raise ValueError("empty confusion matrix")
    p_observed = accuracy(confusion)
    rows = confusion.counts.sum(axis=1)
    cols = confusion.counts.sum(axis=0)
    p_chance = float(rows @ cols) / (total * total)
    if p_chance >= 1.0:
        return 0.0
    return (p_observed - p_chance) / (1.0 - p_chance)


@dataclass
class EvalReport:
    per_class: dict[Characterization, ClassMetrics]
    accuracy: float
    kappa: float
    confusion: ConfusionMatrix
    degenerate: set[Characterization] = field(default_factory=set)


def report_from_confusion(confusion: ConfusionMatrix) -> EvalReport:
    metrics, degenerate = per_class_metrics(confusion)
    return EvalReport(metrics, accuracy(confusion), kappa(confusion), confusion, degenerate)


class FoldTrainingError(RuntimeError):
    def __init__(self, fold: int, cause: Exception):
        super().__init__(f"training failed in fold {fold}: {cause}")
        self.fold = fold


@dataclass
class CvPredictions:
    truth: list[Characterization]
    predicted: list[Characterization]
    folds: FoldAssignment


def cross_validate_predictions(
    spec: classifiers.AlgorithmSpec,
    corpus: Corpus,
    k: int = 10,
    seed: int = 123,
    workers: int = 1,
    trainer: Callable = classifiers.train,
) -> CvPredictions:
    """Pool held-out predictions from k stratified train/test rounds.

    Vocabulary, document frequencies, and the model are fitted on the k-1
    training folds only; the held-out fold is transformed with the training
    vocabulary.
    """
    labels = corpus.labels
    low = [c for c, n in corpus.class_counts.items() if n < 2]
    if low:
        names = ", ".join(c.name for c in sorted(low, key=lambda c: c.index))
        raise ValueError(f"classes with fewer than 2 examples cannot be stratified: {names}")

    tokens = [preprocess(d) for d in corpus.descriptions]
    folds = stratified_folds(labels, k, seed)

    def run_fold(f: int) -> list[tuple[int, Characterization]]:
        train_idx = folds.train_indices(f)
        test_idx = folds.test_indices(f)
        train_tokens = [tokens[i] for i in train_idx]
        vocab = build_vocabulary(train_tokens)
        x_train = tfidf_transform(train_tokens, vocab)
        c_train = count_transform(train_tokens, vocab)
        y_train = [labels[i] for i in train_idx]
        try:
            model = trainer(spec, x_train, y_train, X_counts=c_train, workers=1)
        except Exception as e:
            raise FoldTrainingError(f, e) from e
        test_tokens = [tokens[i] for i in test_idx]
        x_test = tfidf_transform(test_tokens, vocab)
        c_test = count_transform(test_tokens, vocab)
        return [
            (i, model.predict(x_test.rows[j], c_test.rows[j]))
            for j, i in enumerate(test_idx)
        ]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            fold_results = list(pool.map(run_fold, range(k)))
    else:
        fold_results = [run_fold(f) for f in range(k)]

    predicted: list[Characterization | None] = [None] * len(labels)
    for result in fold_results:
        for i, label in result:
            predicted[i] = label
    return CvPredictions(labels, predicted, folds)


def cross_validate(
    spec: classifiers.AlgorithmSpec,
    corpus: Corpus,
    k: int = 10,
    seed: int = 123,
    workers: int = 1,
    trainer: Callable = classifiers.train,
) -> EvalReport:
    """Stratified k-fold cross-validation ending in one pooled report."""
    cv = cross_validate_predictions(spec, corpus, k, seed, workers, trainer)
    confusion = ConfusionMatrix.from_pairs(cv.truth, cv.predicted, corpus.classes())
    return report_from_confusion(confusion)


@dataclass
class ScoreMatrix:
    """F1 grid: one row per classifier, one column per class."""

    values: np.ndarray
    classifier_names: list[str]
    class_names: list[str]

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (len(self.classifier_names), len(self.class_names)):
            raise ValueError("score matrix shape does not match its labels")

    def column(self, classifier: str) -> np.ndarray:
        return self.values[self.classifier_names.index(classifier)]


def score_matrix_from_reports(
    reports: dict[str, EvalReport], classes: Sequence[Characterization]
) -> ScoreMatrix:
    names = list(reports)
    values = np.array(
        [[reports[n].per_class[c].f1 for c in classes] for n in names]
    )
    return ScoreMatrix(values, names, [c.name for c in classes])


def write_score_matrix(matrix: ScoreMatrix, path: str | Path) -> None:
    """CSV layout: header 'class,<classifier...>'; one row per class."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["class"] + matrix.classifier_names)
        for j, cls in enumerate(matrix.class_names):
            writer.writerow([cls] + [f"{v:g}" for v in matrix.values[:, j]])


def read_score_matrix(path: str | Path) -> ScoreMatrix:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if len(rows) < 2 or len(rows[0]) < 2 or rows[0][0] != "class":
        raise ValueError(f"{path}: expected a 'class,<classifier...>' header and data rows")
    classifier_names = rows[0][1:]
    class_names = [row[0] for row in rows[1:]]
    values = np.array([[float(v) for v in row[1:]] for row in rows[1:]]).T
    return ScoreMatrix(values, classifier_names, class_names)


@dataclass
class RbpResult:
    """Ratio of best performance: share of classes each classifier wins.

    Every classifier matching a class's best F1 exactly counts as a win for
    that class.
    """

    wins: dict[str, int]
    ratios: dict[str, float]
    num_classes: int


def rbp(matrix: ScoreMatrix) -> RbpResult:
    if matrix.values.size == 0:
        raise ValueError("empty score matrix")
    best = matrix.values.max(axis=0)
    win_grid = matrix.values == best  # exact comparison on the stored values
    wins = {
        name: int(win_grid[i].sum()) for i, name in enumerate(matrix.classifier_names)
    }
    n = len(matrix.class_names)
    ratios = {name: wins[name] / n for name in matrix.classifier_names}
    return RbpResult(wins, ratios, n)


def report_to_dict(report: EvalReport) -> dict:
    classes = report.confusion.class_list
    return {
        "accuracy": report.accuracy,
        "kappa": report.kappa,
        "per_class": {
            c.name: {
                "precision": report.per_class[c].precision,
                "recall": report.per_class[c].recall,
                "f1": report.per_class[c].f1,
            }
            for c in classes
        },
        "degenerate_classes": sorted(c.name for c in report.degenerate),
        "confusion": {
            "classes": [c.name for c in classes],
            "counts": report.confusion.counts.tolist(),
        },
    }


def report_to_markdown(report: EvalReport, title: str = "Cross-validation report") -> str:
    lines = [
        f"# {title}",
        "",
        f"- accuracy: {report.accuracy:.4f}",
        f"- kappa: {report.kappa:.4f}",
        "",
        "| characteristic | precision | recall | f1 |",
        "| --- | --- | --- | --- |",
    ]
    for c in report.confusion.class_list:
        m = report.per_class[c]
        flag = " *" if c in report.degenerate else ""
        lines.append(f"| {c.name}{flag} | {m.precision:.2f} | {m.recall:.2f} | {m.f1:.2f} |")
    if report.degenerate:
        lines += ["", "`*` zero-denominator precision/recall reported as 0"]
    return "\n".join(lines) + "\n"


def score_matrix_to_markdown(matrix: ScoreMatrix, result: RbpResult | None = None) -> str:
    lines = [
        "| class | " + " | ".join(matrix.classifier_names) + " |",
        "| --- |" + " --- |" * len(matrix.classifier_names),
    ]
    for j, cls in enumerate(matrix.class_names):
        row = " | ".join(f"{v:.2f}" for v in matrix.values[:, j])
        lines.append(f"| {cls} | {row} |")
    if result is not None:
        ratios = " | ".join(f"{result.ratios[n]:.2f}" for n in matrix.classifier_names)
        lines.append(f"| RBP | {ratios} |")
    return "\n".join(lines) + "\n"
