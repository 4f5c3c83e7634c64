"""C4.5-style decision tree for numeric features.

Nodes split on a single feature at a midpoint threshold; the split is
chosen by gain ratio (information gain over split information, in bits)
among candidates whose gain reaches the average positive gain, which
guards against splinter splits on continuous features.  Pruning replaces
subtrees by leaves when the pessimistic error estimate does not get worse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import ndtri

from ..taxonomy import Characterization
from ..textprep import FeatureMatrix
from ._common import check_training_input, encode_labels, row_to_dense, to_dense
from .params import DecisionTreeParams

_EPS = 1e-12


def _entropy(counts: np.ndarray) -> float:
    """Entropy in bits of a class-count vector."""
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def _entropy_rows(counts: np.ndarray) -> np.ndarray:
    totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(totals > 0, counts / totals, 0.0)
        logs = np.where(p > 0, np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return -(p * logs).sum(axis=1)


def gain_ratio(values: Sequence[float], threshold: float, y: Sequence) -> float:
    """Information gain of the binary split values <= threshold, over split info.

    Zero split information (one side empty) yields 0: the candidate carries
    no usable information.
    """
    values = np.asarray(values, dtype=float)
    labels = list(y)
    classes = {label: i for i, label in enumerate(dict.fromkeys(labels))}
    y_idx = np.array([classes[label] for label in labels])
    gain, ratio = _split_quality(values, threshold, y_idx, len(classes))
    return ratio


def _split_quality(
    values: np.ndarray, threshold: float, y_idx: np.ndarray, n_classes: int
) -> tuple[float, float]:
    left = values <= threshold
    n = len(values)
    nl = int(left.sum())
    nr = n - nl
    if nl == 0 or nr == 0:
        return 0.0, 0.0
    total = np.bincount(y_idx, minlength=n_classes).astype(float)
    left_counts = np.bincount(y_idx[left], minlength=n_classes).astype(float)
    right_counts = total - left_counts
    gain = _entropy(total) - (nl / n) * _entropy(left_counts) - (nr / n) * _entropy(right_counts)
    pl, pr = nl / n, nr / n
    split_info = -(pl * np.log2(pl) + pr * np.log2(pr))
    if split_info <= 0:
        return gain, 0.0
    return gain, gain / split_info


@dataclass
class _Split:
    feature: int
    threshold: float
    gain: float
    ratio: float


def _best_threshold(
    values: np.ndarray, y_idx: np.ndarray, n_classes: int, min_leaf: int
) -> tuple[float, float, float] | None:
    """Best (threshold, gain, ratio) for one feature, maximizing gain.

    Candidate thresholds are midpoints between consecutive distinct sorted
    values.  Returns None when no threshold leaves min_leaf samples on each
    side.
    """
    n = len(values)
    order = np.argsort(values, kind="stable")
    v = values[order]
    cuts = np.nonzero(v[1:] != v[:-1])[0] + 1  # left side is [:cut]
    if cuts.size == 0:
        return None
    valid = (cuts >= min_leaf) & (n - cuts >= min_leaf)
    cuts = cuts[valid]
    if cuts.size == 0:
        return None

    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y_idx[order]] = 1.0
    cum = np.cumsum(onehot, axis=0)
    total = cum[-1]
    left_counts = cum[cuts - 1]
    right_counts = total - left_counts

    nl = cuts.astype(float)
    nr = n - nl
    parent = _entropy(total)
    gains = parent - (nl / n) * _entropy_rows(left_counts) - (nr / n) * _entropy_rows(right_counts)
    split_info = -((nl / n) * np.log2(nl / n) + (nr / n) * np.log2(nr / n))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(split_info > 0, gains / split_info, 0.0)

    best = int(np.argmax(gains))  # ties resolve to the lowest threshold
    threshold = (v[cuts[best] - 1] + v[cuts[best]]) / 2.0
    return float(threshold), float(gains[best]), float(ratios[best])


def _choose_split(
    X: np.ndarray,
    y_idx: np.ndarray,
    n_classes: int,
    feature_ids: np.ndarray,
    min_leaf: int,
) -> _Split | None:
    candidates: list[_Split] = []
    for f in feature_ids:
        found = _best_threshold(X[:, f], y_idx, n_classes, min_leaf)
        if found is None:
            continue
        threshold, gain, ratio = found
        if gain > _EPS and ratio > _EPS:
            candidates.append(_Split(int(f), threshold, gain, ratio))
    if not candidates:
        return None
    # only splits at least as informative as the average candidate compete
    avg_gain = sum(c.gain for c in candidates) / len(candidates)
    admissible = [c for c in candidates if c.gain >= avg_gain - _EPS]
    return max(admissible, key=lambda c: (c.ratio, -c.feature, -c.threshold))


@dataclass
class TreeNode:
    counts: np.ndarray  # training class distribution reaching this node
    prediction: int  # majority class position, ties to the lowest taxonomy index
    feature: int | None = None
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def errors(self) -> float:
        return float(self.counts.sum() - self.counts[self.prediction])

    def leaves(self) -> int:
        if self.is_leaf:
            return 1
        return self.left.leaves() + self.right.leaves()

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(self.left.depth(), self.right.depth())


def _grow(
    X: np.ndarray,
    y_idx: np.ndarray,
    n_classes: int,
    min_leaf: int,
    feature_picker,
) -> TreeNode:
    counts = np.bincount(y_idx, minlength=n_classes).astype(float)
    node = TreeNode(counts=counts, prediction=int(np.argmax(counts)))
    if counts.max() == counts.sum():  # pure
        return node
    split = _choose_split(X, y_idx, n_classes, feature_picker(X.shape[1]), min_leaf)
    if split is None:
        return node
    left_mask = X[:, split.feature] <= split.threshold
    node.feature = split.feature
    node.threshold = split.threshold
    node.left = _grow(X[left_mask], y_idx[left_mask], n_classes, min_leaf, feature_picker)
    node.right = _grow(X[~left_mask], y_idx[~left_mask], n_classes, min_leaf, feature_picker)
    return node


def grow_tree(
    X: np.ndarray,
    y_idx: np.ndarray,
    n_classes: int,
    min_leaf: int = 1,
    feature_picker=None,
) -> TreeNode:
    """Grow an unpruned tree.  ``feature_picker(n_features)`` selects the
    candidate feature ids evaluated at each node; default is all features."""
    if feature_picker is None:
        feature_picker = lambda d: np.arange(d)
    return _grow(X, y_idx, n_classes, min_leaf, feature_picker)


def pessimistic_errors(n: float, e: float, confidence: float) -> float:
    """Estimated errors among n cases given e observed, at the given confidence.

    Upper confidence bound of the binomial error rate, exact for e == 0 and
    normal-approximated with continuity correction otherwise.
    """
    if n <= 0:
        return 0.0
    if e >= n:
        return float(n)
    if e < 1.0:
        base = n * (1.0 - confidence ** (1.0 / n))
        if e <= 0.0:
            return base
        return base + e * (pessimistic_errors(n, 1.0, confidence) - base)
    if e + 0.5 >= n:
        return float(n)
    z = float(ndtri(1.0 - confidence))
    f = (e + 0.5) / n
    upper = (f + z * z / (2 * n) + z * np.sqrt(f / n - f * f / n + z * z / (4 * n * n))) / (
        1.0 + z * z / n
    )
    return e + max(upper * n - e, 0.0)


def _subtree_estimate(node: TreeNode, confidence: float) -> float:
    if node.is_leaf:
        return pessimistic_errors(node.counts.sum(), node.errors(), confidence)
    return _subtree_estimate(node.left, confidence) + _subtree_estimate(node.right, confidence)


def prune_tree(node: TreeNode, confidence: float) -> TreeNode:
    """Bottom-up subtree replacement under the pessimistic error estimate."""
    if node.is_leaf:
        return node
    node.left = prune_tree(node.left, confidence)
    node.right = prune_tree(node.right, confidence)
    leaf_estimate = pessimistic_errors(node.counts.sum(), node.errors(), confidence)
    if leaf_estimate <= _subtree_estimate(node, confidence) + _EPS:
        node.feature = None
        node.left = None
        node.right = None
    return node


@dataclass
class DecisionTreeModel:
    kind = "decision_tree"
    class_list: list[Characterization]
    num_columns: int
    root: TreeNode

    def _leaf(self, x: np.ndarray) -> TreeNode:
        node = self.root
        while not node.is_leaf:
            node = node.left if x[node.feature] <= node.threshold else node.right
        return node

    def predict(
        self, x: dict[int, float], x_counts: dict[int, float] | None = None
    ) -> Characterization:
        dense = row_to_dense(x, self.num_columns)
        return self.class_list[self._leaf(dense).prediction]

    def score_detail(self, x, x_counts=None) -> dict[str, float]:
        counts = self._leaf(row_to_dense(x, self.num_columns)).counts
        total = counts.sum()
        return {
            c.name: float(v / total) if total else 0.0
            for c, v in zip(self.class_list, counts)
        }


def train_decision_tree(
    params: DecisionTreeParams,
    X: FeatureMatrix,
    y: Sequence[Characterization],
) -> DecisionTreeModel:
    check_training_input(X, y)
    class_list, y_idx = encode_labels(y)
    dense = to_dense(X)
    min_leaf = max(params.min_leaf, 1)
    root = grow_tree(dense, y_idx, len(class_list), min_leaf)
    if params.prune:
        root = prune_tree(root, params.confidence)
    return DecisionTreeModel(class_list, X.num_columns, root)
