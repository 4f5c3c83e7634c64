"""Random forest of unpruned threshold trees over bootstrap samples.

Every tree draws its bootstrap and its per-node candidate features from an
RNG stream keyed by (seed, tree index), so training is deterministic no
matter how many worker threads build trees.  Vote ties are broken by a
seeded random pick among the tied classes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .._rng import derive_rng
from ..taxonomy import Characterization
from ..textprep import FeatureMatrix
from ._common import check_training_input, encode_labels, row_to_dense, to_dense
from .params import RandomForestParams
from .tree import TreeNode, grow_tree


@dataclass
class RandomForestModel:
    kind = "random_forest"
    class_list: list[Characterization]
    num_columns: int
    trees: list[TreeNode]
    seed: int

    def _tree_vote(self, tree: TreeNode, x: np.ndarray) -> int:
        node = tree
        while not node.is_leaf:
            node = node.left if x[node.feature] <= node.threshold else node.right
        return node.prediction

    def votes(self, x: dict[int, float]) -> np.ndarray:
        dense = row_to_dense(x, self.num_columns)
        counts = np.zeros(len(self.class_list))
        for tree in self.trees:
            counts[self._tree_vote(tree, dense)] += 1
        return counts

    def predict(
        self, x: dict[int, float], x_counts: dict[int, float] | None = None
    ) -> Characterization:
        counts = self.votes(x)
        tied = np.nonzero(counts == counts.max())[0]
        if tied.size == 1:
            return self.class_list[int(tied[0])]
        rng = derive_rng(self.seed, "forest_tie", *tied.tolist())
        return self.class_list[int(tied[rng.integers(tied.size)])]

    def score_detail(self, x, x_counts=None) -> dict[str, float]:
        return {c.name: float(v) for c, v in zip(self.class_list, self.votes(x))}


def _grow_random_tree(
    dense: np.ndarray,
    y_idx: np.ndarray,
    n_classes: int,
    params: RandomForestParams,
    seed: int,
    tree_index: int,
) -> TreeNode:
    rng = derive_rng(seed, "forest_tree", tree_index)
    n, d = dense.shape
    bag_size = max(1, round(params.bag_fraction * n))
    bootstrap = rng.integers(0, n, size=bag_size)
    subset = min(params.features_per_split, d)

    def picker(n_features: int) -> np.ndarray:
        return np.sort(rng.choice(n_features, size=subset, replace=False))

    return grow_tree(dense[bootstrap], y_idx[bootstrap], n_classes, params.min_leaf, picker)


def train_random_forest(
    params: RandomForestParams,
    X: FeatureMatrix,
    y: Sequence[Characterization],
    seed: int = 123,
    workers: int = 1,
) -> RandomForestModel:
    check_training_input(X, y)
    class_list, y_idx = encode_labels(y)
    dense = to_dense(X)
    n_classes = len(class_list)

    def build(t: int) -> TreeNode:
        return _grow_random_tree(dense, y_idx, n_classes, params, seed, t)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trees = list(pool.map(build, range(params.num_trees)))
    else:
        trees = [build(t) for t in range(params.num_trees)]
    return RandomForestModel(class_list, X.num_columns, trees, seed)
