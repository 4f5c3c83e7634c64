"""Soft-margin linear SVM trained by sequential minimal optimization.

smo_solve is the bare two-class dual solver (Platt-style working-set
selection: first KKT violator outer loop, |E1 - E2| second choice, then
randomized fallbacks).  The multiclass model min-max normalizes features
to [0, 1] using training ranges, trains one machine per class pair, and
predicts by pairwise voting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .._rng import derive_rng
from ..taxonomy import Characterization
from ..textprep import FeatureMatrix
from ._common import check_training_input, encode_labels, row_to_dense, to_dense
from .params import SvmParams


class SmoConvergenceError(RuntimeError):
    """SMO hit the pair-update cap before satisfying the KKT conditions."""

    def __init__(self, updates: int, max_violation: float, alphas: np.ndarray, bias: float):
        super().__init__(
            f"SMO did not converge within {updates} pair updates "
            f"(max KKT violation {max_violation:.3g})"
        )
        self.updates = updates
        self.max_violation = max_violation
        self.alphas = alphas
        self.bias = bias


@dataclass
class SmoSolution:
    alphas: np.ndarray
    bias: float
    weights: np.ndarray  # linear kernel: w = sum_i alpha_i y_i x_i
    updates: int

    def decision(self, X: np.ndarray) -> np.ndarray:
        return X @ self.weights + self.bias


def dual_objective(X: np.ndarray, y: np.ndarray, alphas: np.ndarray) -> float:
    """Value of the dual objective sum(alpha) - ||w||^2 / 2 for a linear kernel."""
    w = (alphas * y) @ X
    return float(alphas.sum() - 0.5 * w @ w)


def kkt_violation(
    X: np.ndarray, y: np.ndarray, alphas: np.ndarray, bias: float, C: float, epsilon: float
) -> float:
    """Largest violation of the KKT optimality conditions."""
    margins = y * (X @ ((alphas * y) @ X) + bias)
    at_zero = alphas <= epsilon
    at_c = alphas >= C - epsilon
    violations = np.where(
        at_zero,
        np.maximum(0.0, 1.0 - margins),
        np.where(at_c, np.maximum(0.0, margins - 1.0), np.abs(margins - 1.0)),
    )
    return float(violations.max())


class _SmoState:
    def __init__(self, X, y, C, tolerance, epsilon, rng, max_updates):
        self.X = X
        self.y = y
        self.C = C
        self.tol = tolerance
        self.eps = epsilon
        self.rng = rng
        self.max_updates = max_updates
        n = len(y)
        self.alphas = np.zeros(n)
        self.bias = 0.0
        self.w = np.zeros(X.shape[1])
        self.errors = -y.astype(float)  # f(x) = 0 initially, E = f - y
        self.updates = 0

    def _take_step(self, i1: int, i2: int) -> bool:
        if i1 == i2:
            return False
        a1, a2 = self.alphas[i1], self.alphas[i2]
        y1, y2 = self.y[i1], self.y[i2]
        e1, e2 = self.errors[i1], self.errors[i2]
        s = y1 * y2

        if y1 != y2:
            low, high = max(0.0, a2 - a1), min(self.C, self.C + a2 - a1)
        else:
            low, high = max(0.0, a2 + a1 - self.C), min(self.C, a2 + a1)
        if high - low < self.eps:
            return False

        x1, x2 = self.X[i1], self.X[i2]
        k11 = float(x1 @ x1)
        k22 = float(x2 @ x2)
        k12 = float(x1 @ x2)
        eta = k11 + k22 - 2.0 * k12

        if eta > self.eps:
            a2_new = a2 + y2 * (e1 - e2) / eta
            a2_new = min(max(a2_new, low), high)
        else:
            # flat or degenerate direction: evaluate the objective at the ends
            f1 = y1 * (e1 + self.bias) - a1 * k11 - s * a2 * k12
            f2 = y2 * (e2 + self.bias) - s * a1 * k12 - a2 * k22
            l1 = a1 + s * (a2 - low)
            h1 = a1 + s * (a2 - high)
            obj_low = l1 * f1 + low * f2 + 0.5 * l1 * l1 * k11 + 0.5 * low * low * k22 + s * low * l1 * k12
            obj_high = h1 * f1 + high * f2 + 0.5 * h1 * h1 * k11 + 0.5 * high * high * k22 + s * high * h1 * k12
            if obj_low < obj_high - self.eps:
                a2_new = low
            elif obj_low > obj_high + self.eps:
                a2_new = high
            else:
                a2_new = a2

        if abs(a2_new - a2) < self.eps * (a2_new + a2 + self.eps):
            return False

        a1_new = a1 + s * (a2 - a2_new)
        if a1_new < 0.0:
            a1_new = 0.0
        elif a1_new > self.C:
            a1_new = self.C

        d1 = y1 * (a1_new - a1)
        d2 = y2 * (a2_new - a2)
        b1 = self.bias - e1 - d1 * k11 - d2 * k12
        b2 = self.bias - e2 - d1 * k12 - d2 * k22
        if 0.0 < a1_new < self.C:
            new_bias = b1
        elif 0.0 < a2_new < self.C:
            new_bias = b2
        else:
            new_bias = (b1 + b2) / 2.0

        self.w += d1 * x1 + d2 * x2
        self.errors += d1 * (self.X @ x1) + d2 * (self.X @ x2) + (new_bias - self.bias)
        self.bias = new_bias
        self.alphas[i1] = a1_new
        self.alphas[i2] = a2_new
        self.updates += 1
        return True

    def _non_bound(self) -> np.ndarray:
        return np.nonzero((self.alphas > self.eps) & (self.alphas < self.C - self.eps))[0]

    def _examine(self, i2: int) -> bool:
        y2, a2, e2 = self.y[i2], self.alphas[i2], self.errors[i2]
        r2 = e2 * y2
        if not ((r2 < -self.tol and a2 < self.C) or (r2 > self.tol and a2 > 0.0)):
            return False

        non_bound = self._non_bound()
        if non_bound.size > 1:
            i1 = int(non_bound[np.argmax(np.abs(self.errors[non_bound] - e2))])
            if self._take_step(i1, i2):
                return True
        if non_bound.size:
            start = int(self.rng.integers(non_bound.size))
            for j in range(non_bound.size):
                if self._take_step(int(non_bound[(start + j) % non_bound.size]), i2):
                    return True
        n = len(self.y)
        start = int(self.rng.integers(n))
        for j in range(n):
            if self._take_step((start + j) % n, i2):
                return True
        return False

    def _final_bias(self) -> float:
        """Bias consistent with the converged multipliers.

        The running threshold heuristic can drift when every multiplier ends
        at a bound; recomputing from the final solution keeps the pointwise
        optimality conditions valid.  Free support vectors pin the bias
        exactly; otherwise any value inside the feasible interval works and
        the midpoint is taken.
        """
        u = self.X @ self.w
        free = (self.alphas > self.eps) & (self.alphas < self.C - self.eps)
        if free.any():
            return float(np.mean(self.y[free] - u[free]))
        at_zero = self.alphas <= self.eps
        positive = self.y > 0
        lower_candidates = np.concatenate(
            [1.0 - u[at_zero & positive], -1.0 - u[~at_zero & ~positive]]
        )
        upper_candidates = np.concatenate(
            [-1.0 - u[at_zero & ~positive], 1.0 - u[~at_zero & positive]]
        )
        if lower_candidates.size == 0:
            return float(upper_candidates.min())
        if upper_candidates.size == 0:
            return float(lower_candidates.max())
        return float((lower_candidates.max() + upper_candidates.min()) / 2.0)

    def _check_budget(self) -> None:
        if self.updates > self.max_updates:
            violation = kkt_violation(self.X, self.y, self.alphas, self.bias, self.C, self.eps)
            raise SmoConvergenceError(self.updates, violation, self.alphas, self.bias)

    def _main_passes(self) -> None:
        n = len(self.y)
        num_changed = 0
        examine_all = True
        while num_changed > 0 or examine_all:
            num_changed = 0
            targets = range(n) if examine_all else self._non_bound()
            for i2 in targets:
                num_changed += self._examine(int(i2))
                self._check_budget()
            if examine_all:
                examine_all = False
            elif num_changed == 0:
                examine_all = True

    def _repair_bias(self) -> None:
        new_bias = self._final_bias()
        self.errors += new_bias - self.bias
        self.bias = new_bias

    def _max_violation(self) -> float:
        return kkt_violation(self.X, self.y, self.alphas, self.bias, self.C, self.eps)

    def solve(self) -> tuple[np.ndarray, float, np.ndarray, int]:
        n = len(self.y)
        while True:
            self._main_passes()
            self._repair_bias()
            if self._max_violation() <= self.tol:
                break
            # the drifting running bias can mask violators during the passes;
            # with the bias repaired, give them another chance to move
            num_changed = 0
            for i2 in range(n):
                num_changed += self._examine(i2)
                self._check_budget()
            if num_changed == 0:
                break  # no pair can improve the solution further
        return self.alphas, self.bias, self.w, self.updates


def smo_solve(
    X: np.ndarray,
    y: np.ndarray,
    C: float,
    tolerance: float = 1e-3,
    epsilon: float = 1e-12,
    seed: int = 123,
    stream: int = 0,
    max_updates: int = 1_000_000,
) -> SmoSolution:
    """Solve the two-class soft-margin dual for +-1 labels with a linear kernel.

    Returns multipliers, bias, and the primal weight vector.  The KKT
    conditions hold within ``tolerance`` on exit.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or len(y) != X.shape[0]:
        raise ValueError("X must be (n, d) with one +-1 label per row")
    if not set(np.unique(y)) <= {-1.0, 1.0}:
        raise ValueError("labels must be -1 or +1")
    rng = derive_rng(seed, "smo", stream)
    state = _SmoState(X, y, C, tolerance, epsilon, rng, max_updates)
    alphas, bias, w, updates = state.solve()
    return SmoSolution(alphas, bias, w, updates)


@dataclass
class BinaryMachine:
    neg: int  # class position voted for when the decision is <= 0
    pos: int
    weights: np.ndarray  # in normalized feature space
    bias: float

    def vote(self, x_norm: np.ndarray) -> int:
        return self.pos if float(x_norm @ self.weights + self.bias) > 0.0 else self.neg


def pairwise_predict(machines: Sequence[BinaryMachine], x_norm: np.ndarray, k: int) -> int:
    """Class position receiving most pairwise votes; ties to the lowest position."""
    if len(machines) != k * (k - 1) // 2:
        raise ValueError(f"expected {k * (k - 1) // 2} machines for {k} classes, got {len(machines)}")
    votes = np.zeros(k)
    for machine in machines:
        votes[machine.vote(x_norm)] += 1
    return int(np.argmax(votes))


@dataclass
class SvmModel:
    kind = "svm"
    class_list: list[Characterization]
    num_columns: int
    col_min: np.ndarray
    col_scale: np.ndarray  # 1 / (max - min); 0 for constant columns
    machines: list[BinaryMachine]

    def _normalize(self, x: np.ndarray) -> np.ndarray:
        return np.clip((x - self.col_min) * self.col_scale, 0.0, 1.0)

    def _votes(self, x: dict[int, float]) -> np.ndarray:
        x_norm = self._normalize(row_to_dense(x, self.num_columns))
        votes = np.zeros(len(self.class_list))
        for machine in self.machines:
            votes[machine.vote(x_norm)] += 1
        return votes

    def predict(
        self, x: dict[int, float], x_counts: dict[int, float] | None = None
    ) -> Characterization:
        return self.class_list[int(np.argmax(self._votes(x)))]

    def score_detail(self, x, x_counts=None) -> dict[str, float]:
        return {c.name: float(v) for c, v in zip(self.class_list, self._votes(x))}


def train_svm(
    params: SvmParams,
    X: FeatureMatrix,
    y: Sequence[Characterization],
    seed: int = 123,
) -> SvmModel:
    check_training_input(X, y)
    class_list, y_idx = encode_labels(y)
    dense = to_dense(X)

    col_min = dense.min(axis=0)
    col_range = dense.max(axis=0) - col_min
    col_scale = np.where(col_range > 0, 1.0 / np.where(col_range > 0, col_range, 1.0), 0.0)
    normalized = np.clip((dense - col_min) * col_scale, 0.0, 1.0)

    machines = []
    k = len(class_list)
    pair_index = 0
    for i in range(k):
        for j in range(i + 1, k):
            mask = (y_idx == i) | (y_idx == j)
            pair_x = normalized[mask]
            pair_y = np.where(y_idx[mask] == j, 1.0, -1.0)
            solution = smo_solve(
                pair_x,
                pair_y,
                params.C,
                params.tolerance,
                params.epsilon,
                seed=seed,
                stream=pair_index,
            )
            machines.append(BinaryMachine(i, j, solution.weights, solution.bias))
            pair_index += 1
    return SvmModel(class_list, X.num_columns, col_min, col_scale, machines)
