"""Algorithm selection and per-kind hyperparameters.

Defaults mirror the tuned configurations the toolkit is built around:
C4.5-style tree with pruning confidence 0.4, linear-kernel SMO SVM with
C=0.5, a 320-tree random forest examining one random feature per split,
100-round boosted SVM with full-size resampling, and a five-member
majority vote.  Seed defaults to 123 everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

KINDS = (
    "naive_bayes",
    "decision_tree",
    "svm",
    "random_forest",
    "adaboost_svm",
    "majority_vote",
)

DEFAULT_SEED = 123


class InvalidParamsError(ValueError):
    pass


@dataclass(frozen=True)
class NaiveBayesParams:
    # multinomial likelihoods want raw term counts; "tfidf" treats weights
    # as fractional counts instead
    input: str = "counts"

    def __post_init__(self):
        if self.input not in ("counts", "tfidf"):
            raise InvalidParamsError(f"naive_bayes input must be counts or tfidf, got {self.input!r}")


@dataclass(frozen=True)
class DecisionTreeParams:
    confidence: float = 0.4
    min_leaf: int = 0  # clamped to 1 at training time; a 0-instance leaf is meaningless
    prune: bool = True

    def __post_init__(self):
        if not 0.0 < self.confidence <= 0.5:
            raise InvalidParamsError(f"confidence must be in (0, 0.5], got {self.confidence}")
        if self.min_leaf < 0:
            raise InvalidParamsError(f"min_leaf must be >= 0, got {self.min_leaf}")


@dataclass(frozen=True)
class SvmParams:
    C: float = 0.5
    tolerance: float = 1e-3
    epsilon: float = 1e-12
    degree: int = 1

    def __post_init__(self):
        if self.C <= 0:
            raise InvalidParamsError(f"C must be > 0, got {self.C}")
        if self.tolerance <= 0 or self.epsilon <= 0:
            raise InvalidParamsError("tolerance and epsilon must be > 0")
        if self.degree != 1:
            raise InvalidParamsError("only the degree-1 (linear) polynomial kernel is supported")


@dataclass(frozen=True)
class RandomForestParams:
    num_trees: int = 320
    features_per_split: int = 1
    min_leaf: int = 1
    bag_fraction: float = 1.0

    def __post_init__(self):
        if self.num_trees < 1:
            raise InvalidParamsError(f"num_trees must be >= 1, got {self.num_trees}")
        if self.features_per_split < 1:
            raise InvalidParamsError("features_per_split must be >= 1")
        if self.min_leaf < 1:
            raise InvalidParamsError("min_leaf must be >= 1")
        if not 0.0 < self.bag_fraction <= 1.0:
            raise InvalidParamsError("bag_fraction must be in (0, 1]")


@dataclass(frozen=True)
class AdaBoostParams:
    iterations: int = 100
    resample_fraction: float = 1.0
    base: SvmParams = SvmParams()

    def __post_init__(self):
        if self.iterations < 1:
            raise InvalidParamsError("iterations must be >= 1")
        if not 0.0 < self.resample_fraction <= 1.0:
            raise InvalidParamsError("resample_fraction must be in (0, 1]")


@dataclass(frozen=True)
class MajorityVoteParams:
    members: tuple[str, ...] = (
        "naive_bayes",
        "svm",
        "decision_tree",
        "random_forest",
        "adaboost_svm",
    )
    rule: str = "MAJ"

    def __post_init__(self):
        if not self.members:
            raise InvalidParamsError("majority_vote needs at least one member")
        bad = [m for m in self.members if m not in KINDS or m == "majority_vote"]
        if bad:
            raise InvalidParamsError(f"invalid vote members: {bad}")
        if self.rule != "MAJ":
            raise InvalidParamsError(f"only the MAJ combination rule is supported, got {self.rule!r}")


_PARAMS_BY_KIND = {
    "naive_bayes": NaiveBayesParams,
    "decision_tree": DecisionTreeParams,
    "svm": SvmParams,
    "random_forest": RandomForestParams,
    "adaboost_svm": AdaBoostParams,
    "majority_vote": MajorityVoteParams,
}


@dataclass(frozen=True)
class AlgorithmSpec:
    kind: str
    params: object
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        expected = _PARAMS_BY_KIND.get(self.kind)
        if expected is None:
            raise InvalidParamsError(f"unknown algorithm kind {self.kind!r}; expected one of {KINDS}")
        if not isinstance(self.params, expected):
            raise InvalidParamsError(
                f"{self.kind} expects {expected.__name__}, got {type(self.params).__name__}"
            )


def algorithm_spec(kind: str, seed: int = DEFAULT_SEED, **overrides) -> AlgorithmSpec:
    """Build a spec for ``kind`` with defaults, overriding individual parameters."""
    cls = _PARAMS_BY_KIND.get(kind)
    if cls is None:
        raise InvalidParamsError(f"unknown algorithm kind {kind!r}; expected one of {KINDS}")
    if kind == "adaboost_svm" and "base" in overrides and isinstance(overrides["base"], dict):
        overrides["base"] = SvmParams(**overrides["base"])
    if kind == "majority_vote" and "members" in overrides:
        overrides["members"] = tuple(overrides["members"])
    valid = {f.name for f in fields(cls)}
    unknown = set(overrides) - valid
    if unknown:
        raise InvalidParamsError(f"unknown parameter(s) for {kind}: {sorted(unknown)}")
    return AlgorithmSpec(kind, cls(**overrides), seed)
