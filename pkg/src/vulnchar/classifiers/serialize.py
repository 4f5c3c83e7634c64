"""Model state <-> JSON-serializable dictionaries.

Dictionaries hold only JSON scalar/list/dict types; floats keep full
precision through the canonical writer, so a reloaded model predicts
bit-identically.
"""

from __future__ import annotations

from dataclasses import asdict

import numpy as np

from ..taxonomy import Characterization, characterization
from .boost import AdaBoostModel
from .forest import RandomForestModel
from .naive_bayes import NaiveBayesModel
from .params import AlgorithmSpec, algorithm_spec
from .svm import BinaryMachine, SvmModel
from .tree import DecisionTreeModel, TreeNode
from .vote import MajorityVoteModel


class ModelFormatError(ValueError):
    pass


def spec_to_dict(spec: AlgorithmSpec) -> dict:
    return {"kind": spec.kind, "seed": spec.seed, "params": asdict(spec.params)}


def spec_from_dict(data: dict) -> AlgorithmSpec:
    params = dict(data.get("params", {}))
    return algorithm_spec(data["kind"], seed=data.get("seed", 123), **params)


def _classes_to_names(classes: list[Characterization]) -> list[str]:
    return [c.name for c in classes]


def _names_to_classes(names: list[str]) -> list[Characterization]:
    return [characterization(n) for n in names]


def _node_to_dict(node: TreeNode) -> dict:
    data = {
        "counts": node.counts.tolist(),
        "prediction": node.prediction,
    }
    if not node.is_leaf:
        data.update(
            feature=node.feature,
            threshold=float(node.threshold),
            left=_node_to_dict(node.left),
            right=_node_to_dict(node.right),
        )
    return data


def _node_from_dict(data: dict) -> TreeNode:
    node = TreeNode(
        counts=np.array(data["counts"], dtype=float),
        prediction=int(data["prediction"]),
    )
    if "feature" in data:
        node.feature = int(data["feature"])
        node.threshold = float(data["threshold"])
        node.left = _node_from_dict(data["left"])
        node.right = _node_from_dict(data["right"])
    return node


def _svm_state(model: SvmModel) -> dict:
    return {
        "classes": _classes_to_names(model.class_list),
        "num_columns": model.num_columns,
        "col_min": model.col_min.tolist(),
        "col_scale": model.col_scale.tolist(),
        "machines": [
            {
                "neg": m.neg,
                "pos": m.pos,
                "weights": m.weights.tolist(),
                "bias": float(m.bias),
            }
            for m in model.machines
        ],
    }


def _svm_from_state(state: dict) -> SvmModel:
    return SvmModel(
        class_list=_names_to_classes(state["classes"]),
        num_columns=int(state["num_columns"]),
        col_min=np.array(state["col_min"], dtype=float),
        col_scale=np.array(state["col_scale"], dtype=float),
        machines=[
            BinaryMachine(
                int(m["neg"]), int(m["pos"]), np.array(m["weights"], dtype=float), float(m["bias"])
            )
            for m in state["machines"]
        ],
    )


def model_to_dict(model) -> dict:
    kind = model.kind
    if kind == "naive_bayes":
        state = {
            "classes": _classes_to_names(model.class_list),
            "num_columns": model.num_columns,
            "log_priors": model.log_priors.tolist(),
            "log_likelihoods": model.log_likelihoods.tolist(),
            "input": model.input,
        }
    elif kind == "decision_tree":
        state = {
            "classes": _classes_to_names(model.class_list),
            "num_columns": model.num_columns,
            "root": _node_to_dict(model.root),
        }
    elif kind == "svm":
        state = _svm_state(model)
    elif kind == "random_forest":
        state = {
            "classes": _classes_to_names(model.class_list),
            "num_columns": model.num_columns,
            "seed": model.seed,
            "trees": [_node_to_dict(t) for t in model.trees],
        }
    elif kind == "adaboost_svm":
        state = {
            "classes": _classes_to_names(model.class_list),
            "num_columns": model.num_columns,
            "members": [_svm_state(m) for m in model.members],
            "betas": [float(b) for b in model.betas],
        }
    elif kind == "majority_vote":
        state = {
            "classes": _classes_to_names(model.class_list),
            "num_columns": model.num_columns,
            "member_kinds": list(model.member_kinds),
            "members": [model_to_dict(m) for m in model.members],
        }
    else:
        raise ModelFormatError(f"cannot serialize model kind {kind!r}")
    return {"kind": kind, "state": state}


def model_from_dict(data: dict):
    try:
        kind = data["kind"]
        state = data["state"]
    except (TypeError, KeyError) as e:
        raise ModelFormatError("model document must carry kind and state") from e

    if kind == "naive_bayes":
        return NaiveBayesModel(
            class_list=_names_to_classes(state["classes"]),
            num_columns=int(state["num_columns"]),
            log_priors=np.array(state["log_priors"], dtype=float),
            log_likelihoods=np.array(state["log_likelihoods"], dtype=float),
            input=state.get("input", "counts"),
        )
    if kind == "decision_tree":
        return DecisionTreeModel(
            class_list=_names_to_classes(state["classes"]),
            num_columns=int(state["num_columns"]),
            root=_node_from_dict(state["root"]),
        )
    if kind == "svm":
        return _svm_from_state(state)
    if kind == "random_forest":
        return RandomForestModel(
            class_list=_names_to_classes(state["classes"]),
            num_columns=int(state["num_columns"]),
            trees=[_node_from_dict(t) for t in state["trees"]],
            seed=int(state["seed"]),
        )
    if kind == "adaboost_svm":
        return AdaBoostModel(
            class_list=_names_to_classes(state["classes"]),
            num_columns=int(state["num_columns"]),
            members=[_svm_from_state(m) for m in state["members"]],
            betas=[float(b) for b in state["betas"]],
        )
    if kind == "majority_vote":
        return MajorityVoteModel(
            class_list=_names_to_classes(state["classes"]),
            num_columns=int(state["num_columns"]),
            member_kinds=tuple(state["member_kinds"]),
            members=[model_from_dict(m) for m in state["members"]],
        )
    raise ModelFormatError(f"cannot load model kind {kind!r}")
