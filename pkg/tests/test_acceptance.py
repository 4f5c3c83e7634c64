"""Acceptance suite: the binding end-to-end checks, one test per criterion.

Each test prints a single PASS line (visible with pytest -s or in failure
output); tolerances are pinned in the assertions, not configurable.
"""

import json
import math
import time
from importlib import resources
from pathlib import Path

import numpy as np
import pytest

from conftest import random_confusion
from vulnchar.classifiers import algorithm_spec
from vulnchar.classifiers.svm import kkt_violation, smo_solve
from vulnchar.cli import main
from vulnchar.evaluation import (
    ConfusionMatrix,
    cross_validate,
    rbp,
    read_score_matrix,
    report_from_confusion,
    stratified_folds,
)
from vulnchar.stats import conover
from vulnchar.synthetic import bundled_corpus_path, make_synthetic_corpus
from vulnchar.taxonomy import CHARACTERIZATIONS
from vulnchar.textprep import build_vocabulary, preprocess, tfidf_transform

ALL_KINDS = (
    "naive_bayes",
    "decision_tree",
    "svm",
    "random_forest",
    "adaboost_svm",
    "majority_vote",
)


def fixture_path() -> str:
    return str(resources.files("vulnchar.data").joinpath("paper_f1_table.csv"))


def test_acceptance_01_fixture_friedman_statistics(tmp_path):
    start = time.perf_counter()
    code = main(["stats", fixture_path(), "--out", str(tmp_path)])
    elapsed = time.perf_counter() - start
    assert code == 0
    payload = json.loads((tmp_path / "significance.json").read_text())
    assert payload["df"] == 5
    assert abs(payload["chi_squared"] - 19.38312) <= 1.5
    assert payload["p_value"] < 0.01
    assert elapsed < 1.0
    print(
        f"ACCEPTANCE 1: PASS: stats on fixture: chi2={payload['chi_squared']:.5f} "
        f"(|delta|<=1.5), df=5, p={payload['p_value']:.5f}<0.01, {elapsed:.2f}s<1s"
    )


def test_acceptance_02_fixture_rbp_exact():
    result = rbp(read_score_matrix(fixture_path()))
    assert result.num_classes == 19
    assert result.wins == {
        "naive_bayes": 3,
        "decision_tree": 4,
        "svm": 7,
        "random_forest": 3,
        "adaboost_svm": 7,
        "majority_vote": 8,
    }
    rounded = {name: round(ratio, 2) for name, ratio in result.ratios.items()}
    assert rounded == {
        "naive_bayes": 0.16,
        "decision_tree": 0.21,
        "svm": 0.37,
        "random_forest": 0.16,
        "adaboost_svm": 0.37,
        "majority_vote": 0.42,
    }
    print(f"ACCEPTANCE 2: PASS: RBP wins {result.wins} of 19, ratios round to the bundled reference row")


def test_acceptance_03_fixture_conover_orderings():
    pairwise = conover(read_score_matrix(fixture_path()))
    svm_ada = pairwise.lookup("svm", "adaboost_svm")
    svm_dt = pairwise.lookup("svm", "decision_tree")
    mv_rf = pairwise.lookup("majority_vote", "random_forest")
    mv_svm = pairwise.lookup("majority_vote", "svm")
    mv_ada = pairwise.lookup("majority_vote", "adaboost_svm")
    assert svm_ada >= 0.9
    assert svm_dt < 1e-3
    assert mv_rf < 1e-3
    assert 0.01 <= mv_svm <= 0.9
    assert 0.01 <= mv_ada <= 0.9
    print(
        "ACCEPTANCE 3: PASS: Conover p(svm,ada)="
        f"{svm_ada:.2f}>=0.9, p(svm,dt)={svm_dt:.1e}<1e-3, p(mv,rf)={mv_rf:.1e}<1e-3, "
        f"p(mv,svm)=p(mv,ada)={mv_svm:.3f} in [0.01,0.9]"
    )


def test_acceptance_04_synthetic_cross_validation_all_six():
    corpus = make_synthetic_corpus()
    assert len(corpus) == 100 and len(corpus.class_counts) == 5
    start = time.perf_counter()
    results = {}
    for kind in ALL_KINDS:
        report = cross_validate(algorithm_spec(kind), corpus, k=10, seed=123)
        results[kind] = (report.accuracy, report.kappa)
        assert report.accuracy >= 0.9, f"{kind} accuracy {report.accuracy}"
        assert report.kappa >= 0.85, f"{kind} kappa {report.kappa}"
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    summary = ", ".join(f"{kind}={acc:.2f}/{kap:.2f}" for kind, (acc, kap) in results.items())
    print(f"ACCEPTANCE 4: PASS: 10-fold CV acc/kappa: {summary} in {elapsed:.1f}s<60s")


def test_acceptance_05_metric_oracle_suite():
    rng = np.random.default_rng(20240901)
    checked = 0
    for _ in range(1000):
        truth, predicted, classes = random_confusion(rng, max_classes=10, max_items=1000)
        confusion = ConfusionMatrix.from_pairs(truth, predicted, classes)
        report = report_from_confusion(confusion)
        n = len(truth)
        correct = sum(t is p for t, p in zip(truth, predicted))
        assert abs(report.accuracy - correct / n) <= 1e-12
        observed = correct / n
        chance = 0.0
        for cls in classes:
            true_share = sum(t is cls for t in truth) / n
            predicted_share = sum(p is cls for p in predicted) / n
            chance += true_share * predicted_share
        expected_kappa = 0.0 if chance >= 1.0 else (observed - chance) / (1.0 - chance)
        assert abs(report.kappa - expected_kappa) <= 1e-12
        for cls in classes:
            tp = sum(1 for t, p in zip(truth, predicted) if t is cls and p is cls)
            fp = sum(1 for t, p in zip(truth, predicted) if t is not cls and p is cls)
            fn = sum(1 for t, p in zip(truth, predicted) if t is cls and p is not cls)
            precision = tp / (tp + fp) if tp + fp else 0.0
            recall = tp / (tp + fn) if tp + fn else 0.0
            f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
            assert abs(report.per_class[cls].precision - precision) <= 1e-12
            assert abs(report.per_class[cls].recall - recall) <= 1e-12
            assert abs(report.per_class[cls].f1 - f1) <= 1e-12
        checked += 1
    print(f"ACCEPTANCE 5: PASS: {checked} random confusion vectors match brute force to 1e-12")


def test_acceptance_06_smo_analytic_and_kkt():
    X = np.array([[0.0], [2.0]])
    y = np.array([-1.0, 1.0])
    solution = smo_solve(X, y, C=0.5)
    assert solution.alphas == pytest.approx([0.5, 0.5], abs=1e-3)
    assert solution.bias == pytest.approx(-1.0, abs=1e-3)
    boundary = -solution.bias / solution.weights[0]
    assert boundary == pytest.approx(1.0, abs=1e-3)
    assert float(np.array([3.0]) @ solution.weights + solution.bias) > 0

    rng = np.random.default_rng(2718)
    worst = 0.0
    for trial in range(25):
        d = int(rng.integers(1, 5))
        n = int(rng.integers(2, 9))
        direction = rng.normal(size=d)
        direction /= np.linalg.norm(direction)
        Xr = rng.normal(size=(2 * n, d))
        side = np.concatenate([-np.ones(n), np.ones(n)])
        Xr += np.outer(side * (1.0 + rng.random(2 * n)), direction)
        margins_ok = np.sign(Xr @ direction)
        yr = np.where(margins_ok >= 0, 1.0, -1.0)
        if len(set(yr)) < 2:
            continue
        sol = smo_solve(Xr, yr, C=0.5, tolerance=1e-3, seed=trial)
        worst = max(worst, kkt_violation(Xr, yr, sol.alphas, sol.bias, 0.5, 1e-12))
    assert worst <= 1e-3
    print(
        "ACCEPTANCE 6: PASS: two-point SMO alphas=(0.5,0.5), b=-1, boundary=1 within 1e-3; "
        f"max KKT violation {worst:.2e} <= 1e-3 across separable sets"
    )


def _tree_files(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()
    }


def test_acceptance_07_byte_identical_reports_across_workers(tmp_path):
    dataset = str(bundled_corpus_path())
    outs = {}
    for tag, workers in (("w1", 1), ("w4", 4), ("w1b", 1)):
        out = tmp_path / f"cv_{tag}"
        code = main(
            [
                "cv", "--dataset", dataset, "--algo", "all", "--k", "10",
                "--seed", "123", "--out", str(out), "--format", "both",
                "--workers", str(workers),
            ]
        )
        assert code == 0
        outs[tag] = _tree_files(out)
    assert outs["w1"].keys() == outs["w4"].keys() == outs["w1b"].keys()
    assert outs["w1"] == outs["w4"] == outs["w1b"]

    models = {}
    for tag, workers in (("w1", 1), ("w4", 4)):
        path = tmp_path / f"model_{tag}.json"
        code = main(
            [
                "train", "--dataset", dataset, "--algo", "random_forest",
                "--seed", "123", "--model", str(path), "--workers", str(workers),
            ]
        )
        assert code == 0
        models[tag] = path.read_bytes()
    assert models["w1"] == models["w4"]
    n_files = len(outs["w1"])
    print(
        f"ACCEPTANCE 7: PASS: {n_files} cv report files and the trained model are "
        "byte-identical at 1 and 4 worker threads (and across repeat runs)"
    )


def test_acceptance_08_stratification_and_fold_hygiene():
    rng = np.random.default_rng(31415)
    for _ in range(500):
        k = int(rng.integers(2, 11))
        n = int(rng.integers(k, 200))
        y = [CHARACTERIZATIONS[i] for i in rng.integers(0, 19, size=n)]
        folds = stratified_folds(y, k, int(rng.integers(1 << 30)))
        for cls in set(y):
            per_fold = [sum(1 for i in folds.test_indices(f) if y[i] is cls) for f in range(k)]
            assert max(per_fold) - min(per_fold) <= 1

    corpus = make_synthetic_corpus()
    tokens = [preprocess(d) for d in corpus.descriptions]
    folds = stratified_folds(corpus.labels, 10, seed=123)
    for f in range(10):
        train_docs = [tokens[i] for i in folds.train_indices(f)]
        test_docs = [tokens[i] for i in folds.test_indices(f)]
        vocab = build_vocabulary(train_docs)
        train_tokens = {t for doc in train_docs for t in doc}
        test_only = {t for doc in test_docs for t in doc} - train_tokens
        assert vocab.term_index.keys() == train_tokens
        assert not test_only & vocab.term_index.keys()
        transformed = tfidf_transform(test_docs, vocab)
        assert transformed.num_columns == vocab.size
    print(
        "ACCEPTANCE 8: PASS: 500 random label vectors keep per-class fold spread <= 1; "
        "fold vocabularies never contain test-only tokens"
    )


def test_acceptance_09_tfidf_hand_case():
    docs = [["apple", "apple", "banana"], ["banana"]]
    vocab = build_vocabulary(docs)
    matrix = tfidf_transform(docs, vocab)
    apple = vocab.term_index["apple"]
    banana = vocab.term_index["banana"]
    weight = matrix.rows[0][apple]
    assert abs(weight - math.log(3) * math.log(2)) <= 1e-12
    assert banana not in matrix.rows[0] and banana not in matrix.rows[1]
    print(
        f"ACCEPTANCE 9: PASS: weight(apple,d1)={weight:.12f} == ln3*ln2 within 1e-12; "
        "weight(banana,*) == 0"
    )
