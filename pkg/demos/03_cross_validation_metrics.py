"""Stratified 10-fold cross-validation with the full metric set.

Run: python demos/03_cross_validation_metrics.py
"""

from vulnchar.classifiers import KINDS, algorithm_spec
from vulnchar.evaluation import (
    cross_validate,
    rbp,
    report_to_markdown,
    score_matrix_from_reports,
    score_matrix_to_markdown,
    stratified_folds,
)
from vulnchar.synthetic import load_bundled_corpus

corpus = load_bundled_corpus()

# Stratification keeps every class proportionally represented per fold.
folds = stratified_folds(corpus.labels, k=10, seed=123)
per_fold = [len(folds.test_indices(f)) for f in range(10)]
print("fold sizes:", per_fold)
print()

reports = {}
for kind in KINDS:
    report = cross_validate(algorithm_spec(kind), corpus, k=10, seed=123)
    reports[kind] = report
    print(f"{kind:15s} accuracy={report.accuracy:.3f} kappa={report.kappa:.3f}")
print()

# One full per-class report.
print(report_to_markdown(reports["svm"], title="svm (10-fold)"))

# The per-class F1 grid feeds the ratio-of-best-performance summary.
matrix = score_matrix_from_reports(reports, corpus.classes())
result = rbp(matrix)
print(score_matrix_to_markdown(matrix, result))
