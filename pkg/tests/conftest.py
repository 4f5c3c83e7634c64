from __future__ import annotations

import numpy as np
import pytest

from vulnchar.corpus import Corpus, LabeledExample
from vulnchar.taxonomy import characterization


def example(cve_serial: int, description: str, label: str) -> LabeledExample:
    return LabeledExample(f"CVE-2020-{10000 + cve_serial}", description, characterization(label))


@pytest.fixture
def toy_corpus() -> Corpus:
    """Two clearly separable classes, enough for any classifier."""
    docs = []
    serial = 0
    for i in range(6):
        docs.append(example(serial, f"attacker can read confidential data record {i}", "read"))
        serial += 1
    for i in range(6):
        docs.append(example(serial, f"attacker can write tampered data record {i}", "write"))
        serial += 1
    return Corpus(tuple(docs))


@pytest.fixture
def fixture_matrix():
    from importlib import resources

    from vulnchar.evaluation import read_score_matrix

    path = resources.files("vulnchar.data").joinpath("paper_f1_table.csv")
    return read_score_matrix(str(path))


def random_confusion(rng: np.random.Generator, max_classes: int = 10, max_items: int = 1000):
    """Random (truth, prediction) label pairs over a random class subset."""
    from vulnchar.taxonomy import CHARACTERIZATIONS

    k = int(rng.integers(2, max_classes + 1))
    n = int(rng.integers(1, max_items + 1))
    classes = [CHARACTERIZATIONS[i] for i in sorted(rng.choice(19, size=k, replace=False))]
    truth = [classes[i] for i in rng.integers(0, k, size=n)]
    predicted = [classes[i] for i in rng.integers(0, k, size=n)]
    return truth, predicted, classes
