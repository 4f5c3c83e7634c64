"""Deterministic synthetic dataset of separable vulnerability descriptions.

Five characterization classes, each with its own injected keyword set plus
shared noise words that carry no class signal (several appear in every
document, exercising the df == N zero-weight path).  The bundled JSON
Lines copy under vulnchar/data was produced by make_synthetic_corpus with
the default arguments.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ._rng import derive_rng
from .corpus import Corpus, LabeledExample, load_labeled
from .taxonomy import characterization

CLASS_KEYWORDS = {
    "read": ("read", "disclosure", "confidential"),
    "write": ("write", "tamper", "alteration"),
    "memory": ("memory", "buffer", "heap"),
    "network_traffic": ("packet", "traffic", "interception"),
    "privilege_escalation": ("privilege", "escalation", "root"),
}

_NOISE = (
    "crafted",
    "request",
    "handler",
    "server",
    "application",
    "module",
    "endpoint",
    "parser",
    "session",
    "payload",
    "interface",
    "daemon",
)


def make_synthetic_corpus(seed: int = 123, docs_per_class: int = 20) -> Corpus:
    examples = []
    serial = 10000
    for class_index, (name, keywords) in enumerate(sorted(CLASS_KEYWORDS.items())):
        label = characterization(name)
        for i in range(docs_per_class):
            rng = derive_rng(seed, "synthetic", class_index, i)
            words = (
                [keywords[0]] * (1 + int(rng.integers(3)))
                + [keywords[1]] * (1 + int(rng.integers(2)))
                + [keywords[2]] * int(rng.integers(3))
            )
            words += [_NOISE[j] for j in rng.integers(0, len(_NOISE), size=3 + int(rng.integers(4)))]
            words = [words[j] for j in rng.permutation(len(words))]
            description = (
                "A vulnerability in the product allows a remote attacker to cause "
                + " ".join(words)
                + " issues."
            )
            if rng.random() < 0.3:
                description += f" See https://advisories.example/{serial} for details."
            examples.append(LabeledExample(f"CVE-2024-{serial}", description, label))
            serial += 1
    return Corpus(tuple(examples))


def bundled_corpus_path() -> Path:
    """Path of the packaged copy of the default synthetic dataset."""
    return Path(str(resources.files("vulnchar.data").joinpath("synthetic_corpus.jsonl")))


def load_bundled_corpus() -> Corpus:
    return load_labeled(bundled_corpus_path())
