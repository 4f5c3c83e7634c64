"""End-to-end text classification pipeline.

Couples a trained classifier with the vocabulary and feature construction
it was fitted with, so raw description text can be classified directly.
Model files are versioned JSON documents that reload to bit-identical
predictions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import classifiers
from ._json import canonical_json
from .classifiers.params import AlgorithmSpec
from .classifiers.serialize import (
    ModelFormatError,
    model_from_dict,
    model_to_dict,
    spec_from_dict,
    spec_to_dict,
)
from .corpus import Corpus
from .taxonomy import Characterization
from .textprep import (
    Vocabulary,
    build_vocabulary,
    count_transform,
    preprocess,
    tfidf_transform,
)

FORMAT_NAME = "vulnchar-model"
FORMAT_VERSION = 1


@dataclass
class TextModel:
    spec: AlgorithmSpec
    vocabulary: Vocabulary
    model: object

    def predict_text(self, text: str) -> "TextPrediction":
        tokens = preprocess(text)
        x = tfidf_transform([tokens], self.vocabulary).rows[0]
        x_counts = count_transform([tokens], self.vocabulary).rows[0]
        label = self.model.predict(x, x_counts)
        scores = None
        if hasattr(self.model, "score_detail"):
            scores = self.model.score_detail(x, x_counts)
        return TextPrediction(label, scores, tokens)


@dataclass
class TextPrediction:
    label: Characterization
    scores: dict[str, float] | None
    tokens: list[str]


def train_text_model(spec: AlgorithmSpec, corpus: Corpus, workers: int = 1) -> TextModel:
    """Fit vocabulary and features on the whole corpus, then train the model."""
    tokens = [preprocess(d) for d in corpus.descriptions]
    vocabulary = build_vocabulary(tokens)
    x = tfidf_transform(tokens, vocabulary)
    x_counts = count_transform(tokens, vocabulary)
    model = classifiers.train(spec, x, corpus.labels, X_counts=x_counts, workers=workers)
    return TextModel(spec, vocabulary, model)


def _vocabulary_to_dict(vocab: Vocabulary) -> dict:
    terms = [None] * len(vocab.term_index)
    for term, col in vocab.term_index.items():
        terms[col] = term
    return {
        "terms": terms,
        "doc_frequency": dict(vocab.doc_frequency),
        "num_documents": vocab.num_documents,
    }


def _vocabulary_from_dict(data: dict) -> Vocabulary:
    terms = data["terms"]
    return Vocabulary(
        term_index={t: i for i, t in enumerate(terms)},
        doc_frequency={t: int(n) for t, n in data["doc_frequency"].items()},
        num_documents=int(data["num_documents"]),
    )


def save_text_model(text_model: TextModel, path: str | Path) -> None:
    document = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "spec": spec_to_dict(text_model.spec),
        "vocabulary": _vocabulary_to_dict(text_model.vocabulary),
        "model": model_to_dict(text_model.model),
    }
    Path(path).write_text(canonical_json(document), "utf-8")


def load_text_model(path: str | Path) -> TextModel:
    try:
        document = json.loads(Path(path).read_text("utf-8"))
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"{path}: not valid JSON: {e.msg}") from e
    if not isinstance(document, dict) or document.get("format") != FORMAT_NAME:
        raise ModelFormatError(f"{path}: not a {FORMAT_NAME} document")
    if document.get("version") != FORMAT_VERSION:
        raise ModelFormatError(f"{path}: unsupported model version {document.get('version')!r}")
    return TextModel(
        spec=spec_from_dict(document["spec"]),
        vocabulary=_vocabulary_from_dict(document["vocabulary"]),
        model=model_from_dict(document["model"]),
    )
