"""Text preprocessing and TF-IDF feature construction.

The cleaning pipeline, applied in order: lowercase, URL removal,
tokenization on runs of non-alphanumeric characters, stopword removal,
stemming.  All functions here are pure; preprocessing one document never
depends on another.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from importlib import resources
from typing import IO, Iterable, Sequence

from . import porter
from .taxonomy import Characterization

# scheme://... or www.... up to the next whitespace
_URL_RE = re.compile(r"(?:[a-z][a-z0-9+.-]*://|www\.)\S*")
_NON_ALNUM_RE = re.compile(r"[^a-z0-9]+")


def _load_default_stopwords() -> frozenset[str]:
    text = resources.files("vulnchar.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(text.split())


DEFAULT_STOPWORDS = _load_default_stopwords()


def preprocess(
    text: str,
    stopwords: frozenset[str] | None = None,
    stemmer=porter.stem,
) -> list[str]:
    """Clean free text into a list of lowercase word stems.

    Empty input yields an empty list.  ``stopwords`` and ``stemmer`` may be
    swapped out; defaults are the bundled English list and the Porter stemmer.
    """
    if stopwords is None:
        stopwords = DEFAULT_STOPWORDS
    lowered = text.lower()
    no_urls = _URL_RE.sub(" ", lowered)
    tokens = [t for t in _NON_ALNUM_RE.split(no_urls) if t]
    kept = [t for t in tokens if t not in stopwords]
    return [stemmer(t) for t in kept]


@dataclass
class Vocabulary:
    """Term-to-column mapping with document frequencies.

    Column ids are assigned in first-occurrence order over the corpus the
    vocabulary was built from.  ``doc_frequency`` counts documents containing
    a term, not token occurrences.
    """

    term_index: dict[str, int]
    doc_frequency: dict[str, int]
    num_documents: int

    @property
    def size(self) -> int:
        return len(self.term_index)


@dataclass
class FeatureMatrix:
    """Sparse document-term matrix.

    Each row maps column id to a strictly positive weight; zeros are never
    stored.  Row order matches the input document order.
    """

    rows: list[dict[int, float]]
    num_columns: int
    row_labels: list[Characterization] | None = None

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)


def build_vocabulary(docs: Sequence[Sequence[str]]) -> Vocabulary:
    """Assign column ids in first-occurrence order and count document frequencies."""
    term_index: dict[str, int] = {}
    doc_frequency: dict[str, int] = {}
    for doc in docs:
        for token in doc:
            if token not in term_index:
                term_index[token] = len(term_index)
        for token in set(doc):
            doc_frequency[token] = doc_frequency.get(token, 0) + 1
    return Vocabulary(term_index, doc_frequency, len(docs))


def _term_counts(doc: Iterable[str], vocab: Vocabulary) -> dict[int, int]:
    counts: dict[int, int] = {}
    index = vocab.term_index
    for token in doc:
        col = index.get(token)
        if col is not None:
            counts[col] = counts.get(col, 0) + 1
    return counts


def tfidf_transform(
    docs: Sequence[Sequence[str]],
    vocab: Vocabulary,
    labels: Sequence[Characterization] | None = None,
) -> FeatureMatrix:
    """Weight each (term, doc) as ln(1 + tf) * ln(N / df).

    N and df always come from ``vocab``, so transforming unseen documents
    reuses the training statistics.  Terms present in every vocabulary
    document (df == N) get weight 0 and are left out of the sparse rows;
    terms absent from the vocabulary are dropped.
    """
    n = vocab.num_documents
    idf: dict[int, float] = {}
    for term, col in vocab.term_index.items():
        df = vocab.doc_frequency[term]
        if df < n:
            idf[col] = math.log(n / df)
    rows = []
    for doc in docs:
        row = {}
        for col, tf in _term_counts(doc, vocab).items():
            weight = idf.get(col)
            if weight is not None:
                row[col] = math.log(1 + tf) * weight
        rows.append(row)
    return FeatureMatrix(rows, vocab.size, list(labels) if labels is not None else None)


def count_transform(
    docs: Sequence[Sequence[str]],
    vocab: Vocabulary,
    labels: Sequence[Characterization] | None = None,
) -> FeatureMatrix:
    """Raw term-count matrix over the vocabulary columns (for count-based models)."""
    rows = [
        {col: float(tf) for col, tf in _term_counts(doc, vocab).items()}
        for doc in docs
    ]
    return FeatureMatrix(rows, vocab.size, list(labels) if labels is not None else None)


def dump_matrix(matrix: FeatureMatrix, out: IO[str]) -> None:
    """Write the matrix as a 'rows cols nnz' header plus 'row col weight' triples.

    Weights are printed with 10 significant digits.
    """
    out.write(f"{matrix.num_rows} {matrix.num_columns} {matrix.nnz()}\n")
    for i, row in enumerate(matrix.rows):
        for col in sorted(row):
            out.write(f"{i} {col} {row[col]:.10g}\n")
