import io
import math
import re

import numpy as np
import pytest

from vulnchar.porter import stem
from vulnchar.textprep import (
    DEFAULT_STOPWORDS,
    build_vocabulary,
    count_transform,
    dump_matrix,
    preprocess,
    tfidf_transform,
)


class TestPreprocess:
    def test_stopwords_removed_and_stems_applied(self):
        tokens = preprocess("A vulnerability in the web framework")
        assert tokens == [stem("vulnerability"), stem("web"), stem("framework")]
        assert tokens == ["vulner", "web", "framework"]

    def test_urls_removed_before_tokenization(self):
        for text in (
            "see http://www.securityfocus.com/bid/99202 now",
            "see https://example.org/a?b=c#d now",
            "see www.example.org/path now",
        ):
            tokens = preprocess(text)
            joined = " ".join(tokens)
            for fragment in ("http", "www", "securityfocus", "example", "org", "bid", "99202"):
                assert fragment not in joined

    def test_empty_input(self):
        assert preprocess("") == []
        assert preprocess("   \t\n") == []
        assert preprocess("the a in of") == []

    def test_tokens_match_alnum_and_stopword_freedom(self):
        text = "Attackers EXPLOIT #buffer-overflows, reading /etc/passwd (CVE-2017-0144)!"
        raw = [t for t in re.split(r"[^a-z0-9]+", text.lower()) if t]
        kept = [t for t in raw if t not in DEFAULT_STOPWORDS]
        tokens = preprocess(text)
        assert tokens == [stem(t) for t in kept]
        assert all(re.fullmatch(r"[a-z0-9]+", t) for t in tokens)

    def test_pure_function(self):
        text = "A crafted PACKET triggers memory corruption, see https://x.example/y."
        assert preprocess(text) == preprocess(text)

    def test_custom_stopwords_and_stemmer(self):
        tokens = preprocess("alpha beta gamma", stopwords=frozenset({"beta"}), stemmer=str.upper)
        assert tokens == ["ALPHA", "GAMMA"]


class TestVocabulary:
    def test_document_frequency_counts_documents_not_tokens(self):
        vocab = build_vocabulary([["a", "b", "a"], ["b"]])
        assert vocab.doc_frequency == {"a": 1, "b": 2}
        assert vocab.size == 2
        assert vocab.num_documents == 2

    def test_first_occurrence_column_order(self):
        vocab = build_vocabulary([["z", "m"], ["a", "z", "q"]])
        assert vocab.term_index == {"z": 0, "m": 1, "a": 2, "q": 3}

    def test_single_doc(self):
        vocab = build_vocabulary([["x"]])
        assert vocab.doc_frequency == {"x": 1}
        assert vocab.num_documents == 1

    def test_all_empty_docs(self):
        vocab = build_vocabulary([[], []])
        assert vocab.size == 0
        assert vocab.num_documents == 2


class TestTfidf:
    def test_hand_computed_weights(self):
        docs = [["apple", "apple", "banana"], ["banana"]]
        vocab = build_vocabulary(docs)
        matrix = tfidf_transform(docs, vocab)
        apple = vocab.term_index["apple"]
        banana = vocab.term_index["banana"]
        assert matrix.rows[0][apple] == pytest.approx(math.log(3) * math.log(2), abs=1e-12)
        # df == N terms are structural zeros, omitted from the sparse rows
        assert banana not in matrix.rows[0]
        assert banana not in matrix.rows[1]
        assert matrix.rows[1] == {}

    def test_absent_term_has_no_entry(self):
        docs = [["x", "y"], ["x"]]
        vocab = build_vocabulary(docs)
        matrix = tfidf_transform(docs, vocab)
        assert vocab.term_index["y"] not in matrix.rows[1]

    def test_single_doc_corpus_is_all_zero(self):
        docs = [["x", "y", "x"]]
        vocab = build_vocabulary(docs)
        matrix = tfidf_transform(docs, vocab)
        assert matrix.rows == [{}]

    def test_unseen_terms_dropped_at_transform(self):
        vocab = build_vocabulary([["x", "y"], ["x"]])
        matrix = tfidf_transform([["y", "novel"]], vocab)
        assert set(matrix.rows[0]) == {vocab.term_index["y"]}

    def test_training_transform_keeps_every_informative_token(self):
        rng = np.random.default_rng(11)
        words = [f"w{i}" for i in range(12)]
        docs = [
            [words[j] for j in rng.integers(0, len(words), size=rng.integers(1, 10))]
            for _ in range(8)
        ]
        vocab = build_vocabulary(docs)
        matrix = tfidf_transform(docs, vocab)
        n = vocab.num_documents
        for doc, row in zip(docs, matrix.rows):
            for token in doc:
                assert token in vocab.term_index
                if vocab.doc_frequency[token] < n:
                    assert vocab.term_index[token] in row

    def test_brute_force_reconstruction(self):
        rng = np.random.default_rng(5)
        words = [f"t{i}" for i in range(9)]
        docs = [
            [words[j] for j in rng.integers(0, len(words), size=rng.integers(0, 12))]
            for _ in range(10)
        ]
        vocab = build_vocabulary([d for d in docs])
        matrix = tfidf_transform(docs, vocab)
        n = vocab.num_documents
        for doc, row in zip(docs, matrix.rows):
            dense = np.zeros(vocab.size)
            for col, w in row.items():
                dense[col] = w
            for term, col in vocab.term_index.items():
                tf = doc.count(term)
                df = vocab.doc_frequency[term]
                expected = math.log(1 + tf) * math.log(n / df) if tf and df < n else 0.0
                assert dense[col] == pytest.approx(expected, abs=0.0)

    def test_monotonic_in_tf_and_df(self):
        # fixed df: weight strictly increasing in tf
        weights_tf = [math.log(1 + tf) * math.log(10 / 3) for tf in range(1, 8)]
        assert all(b > a for a, b in zip(weights_tf, weights_tf[1:]))
        # fixed tf >= 1: weight strictly decreasing in df
        weights_df = [math.log(1 + 2) * math.log(10 / df) for df in range(1, 10)]
        assert all(b < a for a, b in zip(weights_df, weights_df[1:]))

    def test_count_transform(self):
        docs = [["a", "a", "b"], ["b"]]
        vocab = build_vocabulary(docs)
        counts = count_transform(docs, vocab)
        assert counts.rows[0] == {vocab.term_index["a"]: 2.0, vocab.term_index["b"]: 1.0}


def test_dump_matrix_format():
    docs = [["apple", "apple", "banana"], ["banana", "pear"]]
    vocab = build_vocabulary(docs)
    matrix = tfidf_transform(docs, vocab)
    out = io.StringIO()
    dump_matrix(matrix, out)
    lines = out.getvalue().strip().split("\n")
    rows, cols, nnz = map(int, lines[0].split())
    assert (rows, cols) == (2, 3)
    assert nnz == len(lines) - 1
    for line in lines[1:]:
        r, c, w = line.split()
        assert int(r) < rows and int(c) < cols
        value = float(w)
        assert value > 0
        # 10 significant digits round-trip the printed value
        assert float(f"{value:.10g}") == value
