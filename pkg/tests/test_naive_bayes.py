import math

import pytest

from vulnchar.classifiers import algorithm_spec, train
from vulnchar.classifiers.naive_bayes import nb_posterior, train_naive_bayes
from vulnchar.classifiers.params import NaiveBayesParams
from vulnchar.taxonomy import characterization
from vulnchar.textprep import FeatureMatrix, build_vocabulary, count_transform

READ = characterization("read")
WRITE = characterization("write")


def two_doc_setup():
    docs = [["read", "data"], ["write", "data"]]
    vocab = build_vocabulary(docs)
    counts = count_transform(docs, vocab)
    model = train_naive_bayes(NaiveBayesParams(), counts, [READ, WRITE])
    return vocab, counts, model


def test_hand_computed_posterior():
    vocab, counts, model = two_doc_setup()
    x = {vocab.term_index["read"]: 1.0}
    scores = nb_posterior(model, x)
    # priors 1/2 each; with add-1 smoothing over V=3: P(read|Read)=2/5, P(read|Write)=1/5
    read_pos = model.class_list.index(READ)
    write_pos = model.class_list.index(WRITE)
    assert scores[read_pos] == pytest.approx(math.log(0.5) + math.log(0.4), abs=1e-12)
    assert scores[write_pos] == pytest.approx(math.log(0.5) + math.log(0.2), abs=1e-12)
    assert model.predict(x) is READ


def test_empty_vector_falls_back_to_max_prior():
    vocab = build_vocabulary([["r"], ["r2"], ["w"]])
    counts = count_transform([["r"], ["r2"], ["w"]], vocab)
    model = train_naive_bayes(NaiveBayesParams(), counts, [READ, READ, WRITE])
    assert model.predict({}) is READ  # prior 2/3 beats 1/3


def test_symmetric_scores_tie_to_lowest_index():
    docs = [["alpha"], ["alpha"]]
    vocab = build_vocabulary(docs)
    counts = count_transform(docs, vocab)
    model = train_naive_bayes(NaiveBayesParams(), counts, [WRITE, READ])
    scores = nb_posterior(model, {vocab.term_index["alpha"]: 1.0})
    assert scores[0] == pytest.approx(scores[1], abs=1e-12)
    # write has the lower taxonomy index (9 < 10)
    assert model.predict({vocab.term_index["alpha"]: 1.0}) is WRITE


def test_unseen_term_shifts_all_scores_equally():
    vocab, counts, model = two_doc_setup()
    base = nb_posterior(model, {vocab.term_index["read"]: 1.0})
    # "data" occurs in both classes with equal counts: adding it shifts both
    # scores by the same amount, so the argmax cannot change
    shifted = nb_posterior(
        model, {vocab.term_index["read"]: 1.0, vocab.term_index["data"]: 1.0}
    )
    deltas = shifted - base
    assert deltas[0] == pytest.approx(deltas[1], abs=1e-12)


def test_argmax_invariant_under_count_scaling():
    # claimed on toy corpora: scaling every raw count by the same integer
    # shifts the smoothed likelihoods but cannot flip any argmax there
    corpora = [
        ([["read", "data"], ["write", "data"]], [READ, WRITE]),
        (
            [
                ["read", "leak", "data"],
                ["read", "read", "leak"],
                ["write", "tamper", "data"],
                ["write", "tamper", "tamper"],
            ],
            [READ, READ, WRITE, WRITE],
        ),
    ]
    for docs, labels in corpora:
        vocab = build_vocabulary(docs)
        X = count_transform(docs, vocab)
        base_model = train_naive_bayes(NaiveBayesParams(), X, labels)
        probes = X.rows + [
            {vocab.term_index["read"]: 1.0},
            {vocab.term_index["write"]: 2.0},
            {},
        ]
        for m in (2, 3, 7, 20):
            scaled = FeatureMatrix(
                [{c: w * m for c, w in row.items()} for row in X.rows], X.num_columns
            )
            scaled_model = train_naive_bayes(NaiveBayesParams(), scaled, labels)
            for probe in probes:
                assert base_model.predict(probe) is scaled_model.predict(probe)


def test_tfidf_input_mode():
    docs = [["read", "read", "data"], ["write", "data"], ["read", "x"], ["write", "y"]]
    vocab = build_vocabulary(docs)
    counts = count_transform(docs, vocab)
    labels = [READ, WRITE, READ, WRITE]
    spec = algorithm_spec("naive_bayes", input="tfidf")
    from vulnchar.textprep import tfidf_transform

    tfidf = tfidf_transform(docs, vocab)
    model = train(spec, tfidf, labels, X_counts=counts)
    # tfidf mode must ignore the counts matrix
    assert model.input == "tfidf"
    assert model.predict(tfidf.rows[0], counts.rows[0]) is READ


def test_training_predictions_correct_on_toy_corpus():
    vocab, counts, model = two_doc_setup()
    assert model.predict(counts.rows[0]) is READ
    assert model.predict(counts.rows[1]) is WRITE
