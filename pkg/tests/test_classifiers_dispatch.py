import pytest

from vulnchar.classifiers import KINDS, SingleClassError, algorithm_spec, predict, train
from vulnchar.classifiers.params import InvalidParamsError
from vulnchar.corpus import Corpus, LabeledExample
from vulnchar.taxonomy import characterization
from vulnchar.textprep import build_vocabulary, count_transform, preprocess, tfidf_transform

READ = characterization("read")
WRITE = characterization("write")


def features(corpus):
    tokens = [preprocess(d) for d in corpus.descriptions]
    vocab = build_vocabulary(tokens)
    return tfidf_transform(tokens, vocab), count_transform(tokens, vocab)


def fast_spec(kind, seed=123):
    overrides = {"num_trees": 20} if kind == "random_forest" else {}
    return algorithm_spec(kind, seed=seed, **overrides)


@pytest.fixture
def two_doc_corpus():
    return Corpus(
        (
            LabeledExample("CVE-2020-1000", "attacker reads confidential data", READ),
            LabeledExample("CVE-2020-1001", "attacker writes tampered data", WRITE),
        )
    )


@pytest.mark.parametrize("kind", KINDS)
def test_two_doc_corpus_training_predictions(kind, two_doc_corpus):
    X, counts = features(two_doc_corpus)
    model = train(fast_spec(kind), X, two_doc_corpus.labels, X_counts=counts)
    for x, xc, label in zip(X.rows, counts.rows, two_doc_corpus.labels):
        assert predict(model, x, xc) is label


@pytest.mark.parametrize("kind", KINDS)
def test_training_rows_recovered_on_separable_set(kind, toy_corpus):
    X, counts = features(toy_corpus)
    model = train(fast_spec(kind), X, toy_corpus.labels, X_counts=counts)
    for x, xc, label in zip(X.rows, counts.rows, toy_corpus.labels):
        assert predict(model, x, xc) is label


@pytest.mark.parametrize("kind", KINDS)
def test_prediction_always_in_class_list(kind, toy_corpus):
    X, counts = features(toy_corpus)
    model = train(fast_spec(kind), X, toy_corpus.labels, X_counts=counts)
    probes = [{}, {0: 5.0}, {X.num_columns - 1: 0.01}]
    for x in probes:
        assert predict(model, x, x) in model.class_list


@pytest.mark.parametrize("kind", KINDS)
def test_same_spec_and_data_twice_identical_predictions(kind, toy_corpus):
    X, counts = features(toy_corpus)
    first = train(fast_spec(kind, seed=123), X, toy_corpus.labels, X_counts=counts)
    second = train(fast_spec(kind, seed=123), X, toy_corpus.labels, X_counts=counts)
    probes = X.rows + [{}, {1: 0.7, 3: 0.2}]
    probe_counts = counts.rows + [{}, {1: 1.0, 3: 1.0}]
    for x, xc in zip(probes, probe_counts):
        assert predict(first, x, xc) is predict(second, x, xc)


def test_single_class_input_rejected(two_doc_corpus):
    X, counts = features(two_doc_corpus)
    with pytest.raises(SingleClassError):
        train(algorithm_spec("naive_bayes"), X, [READ, READ], X_counts=counts)


def test_dimension_mismatch_rejected(two_doc_corpus):
    X, counts = features(two_doc_corpus)
    with pytest.raises(ValueError, match="rows"):
        train(algorithm_spec("naive_bayes"), X, [READ])
    from vulnchar.textprep import FeatureMatrix

    with pytest.raises(ValueError, match="same shape"):
        train(
            algorithm_spec("naive_bayes"),
            X,
            two_doc_corpus.labels,
            X_counts=FeatureMatrix([{}, {}], X.num_columns + 1),
        )


def test_invalid_params_rejected():
    with pytest.raises(InvalidParamsError):
        algorithm_spec("svm", C=-1.0)
    with pytest.raises(InvalidParamsError):
        algorithm_spec("svm", kernel="rbf")
    with pytest.raises(InvalidParamsError):
        algorithm_spec("nonsense")


def test_empty_vector_degenerate_inputs(toy_corpus):
    X, counts = features(toy_corpus)
    nb = train(algorithm_spec("naive_bayes"), X, toy_corpus.labels, X_counts=counts)
    tree = train(algorithm_spec("decision_tree"), X, toy_corpus.labels)
    assert predict(nb, {}, {}) in nb.class_list  # max-prior fallback
    assert predict(tree, {}) in tree.class_list  # majority leaf on the zero path
