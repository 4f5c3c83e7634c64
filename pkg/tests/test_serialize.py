import json

import pytest

from vulnchar._json import canonical_json
from vulnchar.classifiers import KINDS, algorithm_spec, train
from vulnchar.classifiers.serialize import (
    ModelFormatError,
    model_from_dict,
    model_to_dict,
    spec_from_dict,
    spec_to_dict,
)
from vulnchar.pipeline import load_text_model, save_text_model, train_text_model
from vulnchar.textprep import build_vocabulary, count_transform, preprocess, tfidf_transform


def corpus_features(corpus):
    tokens = [preprocess(d) for d in corpus.descriptions]
    vocab = build_vocabulary(tokens)
    return tfidf_transform(tokens, vocab), count_transform(tokens, vocab)


@pytest.mark.parametrize("kind", KINDS)
def test_round_trip_predictions_bit_identical(kind, toy_corpus):
    X, counts = corpus_features(toy_corpus)
    spec = algorithm_spec(kind, **({"num_trees": 10} if kind == "random_forest" else {}))
    model = train(spec, X, toy_corpus.labels, X_counts=counts)

    document = canonical_json(model_to_dict(model))
    reloaded = model_from_dict(json.loads(document))

    probes = X.rows + [{}, {0: 0.25}]
    probe_counts = counts.rows + [{}, {0: 1.0}]
    for x, xc in zip(probes, probe_counts):
        assert model.predict(x, xc) is reloaded.predict(x, xc)
        if hasattr(model, "score_detail"):
            assert model.score_detail(x, xc) == reloaded.score_detail(x, xc)


def test_serialized_floats_have_17_significant_digits():
    text = canonical_json({"x": 1 / 3})
    assert "0.33333333333333331" in text


def test_spec_round_trip():
    spec = algorithm_spec("svm", seed=77, C=1.25)
    again = spec_from_dict(spec_to_dict(spec))
    assert again == spec
    boost = algorithm_spec("adaboost_svm", iterations=3)
    assert spec_from_dict(spec_to_dict(boost)) == boost


def test_text_model_file_round_trip(tmp_path, toy_corpus):
    tm = train_text_model(algorithm_spec("naive_bayes"), toy_corpus)
    path = tmp_path / "model.json"
    save_text_model(tm, path)
    reloaded = load_text_model(path)

    text = "the attacker may read confidential records"
    assert reloaded.predict_text(text).label is tm.predict_text(text).label
    assert reloaded.predict_text(text).scores == tm.predict_text(text).scores

    again = tmp_path / "resaved.json"
    save_text_model(reloaded, again)
    assert again.read_bytes() == path.read_bytes()


def test_corrupt_model_file_rejected(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ModelFormatError):
        load_text_model(path)
    path.write_text('{"format": "something-else", "version": 1}')
    with pytest.raises(ModelFormatError):
        load_text_model(path)
    path.write_text('{"format": "vulnchar-model", "version": 99}')
    with pytest.raises(ModelFormatError):
        load_text_model(path)


def test_unknown_kind_rejected():
    with pytest.raises(ModelFormatError):
        model_from_dict({"kind": "perceptron", "state": {}})
    with pytest.raises(ModelFormatError):
        model_from_dict({"nope": 1})
