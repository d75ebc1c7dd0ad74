import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scholarmap.embedding import (
    QueryVector,
    build_vocabulary,
    compute_tfidf,
    cosine_similarity,
    embed_query,
    rank_researchers,
    smoothed_idf,
)
from scholarmap.errors import EmptyCorpusError, EmptyQueryError
from scholarmap.textproc import Document


def _doc(rid, tokens):
    return Document(researcher_id=rid, tokens=tuple(tokens), token_counts=dict(Counter(tokens)))


def brute_force_tfidf(docs):
    """Independent term-by-term evaluation of tf x (ln((1+N)/(1+df))+1) with
    L2 column normalization. Used as the oracle for compute_tfidf."""
    n = len(docs)
    terms = sorted({t for d in docs for t in d.token_counts})
    df = {t: sum(1 for d in docs if t in d.token_counts) for t in terms}
    idf = {t: math.log((1 + n) / (1 + df[t])) + 1 for t in terms}
    columns = []
    for d in docs:
        col = [d.token_counts.get(t, 0) * idf[t] for t in terms]
        norm = math.sqrt(sum(x * x for x in col))
        if norm > 0:
            col = [x / norm for x in col]
        columns.append(col)
    return terms, idf, np.array(columns).T  # terms x docs


SPEC_DOCS = [
    _doc("d1", ["apple", "apple", "banana"]),
    _doc("d2", ["banana", "cherry"]),
    _doc("d3", ["cherry", "cherry"]),
]


def test_build_vocabulary_sorted_union():
    vocab = build_vocabulary([_doc("a", ["a", "b"]), _doc("b", ["b", "c"])])
    assert vocab.terms == ("a", "b", "c")
    assert vocab.index == {"a": 0, "b": 1, "c": 2}


def test_build_vocabulary_skips_empty_docs():
    vocab = build_vocabulary([_doc("a", []), _doc("b", ["x"])])
    assert vocab.terms == ("x",)


def test_build_vocabulary_all_empty_raises():
    with pytest.raises(EmptyCorpusError):
        build_vocabulary([_doc("a", []), _doc("b", [])])


def test_tfidf_three_doc_example():
    vocab = build_vocabulary(SPEC_DOCS)
    model = compute_tfidf(SPEC_DOCS, vocab)
    n = 3
    # frozen expected values, recomputed from the formulas by hand:
    # idf(apple) = ln(4/2)+1, idf(banana) = idf(cherry) = ln(4/3)+1
    idf_apple = math.log(2) + 1
    idf_bc = math.log(4 / 3) + 1
    assert model.idf[vocab.index["apple"]] == pytest.approx(idf_apple, abs=1e-12)
    assert model.idf[vocab.index["banana"]] == pytest.approx(idf_bc, abs=1e-12)
    col1 = model.column(0)
    raw = np.array([2 * idf_apple, 1 * idf_bc, 0.0])
    expected = raw / np.linalg.norm(raw)
    np.testing.assert_allclose(col1, expected, atol=1e-12)
    # exact values 0.93470 / 0.35544 (verified with the brute-force oracle)
    assert col1[vocab.index["apple"]] == pytest.approx(0.93470, abs=5e-5)
    assert col1[vocab.index["banana"]] == pytest.approx(0.35544, abs=5e-5)


def test_tfidf_matches_brute_force_oracle():
    terms, idf, expected = brute_force_tfidf(SPEC_DOCS)
    vocab = build_vocabulary(SPEC_DOCS)
    model = compute_tfidf(SPEC_DOCS, vocab)
    assert list(vocab.terms) == terms
    dense = np.asarray(model.matrix.todense())
    np.testing.assert_allclose(dense, expected, atol=1e-12)


def test_single_doc_corpus_idf_is_one():
    docs = [_doc("only", ["x", "x", "y"])]
    vocab = build_vocabulary(docs)
    model = compute_tfidf(docs, vocab)
    np.testing.assert_allclose(model.idf, np.ones(2), atol=1e-15)
    counts = np.array([2.0, 1.0])
    np.testing.assert_allclose(model.column(0), counts / np.linalg.norm(counts), atol=1e-12)


def test_term_in_every_doc_has_idf_one():
    docs = [_doc("a", ["common", "rare"]), _doc("b", ["common"])]
    model = compute_tfidf(docs, build_vocabulary(docs))
    assert model.idf[model.vocab.index["common"]] == pytest.approx(1.0, abs=1e-15)


def test_empty_document_yields_zero_column_and_warning():
    docs = [_doc("full", ["x"]), _doc("void", [])]
    model = compute_tfidf(docs, build_vocabulary(docs))
    assert model.empty_researchers == ("void",)
    np.testing.assert_array_equal(model.column(1), np.zeros(1))


def test_columns_unit_norm_and_nonnegative(dataset):
    from scholarmap.ingest import PublicationSet
    from scholarmap.textproc import build_document

    docs = [build_document(r, PublicationSet.MOST_CITED, 1) for r in dataset.researchers]
    model = compute_tfidf(docs, build_vocabulary(docs))
    dense = np.asarray(model.matrix.todense())
    assert (dense >= 0).all()
    for j in range(dense.shape[1]):
        assert np.linalg.norm(dense[:, j]) == pytest.approx(1.0, abs=1e-9)


def test_embed_query_matched_and_dropped():
    model = compute_tfidf(SPEC_DOCS, build_vocabulary(SPEC_DOCS))
    # "apples" stems to "appl", not in this raw-token vocab -> dropped
    q = embed_query("apples banana", model)
    assert q.matched_terms == ("banana",)
    assert q.dropped_terms == ("appl",)
    assert math.isclose(sum(w * w for w in q.weights.values()) ** 0.5, 1.0, abs_tol=1e-9)


def test_embed_query_stopwords_only():
    model = compute_tfidf(SPEC_DOCS, build_vocabulary(SPEC_DOCS))
    q = embed_query("the and of", model)
    assert q.matched_terms == ()
    assert q.weights == {}


def test_cosine_similarity_basics():
    assert cosine_similarity(np.array([1.0, 0.0]), np.array([1.0, 0.0])) == pytest.approx(1.0)
    assert cosine_similarity(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0
    assert cosine_similarity(np.array([1.0, 0.0]), np.array([1.0, 1.0]) / math.sqrt(2)) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert cosine_similarity(np.zeros(2), np.array([1.0, 0.0])) == 0.0


def test_column_self_similarity(dataset):
    from scholarmap.ingest import PublicationSet
    from scholarmap.textproc import build_document

    docs = [build_document(r, PublicationSet.MOST_CITED, 1) for r in dataset.researchers]
    model = compute_tfidf(docs, build_vocabulary(docs))
    for j in range(model.n_researchers):
        col = model.column(j)
        assert cosine_similarity(col, col) == pytest.approx(1.0, abs=1e-9)


def test_rank_researchers_banana_query():
    model = compute_tfidf(SPEC_DOCS, build_vocabulary(SPEC_DOCS))
    q = embed_query("banana", model)
    top, scores = rank_researchers(model, q, 2)
    # oracle scores: score(doc) = normalized banana weight of that column
    _, idf, cols = brute_force_tfidf(SPEC_DOCS)
    b = sorted(idf)  # terms sorted: apple, banana, cherry
    banana_row = b.index("banana")
    expected = {f"d{j+1}": cols[banana_row, j] for j in range(3)}
    for rid, score in scores.items():
        assert score == pytest.approx(expected[rid], abs=1e-12)
    assert top[0][0] == "d2"
    assert len(top) == 2


def test_rank_truncates_to_n():
    model = compute_tfidf(SPEC_DOCS, build_vocabulary(SPEC_DOCS))
    q = embed_query("banana", model)
    top, _ = rank_researchers(model, q, 50)
    assert len(top) == 3


def test_rank_empty_query_raises():
    model = compute_tfidf(SPEC_DOCS, build_vocabulary(SPEC_DOCS))
    q = QueryVector(weights={}, matched_terms=(), dropped_terms=("zzz",))
    with pytest.raises(EmptyQueryError):
        rank_researchers(model, q, 5)


def test_unique_term_owner_ranks_first():
    # doc tokens are stem-fixpoints so raw queries can reach them
    docs = [_doc("a", ["alpha", "zebra"]), _doc("b", ["alpha"]), _doc("c", ["alpha", "gamma"])]
    model = compute_tfidf(docs, build_vocabulary(docs))
    q = embed_query("zebra", model)
    top, scores = rank_researchers(model, q, 3)
    assert top[0][0] == "a"
    assert scores["a"] > max(scores["b"], scores["c"])


def test_rank_tie_breaks_by_id():
    docs = [_doc("zz", ["banana"]), _doc("aa", ["banana"])]
    model = compute_tfidf(docs, build_vocabulary(docs))
    q = embed_query("banana", model)
    top, _ = rank_researchers(model, q, 2)
    assert [rid for rid, _ in top] == ["aa", "zz"]


@given(
    st.lists(
        st.lists(st.sampled_from(["aa", "bb", "cc", "dd", "ee"]), min_size=0, max_size=8),
        min_size=1,
        max_size=5,
    )
)
@settings(max_examples=200)
def test_tfidf_property_matches_oracle(token_lists):
    docs = [_doc(f"d{i}", toks) for i, toks in enumerate(token_lists)]
    if all(not d.token_counts for d in docs):
        with pytest.raises(EmptyCorpusError):
            build_vocabulary(docs)
        return
    vocab = build_vocabulary(docs)
    model = compute_tfidf(docs, vocab)
    terms, _, expected = brute_force_tfidf(docs)
    assert list(vocab.terms) == terms
    np.testing.assert_allclose(np.asarray(model.matrix.todense()), expected, atol=1e-12)


def test_query_scale_invariance():
    model = compute_tfidf(SPEC_DOCS, build_vocabulary(SPEC_DOCS))
    q1 = embed_query("banana cherry", model)
    q3 = embed_query("banana banana banana cherry cherry cherry", model)
    _, s1 = rank_researchers(model, q1, 3)
    _, s3 = rank_researchers(model, q3, 3)
    for rid in s1:
        assert s1[rid] == pytest.approx(s3[rid], abs=1e-12)


def test_smoothed_idf_formula():
    df = np.array([0.0, 1.0, 3.0])
    np.testing.assert_allclose(
        smoothed_idf(3, df),
        np.log((1 + 3) / (1 + df)) + 1,
        atol=1e-15,
    )
