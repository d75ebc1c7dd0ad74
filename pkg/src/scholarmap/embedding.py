"""TFIDF researcher embeddings and cosine-similarity topic queries.

Each researcher is a column of a sparse term-by-researcher matrix:
raw term count scaled by smoothed idf, then L2-normalized per column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import textproc
from .errors import EmptyCorpusError, EmptyQueryError
from .textproc import Document

DEFAULT_TOP_K = 5


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    index: dict[str, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class TfidfModel:
    vocab: Vocabulary
    doc_freq: np.ndarray          # per-term document counts
    idf: np.ndarray               # per-term weights
    matrix: sp.csc_matrix         # terms x researchers, columns L2-normalized
    researcher_ids: tuple[str, ...]
    empty_researchers: tuple[str, ...] = ()  # zero columns, warned about

    @property
    def n_researchers(self) -> int:
        return len(self.researcher_ids)

    def column(self, i: int) -> np.ndarray:
        return np.asarray(self.matrix[:, i].todense()).ravel()


@dataclass(frozen=True)
class QueryVector:
    weights: dict[str, float]     # term -> weight, supported on matched_terms
    matched_terms: tuple[str, ...]
    dropped_terms: tuple[str, ...]

    def dense(self, vocab: Vocabulary) -> np.ndarray:
        v = np.zeros(len(vocab))
        for term, w in self.weights.items():
            v[vocab.index[term]] = w
        return v


def build_vocabulary(documents: list[Document]) -> Vocabulary:
    terms: set[str] = set()
    for doc in documents:
        terms.update(doc.token_counts)
    if not terms:
        raise EmptyCorpusError("all documents are empty")
    ordered = tuple(sorted(terms))
    return Vocabulary(terms=ordered, index={t: i for i, t in enumerate(ordered)})


def smoothed_idf(n_docs: int, doc_freq: np.ndarray) -> np.ndarray:
    return np.log((1.0 + n_docs) / (1.0 + doc_freq)) + 1.0


def compute_tfidf(documents: list[Document], vocab: Vocabulary) -> TfidfModel:
    n = len(documents)
    d = len(vocab)
    doc_freq = np.zeros(d)
    for doc in documents:
        for term in doc.token_counts:
            doc_freq[vocab.index[term]] += 1
    idf = smoothed_idf(n, doc_freq)

    rows, cols, vals = [], [], []
    empty = []
    for j, doc in enumerate(documents):
        if not doc.token_counts:
            empty.append(doc.researcher_id)
            continue
        entries = sorted((vocab.index[t], c) for t, c in doc.token_counts.items())
        col = np.array([count * idf[i] for i, count in entries])
        col /= np.linalg.norm(col)
        rows.extend(i for i, _ in entries)
        cols.extend([j] * len(entries))
        vals.extend(col)

    matrix = sp.csc_matrix((vals, (rows, cols)), shape=(d, n))
    return TfidfModel(
        vocab=vocab,
        doc_freq=doc_freq,
        idf=idf,
        matrix=matrix,
        researcher_ids=tuple(doc.researcher_id for doc in documents),
        empty_researchers=tuple(empty),
    )


def embed_query(text: str, model: TfidfModel) -> QueryVector:
    """Normalize query text and weight it with the corpus idf."""
    tokens = textproc.normalize(text)
    counts: dict[str, int] = {}
    dropped = []
    for tok in tokens:
        if tok in model.vocab.index:
            counts[tok] = counts.get(tok, 0) + 1
        else:
            dropped.append(tok)
    if not counts:
        return QueryVector(weights={}, matched_terms=(), dropped_terms=tuple(dropped))
    weights = {t: c * model.idf[model.vocab.index[t]] for t, c in counts.items()}
    norm = math.sqrt(sum(w * w for w in weights.values()))
    weights = {t: w / norm for t, w in weights.items()}
    return QueryVector(
        weights=weights,
        matched_terms=tuple(sorted(counts)),
        dropped_terms=tuple(dropped),
    )


def cosine_similarity(q: np.ndarray, v: np.ndarray) -> float:
    qn = np.linalg.norm(q)
    vn = np.linalg.norm(v)
    if qn == 0.0 or vn == 0.0:
        return 0.0
    # non-negative weights keep cosine in [0, 1]; clamp float jitter
    return float(min(np.dot(q, v) / (qn * vn), 1.0))


def rank_researchers(
    model: TfidfModel, q: QueryVector, k: int = DEFAULT_TOP_K
) -> tuple[list[tuple[str, float]], dict[str, float]]:
    """Top-k researchers by cosine score, plus the full score map.

    Ties break by researcher id ascending. Columns and the query vector are
    unit-norm (or zero), so the score is a plain dot product.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not q.matched_terms:
        raise EmptyQueryError("query has no terms in the vocabulary")
    qvec = q.dense(model.vocab)
    raw = qvec @ model.matrix
    scores = {rid: float(min(s, 1.0)) for rid, s in zip(model.researcher_ids, raw)}
    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    return ranked[: min(k, len(ranked))], scores
