"""Pipeline orchestration: one MapState per parameter combination.

A MapState bundles everything the API and UI need for one (publication set,
keyword emphasis, cluster count, seed) combination. The embedding stage
(TFIDF + PCA) is cached separately from the clustering stage, since the
cluster slider only re-runs the GMM.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass

from . import clustering, embedding, projection, textproc
from .clustering import DEFAULT_SEED, Ellipse, GmmModel
from .embedding import TfidfModel
from .errors import EmptyQueryError, InvalidKError
from .ingest import Dataset, PublicationSet
from .projection import Coords2D, PcaModel

DEFAULT_EMPHASIS = 1
CACHE_SIZE = 16


@dataclass(frozen=True)
class MapParams:
    pub_set: PublicationSet = PublicationSet.MOST_CITED
    emphasis: int = DEFAULT_EMPHASIS
    k: int = 5
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not 0 <= self.emphasis <= textproc.MAX_EMPHASIS:
            raise ValueError(f"emphasis {self.emphasis} outside [0, {textproc.MAX_EMPHASIS}]")
        if self.k < 1:
            raise InvalidKError(self.k, None)

    def embedding_key(self) -> tuple:
        return (self.pub_set, self.emphasis)


@dataclass(frozen=True)
class ResearcherSummary:
    id: str
    name: str
    affiliation: str
    keywords: tuple[str, ...]
    citation_count: int
    scholar_url: str
    photo_url: str


@dataclass(frozen=True)
class MapState:
    params: MapParams
    coords: Coords2D
    labels: tuple[int, ...]
    colors: tuple[int, ...]            # per researcher, palette index of their cluster
    ellipses: tuple[Ellipse, ...]      # indexed by palette color
    tfidf: TfidfModel
    pca: PcaModel
    gmm: GmmModel
    summaries: tuple[ResearcherSummary, ...]


def default_params(dataset: Dataset) -> MapParams:
    return MapParams(k=clustering.default_k(len(dataset.researchers)))


def _summaries(dataset: Dataset) -> tuple[ResearcherSummary, ...]:
    return tuple(
        ResearcherSummary(
            id=r.id,
            name=r.name,
            affiliation=r.affiliation,
            keywords=r.keywords,
            citation_count=r.citation_count,
            scholar_url=r.scholar_url,
            photo_url=r.photo_url,
        )
        for r in dataset.researchers
    )


def build_embedding_stage(dataset: Dataset, pub_set: PublicationSet, emphasis: int):
    documents = [textproc.build_document(r, pub_set, emphasis) for r in dataset.researchers]
    vocab = embedding.build_vocabulary(documents)
    tfidf = embedding.compute_tfidf(documents, vocab)
    pca = projection.fit_pca(tfidf.matrix)
    coords = projection.project(pca, tfidf.matrix)
    return tfidf, pca, coords


def build_map_state(dataset: Dataset, params: MapParams) -> MapState:
    tfidf, pca, coords = build_embedding_stage(dataset, params.pub_set, params.emphasis)
    return _cluster_stage(dataset, params, tfidf, pca, coords)


def _cluster_stage(dataset: Dataset, params: MapParams, tfidf, pca, coords) -> MapState:
    gmm = clustering.fit_gmm(coords, params.k, params.seed)
    palette = clustering.assign_colors(gmm)
    colors = tuple(palette[int(label)] for label in gmm.labels)
    # ellipses ordered by palette index so ellipse i carries color i
    by_color = sorted(range(gmm.k), key=lambda comp: palette[comp])
    ellipses = tuple(
        clustering.ellipse_params(gmm.means[comp], gmm.covariances[comp]) for comp in by_color
    )
    return MapState(
        params=params,
        coords=coords,
        labels=tuple(int(x) for x in gmm.labels),
        colors=colors,
        ellipses=ellipses,
        tfidf=tfidf,
        pca=pca,
        gmm=gmm,
        summaries=_summaries(dataset),
    )


def query_map(state: MapState, text: str, k_top: int = embedding.DEFAULT_TOP_K):
    """Topic query against the state's TFIDF model."""
    q = embedding.embed_query(text, state.tfidf)
    if not q.matched_terms:
        raise EmptyQueryError("no query term matches the vocabulary")
    top, scores = embedding.rank_researchers(state.tfidf, q, k_top)
    return {
        "matched_terms": list(q.matched_terms),
        "dropped_terms": list(q.dropped_terms),
        "top": top,
        "scores": scores,
    }


def search_names(state: MapState, needle: str) -> list[ResearcherSummary]:
    """Case-insensitive substring match over researcher names."""
    needle = needle.strip().lower()
    if not needle:
        return []
    return [s for s in state.summaries if needle in s.name.lower()]


class MapStateCache:
    """Bounded two-stage cache over one dataset.

    Stage 1 keys (pub_set, emphasis) -> (tfidf, pca, coords); stage 2 keys the
    full params -> MapState. Both are LRU-bounded; lookups and inserts swap
    atomically under one lock so concurrent builders never see partial state.
    """

    def __init__(self, dataset: Dataset, max_entries: int = CACHE_SIZE):
        self.dataset = dataset
        self.max_entries = max_entries
        self._stage1: OrderedDict = OrderedDict()
        self._stage2: OrderedDict = OrderedDict()
        self._lock = threading.Lock()
        self._build_locks: dict[MapParams, threading.Lock] = {}

    def get(self, params: MapParams) -> MapState:
        with self._lock:
            if params in self._stage2:
                self._stage2.move_to_end(params)
                return self._stage2[params]
            build_lock = self._build_locks.setdefault(params, threading.Lock())

        # concurrent identical requests wait for one build instead of repeating it
        with build_lock:
            with self._lock:
                if params in self._stage2:
                    self._stage2.move_to_end(params)
                    return self._stage2[params]
            state = self._build(params)
            with self._lock:
                self._stage2[params] = state
                self._stage2.move_to_end(params)
                while len(self._stage2) > self.max_entries:
                    self._stage2.popitem(last=False)
                self._build_locks.pop(params, None)
            return state

    def _build(self, params: MapParams) -> MapState:
        ekey = params.embedding_key()
        with self._lock:
            stage1 = self._stage1.get(ekey)
        if stage1 is None:
            stage1 = build_embedding_stage(self.dataset, params.pub_set, params.emphasis)
            with self._lock:
                self._stage1[ekey] = stage1
                self._stage1.move_to_end(ekey)
                while len(self._stage1) > self.max_entries:
                    self._stage1.popitem(last=False)
        return _cluster_stage(self.dataset, params, *stage1)
