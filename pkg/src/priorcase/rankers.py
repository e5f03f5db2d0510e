"""Ranking functions over a frozen corpus index.

Scorers (see docs/scoring.md for the exact formulas):

    tfidf_cos         cosine similarity of TF-IDF vectors
    bm25              ATIRE BM25 (default variant)
    bm25_okapi        Okapi BM25 with an epsilon floor on negative IDF
    bm25l             BM25L (lower-bounded length normalization)
    bm25plus          BM25+ (additive lower bound on term frequency)
    fused             ATIRE BM25 score times TF-IDF cosine
    rake_tfidf        TF-IDF cosine restricted to RAKE keyword vocabulary
    commonwords_bm25  distinct-term overlap count times ATIRE BM25
    embed             mean cosine between query vector and document chunks

Every scorer returns a full ranking over the corpus: scores descending,
ties broken by ascending document id.  All scorers are pure functions of
(query, index, parameters), so scoring is safe to run concurrently.
"""

from __future__ import annotations

import math
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .embeddings import EmbeddingStore, aggregate_chunk_similarity
from .index import CorpusIndex, PipelineMismatchError
from .rake import default_keyword_count, rake_extract
from .stopwords import ENGLISH_STOPWORDS
from .textproc import PipelineConfig, TokenStream, pipeline_fingerprint, tokenize_normalize

Ranking = list[tuple[str, float]]
SparseVector = dict[str, float]


class Variant(Enum):
    """BM25 flavor; ATIRE is the default used by `bm25` and `fused`."""

    ATIRE = "atire"
    OKAPI = "okapi"
    BM25L = "bm25l"
    BM25PLUS = "bm25plus"


@dataclass(frozen=True)
class BM25Params:
    """Tuning knobs shared by the BM25 variants.

    `delta` is only read by BM25L and BM25+; when left as None it
    resolves to 0.5 for BM25L and 1.0 for BM25+.  `epsilon` is only read
    by Okapi, whose IDF can go negative.
    """

    k1: float = 1.5
    b: float = 0.75
    epsilon: float = 0.25
    delta: float | None = None

    def __post_init__(self) -> None:
        if self.k1 <= 0:
            raise ValueError("k1 must be > 0")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError("b must be in [0, 1]")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        if self.delta is not None and self.delta < 0:
            raise ValueError("delta must be >= 0")

    def delta_for(self, variant: Variant) -> float:
        if self.delta is not None:
            return self.delta
        return 0.5 if variant is Variant.BM25L else 1.0


SCORER_NAMES = (
    "tfidf_cos",
    "bm25",
    "bm25_okapi",
    "bm25l",
    "bm25plus",
    "fused",
    "rake_tfidf",
    "commonwords_bm25",
    "embed",
)

_SCORER_VARIANTS = {
    "bm25": Variant.ATIRE,
    "bm25_okapi": Variant.OKAPI,
    "bm25l": Variant.BM25L,
    "bm25plus": Variant.BM25PLUS,
}


# ---------------------------------------------------------------------------
# term-level scoring

def tfidf_weight(tf: int, n_docs: int, df: int) -> float:
    """TF-IDF weight tf * ln(n_docs / df) of one term."""
    if n_docs < 1:
        raise ValueError("n_docs must be >= 1")
    if df < 1 or df > n_docs:
        raise ValueError(f"df must be in [1, n_docs]; got df={df}, n_docs={n_docs}")
    if tf < 0:
        raise ValueError("tf must be >= 0")
    return tf * math.log(n_docs / df)


def cosine_similarity(a: SparseVector, b: SparseVector) -> float:
    """Cosine of the angle between two sparse vectors; 0.0 for zero vectors."""
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    dot = sum(w * big.get(term, 0.0) for term, w in small.items())
    norm_a = math.sqrt(sum(w * w for w in a.values()))
    norm_b = math.sqrt(sum(w * w for w in b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return dot / (norm_a * norm_b)


def bm25_term_score(
    tf: int,
    df: int,
    n_docs: int,
    doc_len: int,
    avg_len: float,
    params: BM25Params = BM25Params(),
    variant: Variant = Variant.ATIRE,
    avg_idf: float | None = None,
) -> float:
    """Contribution of one query-term occurrence to a document's score.

    A term that does not appear in the document (tf = 0) contributes 0
    under every variant.  `avg_idf` (the corpus mean of raw Okapi IDF) is
    required by the Okapi variant whenever its IDF goes negative, which
    happens exactly when df > n_docs / 2.
    """
    if df < 1 or df > n_docs:
        raise ValueError(f"df must be in [1, n_docs]; got df={df}, n_docs={n_docs}")
    if tf < 0:
        raise ValueError("tf must be >= 0")
    if tf == 0:
        return 0.0
    if avg_len <= 0:
        raise ValueError("avg_len must be > 0")

    k1, b = params.k1, params.b
    norm = 1.0 - b + b * (doc_len / avg_len)

    if variant is Variant.ATIRE:
        idf = math.log(n_docs / df)
        return idf * (k1 + 1.0) * tf / (k1 * norm + tf)
    if variant is Variant.OKAPI:
        idf = math.log((n_docs - df + 0.5) / (df + 0.5))
        if idf < 0:
            if avg_idf is None:
                raise ValueError("okapi needs the corpus mean idf to floor negative idf")
            idf = params.epsilon * avg_idf
        return idf * (k1 + 1.0) * tf / (k1 * norm + tf)
    if variant is Variant.BM25L:
        delta = params.delta_for(variant)
        idf = math.log((n_docs + 1.0) / (df + 0.5))
        ctd = tf / norm
        return idf * (k1 + 1.0) * (ctd + delta) / (k1 + ctd + delta)
    if variant is Variant.BM25PLUS:
        delta = params.delta_for(variant)
        idf = math.log((n_docs + 1.0) / df)
        return idf * (delta + (k1 + 1.0) * tf / (k1 * norm + tf))
    raise ValueError(f"unknown variant: {variant!r}")


def okapi_mean_idf(index: CorpusIndex) -> float:
    """Mean raw Okapi IDF over the whole vocabulary (may be negative)."""
    if not index.df:
        return 0.0
    n = index.n_docs
    total = sum(math.log((n - df + 0.5) / (df + 0.5)) for df in index.df.values())
    return total / len(index.df)


def fuse_product(bm25: float, cosine: float) -> float:
    """Product fusion of a BM25 score and a cosine similarity."""
    if not (math.isfinite(bm25) and math.isfinite(cosine)):
        raise ValueError("fusion inputs must be finite")
    return bm25 * cosine


def chunk_tokens(tokens: TokenStream, max_len: int = 512) -> list[TokenStream]:
    """Split a token stream into consecutive chunks of at most `max_len`."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    return [tokens[i : i + max_len] for i in range(0, len(tokens), max_len)]


def rank_documents(scores: Mapping[str, float], doc_ids: Iterable[str]) -> Ranking:
    """Full ranking: every document, descending score, then ascending id."""
    entries = [(doc_id, scores.get(doc_id, 0.0)) for doc_id in doc_ids]
    entries.sort(key=lambda entry: (-entry[1], entry[0]))
    return entries


def build_rake_vocabulary(
    texts: Iterable[tuple[str, str]],
    config: PipelineConfig,
    stopwords: Iterable[str] = ENGLISH_STOPWORDS,
) -> frozenset[str]:
    """Union of normalized RAKE keyword unigrams over (id, raw text) pairs.

    Each text keeps its top max(10, ceil(distinct-words / 3)) phrases;
    phrases are decomposed to unigrams and pushed through the same
    normalization pipeline as the index so they line up with its terms.
    """
    stopset = frozenset(stopwords)
    vocab: set[str] = set()
    for _key, raw in texts:
        top_k = default_keyword_count(raw, stopset)
        for phrase, _score in rake_extract(raw, stopset, top_k):
            vocab.update(tokenize_normalize(phrase, config, stopset))
    return frozenset(vocab)


# ---------------------------------------------------------------------------
# corpus-level scoring

class Searcher:
    """Scores queries against a frozen index under any of the scorers.

    Optional resources: `corpus_texts` (id -> raw text) is needed by
    rake_tfidf, `embeddings` by embed.  When `config` is given, its
    fingerprint must match the one recorded in the index.
    """

    def __init__(
        self,
        index: CorpusIndex,
        config: PipelineConfig | None = None,
        stopwords: Iterable[str] = ENGLISH_STOPWORDS,
        params: BM25Params = BM25Params(),
        embeddings: EmbeddingStore | None = None,
        corpus_texts: Mapping[str, str] | None = None,
    ):
        stopset = frozenset(stopwords)
        if config is not None:
            fp = pipeline_fingerprint(config, stopset)
            if fp != index.fingerprint:
                raise PipelineMismatchError(
                    "pipeline mismatch: the index was built with a different "
                    "normalization configuration or stopword list"
                )
        self.index = index
        self.config = config
        self.stopwords = stopset
        self.params = params
        self.embeddings = embeddings
        self.corpus_texts = corpus_texts
        self._lock = threading.Lock()
        self._okapi_avg_idf: float | None = None
        self._sq_norms: dict[str, float] | None = None
        self._rake_vocab: frozenset[str] | None = None
        self._rake_sq_norms: dict[str, float] | None = None

    # -- cached corpus statistics ------------------------------------------

    def _idf(self, term: str) -> float:
        return math.log(self.index.n_docs / self.index.df[term])

    def _okapi_floor_base(self) -> float:
        with self._lock:
            if self._okapi_avg_idf is None:
                self._okapi_avg_idf = okapi_mean_idf(self.index)
            return self._okapi_avg_idf

    def _sq_norms_for(self, terms: Iterable[str]) -> dict[str, float]:
        """Per-document squared TF-IDF norms restricted to `terms`."""
        sq: dict[str, float] = {}
        for term in terms:
            plist = self.index.postings.get(term)
            if not plist:
                continue
            idf = self._idf(term)
            if idf == 0.0:
                continue
            for doc_id, tf in plist:
                w = tf * idf
                sq[doc_id] = sq.get(doc_id, 0.0) + w * w
        return sq

    def _global_sq_norms(self) -> dict[str, float]:
        with self._lock:
            if self._sq_norms is None:
                self._sq_norms = self._sq_norms_for(self.index.postings)
            return self._sq_norms

    def _corpus_rake_vocab(self) -> frozenset[str]:
        if self.corpus_texts is None:
            raise ValueError("rake_tfidf requires the raw corpus texts")
        if self.config is None:
            raise ValueError("rake_tfidf requires the normalization pipeline configuration")
        with self._lock:
            if self._rake_vocab is None:
                self._rake_vocab = build_rake_vocabulary(
                    sorted(self.corpus_texts.items()), self.config, self.stopwords
                )
                self._rake_sq_norms = self._sq_norms_for(sorted(self._rake_vocab))
            return self._rake_vocab

    # -- individual scorers --------------------------------------------------

    def _bm25_scores(self, query: TokenStream, variant: Variant) -> dict[str, float]:
        idx = self.index
        avg_idf = self._okapi_floor_base() if variant is Variant.OKAPI else None
        scores: dict[str, float] = {}
        for term, qcount in Counter(query).items():
            plist = idx.postings.get(term)
            if not plist:
                continue
            df = idx.df[term]
            for doc_id, tf in plist:
                contrib = bm25_term_score(
                    tf, df, idx.n_docs, idx.doc_len[doc_id], idx.avg_len,
                    self.params, variant, avg_idf,
                )
                scores[doc_id] = scores.get(doc_id, 0.0) + qcount * contrib
        return scores

    def _tfidf_scores(
        self,
        query: TokenStream,
        vocab: frozenset[str] | None = None,
        sq_norms: dict[str, float] | None = None,
    ) -> dict[str, float]:
        idx = self.index
        query_vec: dict[str, float] = {}
        for term, tf in Counter(query).items():
            if vocab is not None and term not in vocab:
                continue
            df = idx.df.get(term)
            if df is None:
                continue
            weight = tf * self._idf(term)
            if weight != 0.0:
                query_vec[term] = weight
        if not query_vec:
            return {}
        query_norm = math.sqrt(sum(w * w for w in query_vec.values()))

        dots: dict[str, float] = {}
        for term, qw in query_vec.items():
            idf = self._idf(term)
            for doc_id, tf in idx.postings[term]:
                dots[doc_id] = dots.get(doc_id, 0.0) + qw * tf * idf
        if sq_norms is None:
            sq_norms = self._global_sq_norms()
        scores = {}
        for doc_id, dot in dots.items():
            sq = sq_norms.get(doc_id, 0.0)
            scores[doc_id] = dot / (query_norm * math.sqrt(sq)) if sq > 0.0 else 0.0
        return scores

    def _rake_tfidf_scores(self, query: TokenStream, query_text: str) -> dict[str, float]:
        base_vocab = self._corpus_rake_vocab()
        stopset = self.stopwords
        query_words: set[str] = set()
        top_k = default_keyword_count(query_text, stopset)
        for phrase, _score in rake_extract(query_text, stopset, top_k):
            query_words.update(tokenize_normalize(phrase, self.config, stopset))
        vocab = frozenset(base_vocab | query_words)

        extras = sorted(
            term for term in query_words - base_vocab if term in self.index.postings
        )
        assert self._rake_sq_norms is not None
        if extras:
            sq_norms = dict(self._rake_sq_norms)
            for doc_id, sq in self._sq_norms_for(extras).items():
                sq_norms[doc_id] = sq_norms.get(doc_id, 0.0) + sq
        else:
            sq_norms = self._rake_sq_norms
        return self._tfidf_scores(query, vocab=vocab, sq_norms=sq_norms)

    def _commonwords_scores(self, query: TokenStream) -> dict[str, float]:
        overlap: dict[str, int] = {}
        for term in set(query):
            for doc_id, _tf in self.index.postings.get(term, ()):
                overlap[doc_id] = overlap.get(doc_id, 0) + 1
        bm25 = self._bm25_scores(query, Variant.ATIRE)
        return {doc_id: count * bm25.get(doc_id, 0.0) for doc_id, count in overlap.items()}

    def _embed_scores(self, query_id: str) -> dict[str, float]:
        if self.embeddings is None:
            raise ValueError("embed scorer requires an embedding store")
        if query_id not in self.embeddings:
            raise ValueError(f"embedding store has no vector for query {query_id!r}")
        query_vec = self.embeddings.query_vector(query_id)
        scores = {}
        for doc_id in self.index.doc_len:
            if doc_id not in self.embeddings:
                raise ValueError(f"embedding store has no vectors for document {doc_id!r}")
            scores[doc_id] = aggregate_chunk_similarity(
                query_vec, self.embeddings.chunks(doc_id)
            )
        return scores

    # -- public API ------------------------------------------------------------

    def score(
        self,
        scorer: str,
        query: TokenStream,
        query_id: str | None = None,
        query_text: str | None = None,
    ) -> Ranking:
        """Full ranking of the corpus for one query under `scorer`."""
        if scorer in _SCORER_VARIANTS:
            scores = self._bm25_scores(query, _SCORER_VARIANTS[scorer])
        elif scorer == "tfidf_cos":
            scores = self._tfidf_scores(query)
        elif scorer == "fused":
            bm25 = self._bm25_scores(query, Variant.ATIRE)
            cos = self._tfidf_scores(query)
            scores = {
                doc_id: fuse_product(bm25.get(doc_id, 0.0), cos.get(doc_id, 0.0))
                for doc_id in bm25.keys() | cos.keys()
            }
        elif scorer == "rake_tfidf":
            if query_text is None:
                raise ValueError("rake_tfidf requires the raw query text")
            scores = self._rake_tfidf_scores(query, query_text)
        elif scorer == "commonwords_bm25":
            scores = self._commonwords_scores(query)
        elif scorer == "embed":
            if query_id is None:
                raise ValueError("embed scorer requires a query id")
            scores = self._embed_scores(query_id)
        else:
            raise ValueError(
                f"unknown scorer {scorer!r}; expected one of {', '.join(SCORER_NAMES)}"
            )
        return rank_documents(scores, self.index.doc_len)

    def search_all(
        self,
        queries: Sequence[tuple[str, str]],
        scorer: str,
        top_n: int = 100,
        workers: int = 1,
    ) -> dict[str, Ranking]:
        """Rank every (query_id, raw text) pair; returns top-`top_n` each.

        Queries may be scored concurrently; results are keyed and ordered
        by query id, so the output is identical for any worker count.
        """
        if self.config is None:
            raise ValueError("search_all needs the pipeline configuration to tokenize queries")
        if top_n < 1:
            raise ValueError("top_n must be >= 1")

        def one(item: tuple[str, str]) -> tuple[str, Ranking]:
            qid, text = item
            tokens = tokenize_normalize(text, self.config, self.stopwords)
            ranking = self.score(scorer, tokens, query_id=qid, query_text=text)
            return qid, ranking[:top_n]

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(one, queries))
        else:
            results = [one(item) for item in queries]
        return dict(sorted(results))


def score_query(
    query: TokenStream,
    index: CorpusIndex,
    scorer: str,
    params: BM25Params = BM25Params(),
    *,
    config: PipelineConfig | None = None,
    stopwords: Iterable[str] = ENGLISH_STOPWORDS,
    embeddings: EmbeddingStore | None = None,
    corpus_texts: Mapping[str, str] | None = None,
    query_id: str | None = None,
    query_text: str | None = None,
) -> Ranking:
    """One-shot convenience wrapper around `Searcher.score`."""
    searcher = Searcher(
        index,
        config=config,
        stopwords=stopwords,
        params=params,
        embeddings=embeddings,
        corpus_texts=corpus_texts,
    )
    return searcher.score(scorer, query, query_id=query_id, query_text=query_text)
