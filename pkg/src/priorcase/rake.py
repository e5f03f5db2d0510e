"""RAKE (Rapid Automatic Keyword Extraction).

Candidate phrases are maximal runs of tokens delimited by stopwords and
punctuation.  Each word scores deg(w)/freq(w), where deg counts
co-occurrences inside candidate phrases (a word co-occurs with itself),
and a phrase scores the sum of its word scores.
"""

from __future__ import annotations

import math
import re
from collections import defaultdict
from typing import Iterable

# Characters that break a phrase: anything that is neither alphanumeric
# nor whitespace.  Whitespace only separates words within a phrase.
_PHRASE_BREAK_RE = re.compile(r"[^\w\s]|_", re.UNICODE)
_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


def candidate_phrases(raw: str, stopwords: Iterable[str]) -> list[tuple[str, ...]]:
    """Phrases as word tuples, lowercased, in order of appearance."""
    stopset = stopwords if isinstance(stopwords, (set, frozenset)) else frozenset(stopwords)
    phrases: list[tuple[str, ...]] = []
    for segment in _PHRASE_BREAK_RE.split(raw.lower()):
        current: list[str] = []
        for word in _WORD_RE.findall(segment):
            if word in stopset:
                if current:
                    phrases.append(tuple(current))
                    current = []
            else:
                current.append(word)
        if current:
            phrases.append(tuple(current))
    return phrases


def rake_extract(
    raw: str,
    stopwords: Iterable[str],
    top_k: int,
) -> list[tuple[str, float]]:
    """Top scoring keyword phrases of a single text.

    Returns up to `top_k` distinct phrases as (phrase, score), sorted by
    descending score with lexicographic tie-breaking.  Text containing
    only stopwords and punctuation yields an empty list.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    phrases = candidate_phrases(raw, stopwords)
    if not phrases:
        return []

    freq: dict[str, int] = defaultdict(int)
    degree: dict[str, int] = defaultdict(int)
    for phrase in phrases:
        for word in phrase:
            freq[word] += 1
            degree[word] += len(phrase)

    word_score = {w: degree[w] / freq[w] for w in freq}
    scored: dict[str, float] = {}
    for phrase in phrases:
        text = " ".join(phrase)
        if text not in scored:
            scored[text] = sum(word_score[w] for w in phrase)

    ranked = sorted(scored.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:top_k]


def default_keyword_count(raw: str, stopwords: Iterable[str]) -> int:
    """How many keywords to keep for a text: max(10, ceil(distinct/3)).

    `distinct` is the number of distinct words over all candidate
    phrases, i.e. the vertex count of the co-occurrence graph.
    """
    words = {w for phrase in candidate_phrases(raw, stopwords) for w in phrase}
    return max(10, math.ceil(len(words) / 3))
