"""Turn a natural-language question into a structured query.

The pipeline is tokenize, extract person spans, classify intent. Intent
only ever influences the wording of the answer; retrieval is driven by the
person list alone, so two questions naming the same people always fetch the
same events.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .embeddings import EmbeddingProvider
from .errors import NoPersonsFound, TooManyPersons
from .graph import KnowledgeGraph
from .names import NameIndex, extract_person_spans

MAX_QUERY_PERSONS = 5
INTENT_THRESHOLD = 0.55

PROFESSIONAL_KEYWORDS = frozenset({
    "collaborate", "work", "ally", "award", "career", "team", "colleague",
})
PERSONAL_KEYWORDS = frozenset({
    "marry", "married", "wedding", "spouse", "friend", "family", "child", "divorce", "love",
})

# Word characters with apostrophes allowed word-internally; everything else
# (including hyphens) separates tokens.
_TOKEN_RE = re.compile(r"\w+(?:['’]\w+)*")


class Intent(str, Enum):
    PROFESSIONAL = "professional"
    PERSONAL = "personal"
    GENERAL = "general"


@dataclass(frozen=True)
class StructuredQuery:
    """Resolved person set plus classified intent; the pipeline's midpoint."""

    persons: tuple[str, ...]
    intent: Intent
    original_question: str

    def __post_init__(self):
        if not self.persons:
            raise ValueError("a structured query needs at least one person")
        if len(set(self.persons)) != len(self.persons):
            raise ValueError("query persons must be deduplicated")
        if len(self.persons) > MAX_QUERY_PERSONS:
            raise ValueError(f"at most {MAX_QUERY_PERSONS} persons per query")


def tokenize(question: str) -> list[str]:
    """Split on whitespace and punctuation, dropping the punctuation.

    Apostrophes are word-internal ("O'Neill" is one token); hyphens are
    separators. Casing is preserved.
    """
    return _TOKEN_RE.findall(question)


def stem(word: str) -> str:
    """Light suffix stripping: -ion/-ing/-ed/-s with doubling repair.

    After stripping, a doubled final consonant (other than l/s/z) loses one
    letter, a trailing "e" is dropped, and a trailing "i" becomes "y", so
    "married"/"marry", "collaborated"/"collaborate", and "wedding"/"wed" all
    meet at one form. Not a real stemmer; just enough for the keyword sets.
    """
    w = word.lower()
    for suffix in ("ion", "ing", "ed", "s"):
        if w.endswith(suffix) and len(w) - len(suffix) >= 3:
            if suffix == "s" and w.endswith("ss"):
                continue
            w = w[: -len(suffix)]
            if suffix in ("ing", "ed") and len(w) >= 2 and w[-1] == w[-2] and w[-1] not in "aeioulsz":
                w = w[:-1]
            break
    if w.endswith("e"):
        w = w[:-1]
    if w.endswith("i"):
        w = w[:-1] + "y"
    return w


def _keyword_similarity(keyword: str, word: str, provider: EmbeddingProvider | None) -> float:
    if keyword == word or stem(keyword) == stem(word):
        return 1.0
    if provider is not None:
        return provider.similarity(keyword, word)
    return 0.0


def classify_intent(
    tokens: list[str],
    provider: EmbeddingProvider | None = None,
    stopwords: frozenset[str] = frozenset(),
    exclude_spans: tuple[tuple[int, int], ...] = (),
    threshold: float = INTENT_THRESHOLD,
) -> Intent:
    """Best-scoring relation intent, or GENERAL when nothing clears the threshold.

    Candidate words are the lowercased tokens outside matched person spans
    and outside the stopword list. Each intent scores the best similarity
    between any of its keywords and any candidate; exact and stem matches
    count 1.0, otherwise the embedding cosine when a provider is available.
    PROFESSIONAL wins ties over PERSONAL (fixed, arbitrary).
    """
    excluded = set()
    for start, end in exclude_spans:
        excluded.update(range(start, end))
    candidates = [
        t.lower()
        for i, t in enumerate(tokens)
        if i not in excluded and t.lower() not in stopwords
    ]
    scores = {Intent.PROFESSIONAL: 0.0, Intent.PERSONAL: 0.0}
    for intent, keywords in (
        (Intent.PROFESSIONAL, PROFESSIONAL_KEYWORDS),
        (Intent.PERSONAL, PERSONAL_KEYWORDS),
    ):
        for keyword in keywords:
            for word in candidates:
                sim = _keyword_similarity(keyword, word, provider)
                if sim > scores[intent]:
                    scores[intent] = sim
    if scores[Intent.PROFESSIONAL] >= scores[Intent.PERSONAL]:
        best, best_score = Intent.PROFESSIONAL, scores[Intent.PROFESSIONAL]
    else:
        best, best_score = Intent.PERSONAL, scores[Intent.PERSONAL]
    return best if best_score >= threshold else Intent.GENERAL


def build_query(
    question: str,
    graph: KnowledgeGraph,
    index: NameIndex,
    provider: EmbeddingProvider | None = None,
    stopwords: frozenset[str] = frozenset(),
    intent_threshold: float = INTENT_THRESHOLD,
) -> StructuredQuery:
    """Full parse of a question: persons in span order plus intent.

    Raises NoPersonsFound when nothing resolves and TooManyPersons when more
    than MAX_QUERY_PERSONS distinct persons do.
    """
    tokens = tokenize(question)
    matches = extract_person_spans(index, tokens)
    if not matches:
        raise NoPersonsFound(question)
    if len(matches) > MAX_QUERY_PERSONS:
        raise TooManyPersons(len(matches), MAX_QUERY_PERSONS)
    intent = classify_intent(
        tokens,
        provider=provider,
        stopwords=stopwords,
        exclude_spans=tuple(m.span for m in matches if m.span is not None),
        threshold=intent_threshold,
    )
    return StructuredQuery(
        persons=tuple(m.entity_id for m in matches),
        intent=intent,
        original_question=question,
    )
