"""Fuzzy resolution of person names in free text against the loaded graph.

Person labels and aliases become normalized keys in a character-trigram
index; question spans are matched by trigram Jaccard similarity. Leading
honorifics are stripped during normalization, which is what lets titled
names ("Queen Elizabeth II") match their plain keys.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

from .graph import EntityKind, KnowledgeGraph

NAME_MATCH_THRESHOLD = 0.6
MAX_SPAN_TOKENS = 4

# Stripped only at the front of a name, repeatedly ("Sir Dr ..." loses both).
HONORIFICS = frozenset({"queen", "king", "sir", "dame", "dr", "president", "saint"})

# Letters whose accent-folding NFKD cannot produce (they do not decompose).
_FOLD_EXTRA = str.maketrans({
    "ł": "l", "ø": "o", "đ": "d", "ð": "d", "þ": "th", "ß": "ss",
    "æ": "ae", "œ": "oe",
})

_NON_ALNUM_RE = re.compile(r"[^0-9a-z]+")


def normalize_name(raw: str) -> str:
    """Canonical key for a name: folded, lowercased, de-titled, de-punctuated."""
    folded = unicodedata.normalize("NFKD", raw)
    folded = "".join(c for c in folded if not unicodedata.combining(c))
    folded = folded.lower().translate(_FOLD_EXTRA)
    words = [w for w in _NON_ALNUM_RE.split(folded) if w]
    while words and words[0] in HONORIFICS:
        words.pop(0)
    return " ".join(words)


def trigrams(key: str) -> frozenset[str]:
    """Character trigrams of the key padded with one space on each side."""
    if not key:
        return frozenset()
    padded = f" {key} "
    return frozenset(padded[i : i + 3] for i in range(len(padded) - 2))


def trigram_jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a or not b:
        return 0.0
    return len(a & b) / len(a | b)


@dataclass(frozen=True)
class NameMatch:
    """One resolved person name.

    ``span`` is the half-open token range in the query that matched; it is
    None when a bare string was resolved outside of any query.
    """

    entity_id: str
    score: float
    span: tuple[int, int] | None = None


class NameIndex:
    """Trigram-indexed person gazetteer built from one graph snapshot."""

    def __init__(self, graph: KnowledgeGraph, stopwords: frozenset[str] = frozenset()):
        self._stopwords = stopwords
        self._entities_by_key: dict[str, list[str]] = {}
        self._trigrams_by_key: dict[str, frozenset[str]] = {}
        self._postings: dict[str, set[str]] = {}
        self._rank: dict[str, tuple[int, str]] = {}
        for person in graph.persons():
            # Resolution ties go to the more-mentioned person, then lexicographic id.
            self._rank[person.id] = (-person.mention_count, person.id)
            for name in (person.label, *person.aliases):
                key = normalize_name(name)
                if not key:
                    key = name.lower().strip()
                ids = self._entities_by_key.setdefault(key, [])
                if person.id not in ids:
                    ids.append(person.id)
                if key not in self._trigrams_by_key:
                    grams = trigrams(key)
                    self._trigrams_by_key[key] = grams
                    for g in grams:
                        self._postings.setdefault(g, set()).add(key)

    @property
    def keys(self) -> frozenset[str]:
        return frozenset(self._entities_by_key)

    @property
    def stopwords(self) -> frozenset[str]:
        return self._stopwords

    def _candidate_keys(self, grams: frozenset[str]) -> set[str]:
        keys: set[str] = set()
        for g in grams:
            keys.update(self._postings.get(g, ()))
        return keys

    def resolve(self, candidate: str) -> NameMatch | None:
        """Best person whose key similarity clears the match threshold."""
        norm = normalize_name(candidate)
        if not norm:
            return None
        grams = trigrams(norm)
        best: dict[str, float] = {}
        for key in self._candidate_keys(grams):
            score = 1.0 if key == norm else trigram_jaccard(grams, self._trigrams_by_key[key])
            if score < NAME_MATCH_THRESHOLD:
                continue
            for entity_id in self._entities_by_key[key]:
                if score > best.get(entity_id, 0.0):
                    best[entity_id] = score
        if not best:
            return None
        winner = min(best, key=lambda eid: (-best[eid], self._rank[eid]))
        return NameMatch(entity_id=winner, score=best[winner])


def resolve_name(index: NameIndex, candidate: str) -> NameMatch | None:
    return index.resolve(candidate)


def extract_person_spans(index: NameIndex, tokens: list[str]) -> list[NameMatch]:
    """Greedy person-span extraction over the token list.

    Every n-gram up to MAX_SPAN_TOKENS is scored; spans are then accepted
    greedily by score (exact matches first), longer and leftmost spans
    breaking ties, skipping any that would overlap an accepted one. Scoring
    before length keeps neighboring verbs out of a span: "Marie Curie" at 1.0
    beats the wider "Marie Curie marry" even though the wider window still
    clears the match threshold. Spans made only of stopwords are never sent
    to resolution. The result is ordered by span start, with duplicate
    persons collapsed onto their first span.
    """
    candidates: list[tuple[float, int, int, NameMatch]] = []
    for i in range(len(tokens)):
        for n in range(1, min(MAX_SPAN_TOKENS, len(tokens) - i) + 1):
            span_tokens = tokens[i : i + n]
            if all(t.lower() in index.stopwords for t in span_tokens):
                continue
            match = index.resolve(" ".join(span_tokens))
            if match is not None:
                candidates.append((match.score, n, i, NameMatch(match.entity_id, match.score, (i, i + n))))
    candidates.sort(key=lambda c: (-c[0], -c[1], c[2], c[3].entity_id))

    taken = [False] * len(tokens)
    accepted: list[NameMatch] = []
    for _, _, _, match in candidates:
        start, end = match.span
        if any(taken[start:end]):
            continue
        for i in range(start, end):
            taken[i] = True
        accepted.append(match)

    accepted.sort(key=lambda m: m.span[0])
    matches: list[NameMatch] = []
    seen: set[str] = set()
    for match in accepted:
        if match.entity_id not in seen:
            seen.add(match.entity_id)
            matches.append(match)
    return matches
