"""Chat answer generation: deterministic templates with a pluggable external generator.

The external generator (any HTTP service that answers a plain-text question)
is tried first when configured; on any failure, timeout, or absence the
template path takes over. Template answers name every shared event the views
display, so the text can never contradict the visualizations.
"""

from __future__ import annotations

import logging
import urllib.error
import urllib.request
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Protocol, Sequence

from . import templates
from .query import StructuredQuery
from .retrieval import PersonRelation, SharedEvent

DEFAULT_GENERATOR_TIMEOUT = 5.0

log = logging.getLogger(__name__)


class AnswerSource(str, Enum):
    EXTERNAL = "external"
    TEMPLATE = "template"


@dataclass(frozen=True)
class AnswerContext:
    """Everything the templates need, precomputed by the pipeline."""

    query: StructuredQuery
    shared: tuple[SharedEvent, ...]
    relations: tuple[PersonRelation, ...]
    event_counts: Mapping[str, int]  # person id -> number of linked events
    labels: Mapping[str, str]  # entity id -> display label


class TextGeneratorClient(Protocol):
    def generate(self, question: str, timeout: float) -> str | None: ...


class NullTextGenerator:
    """Always absent; forces the template path."""

    def generate(self, question: str, timeout: float) -> str | None:
        return None


class HttpTextGenerator:
    """POSTs the plain-text question to a URL and expects a plain-text answer.

    Any non-200 status, timeout, or undecodable body counts as absence.
    """

    def __init__(self, url: str):
        self.url = url

    def generate(self, question: str, timeout: float) -> str | None:
        request = urllib.request.Request(
            self.url,
            data=question.encode("utf-8"),
            headers={"Content-Type": "text/plain; charset=utf-8"},
            method="POST",
        )
        try:
            with urllib.request.urlopen(request, timeout=timeout) as response:
                if response.status != 200:
                    return None
                text = response.read().decode("utf-8").strip()
                return text or None
        except (urllib.error.URLError, TimeoutError, UnicodeDecodeError, OSError):
            return None


def _join_names(names: Sequence[str]) -> str:
    if len(names) == 1:
        return names[0]
    if len(names) == 2:
        return f"{names[0]} and {names[1]}"
    return ", ".join(names[:-1]) + f", and {names[-1]}"


def _plural(count: int, noun: str) -> str:
    return f"{count} {noun}" + ("" if count == 1 else "s")


def _relation_sentence(relation: PersonRelation, labels: Mapping[str, str]) -> str:
    if relation.valid_from is not None and relation.valid_to is not None:
        validity = templates.VALIDITY_BOTH.format(
            start=relation.valid_from.isoformat(), end=relation.valid_to.isoformat()
        )
    elif relation.valid_from is not None:
        validity = templates.VALIDITY_FROM.format(start=relation.valid_from.isoformat())
    elif relation.valid_to is not None:
        validity = templates.VALIDITY_TO.format(end=relation.valid_to.isoformat())
    else:
        validity = ""
    return templates.RELATION_LINE.format(
        predicate=relation.predicate,
        subject=labels.get(relation.subject, relation.subject),
        object=labels.get(relation.object, relation.object),
        validity=validity,
    )


def render_template_answer(ctx: AnswerContext) -> str:
    """Deterministic answer text; a pure function of the context."""
    labels = ctx.labels
    person_names = [labels.get(p, p) for p in ctx.query.persons]
    parts: list[str] = []
    if len(ctx.query.persons) == 1:
        person = ctx.query.persons[0]
        parts.append(
            templates.SINGLE_PERSON.format(
                person=person_names[0],
                count=_plural(ctx.event_counts.get(person, 0), "event"),
            )
        )
    elif not ctx.shared:
        parts.append(templates.NO_SHARED_EVENTS)
    else:
        event_names = [labels.get(s.event, s.event) for s in ctx.shared]
        parts.append(
            templates.SHARED_BY_INTENT[ctx.query.intent.value].format(
                persons=_join_names(person_names),
                count=_plural(len(ctx.shared), "shared event"),
                events=", ".join(event_names),
            )
        )
    for relation in ctx.relations:
        parts.append(_relation_sentence(relation, labels))
    if ctx.shared:
        parts.append(templates.HEDGE)
    return " ".join(parts)


def answer(
    ctx: AnswerContext,
    client: TextGeneratorClient,
    timeout: float = DEFAULT_GENERATOR_TIMEOUT,
) -> tuple[str, AnswerSource]:
    """External answer when the client produces one in time, else the template.

    Never raises: a misbehaving client is logged and swallowed into the
    template fallback. The source tag lets the UI flag that an external
    answer may diverge from the visualized events.
    """
    try:
        text = client.generate(ctx.query.original_question, timeout)
    except Exception:
        log.warning("external text generator failed; falling back to template", exc_info=True)
        text = None
    if text:
        return text, AnswerSource.EXTERNAL
    return render_template_answer(ctx), AnswerSource.TEMPLATE
