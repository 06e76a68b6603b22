"""Deterministic synthetic dataset generator.

Stands in for a full-scale knowledge graph: random persons, events, and
other entities wired together by random temporal triples, plus a random
event-class forest. Fully determined by the seed, so property tests can
replay any failure.
"""

from __future__ import annotations

import random

from .dates import PartialDate, days_in_month
from .graph import (
    Entity,
    EntityKind,
    EventClassOntology,
    IconCategory,
    KnowledgeGraph,
    Triple,
)

_PREDICATES = [
    "participated in", "member of", "received", "attended", "organized",
    "spouse", "colleague of", "rival of",
]
_LITERALS = ["physics", "football", "chemistry", "politics", "music"]

_FIRST = ["Ada", "Boris", "Chen", "Dana", "Emil", "Fay", "Goran", "Hana", "Ivo", "Jana",
          "Kofi", "Lena", "Mira", "Nils", "Omar", "Pia", "Qi", "Rosa", "Sven", "Tara"]
_LAST = ["Abbas", "Berg", "Costa", "Duarte", "Eriksen", "Fuchs", "Gray", "Haas", "Ito",
         "Jansen", "Kim", "Lopez", "Mbeki", "Novak", "Okafor", "Petrov", "Quinn", "Ruiz",
         "Sato", "Tanaka"]


def random_partial_date(rng: random.Random, lo: int = 1800, hi: int = 2020) -> PartialDate:
    """A date of random precision: year, year-month, or full day."""
    year = rng.randint(lo, hi)
    precision = rng.randint(0, 2)
    if precision == 0:
        return PartialDate(year)
    month = rng.randint(1, 12)
    if precision == 1:
        return PartialDate(year, month)
    return PartialDate(year, month, rng.randint(1, days_in_month(year, month)))


def random_interval(
    rng: random.Random, lo: int = 1800, hi: int = 2020
) -> tuple[PartialDate, PartialDate | None]:
    start = random_partial_date(rng, lo, hi)
    if rng.random() < 0.4:
        return start, None
    end = random_partial_date(rng, start.year, min(start.year + rng.randint(0, 30), hi + 30))
    if start.earliest() > end.latest():
        return start, None
    return start, end


def synthetic_ontology(rng: random.Random, n_classes: int = 12) -> EventClassOntology:
    """A random forest of event classes with sparse icon assignments."""
    classes = [f"class{i:02d}" for i in range(n_classes)]
    parents: dict[str, str | None] = {}
    for i, cls in enumerate(classes):
        # Parent always earlier in the list: forest by construction.
        parents[cls] = rng.choice(classes[:i]) if i > 0 and rng.random() < 0.7 else None
    icons = {
        cls: rng.choice(list(IconCategory))
        for cls in classes
        if rng.random() < 0.3
    }
    return EventClassOntology(parents, icons)


def synthetic_graph(
    seed: int,
    n_persons: int = 10,
    n_events: int = 20,
    n_other: int = 3,
    n_triples: int = 60,
) -> KnowledgeGraph:
    rng = random.Random(seed)
    ontology = synthetic_ontology(rng)
    classes = sorted(ontology.classes)

    entities: list[Entity] = []
    for i in range(n_persons):
        birth = random_partial_date(rng, 1850, 1990) if rng.random() < 0.85 else None
        death = None
        if birth is not None and rng.random() < 0.5:
            death = random_partial_date(rng, birth.year, birth.year + 90)
            if not birth.earliest() <= death.latest():
                death = None
        entities.append(
            Entity(
                id=f"P{i:04d}",
                kind=EntityKind.PERSON,
                label=f"{rng.choice(_FIRST)} {rng.choice(_LAST)} {i}",
                aliases=(f"{rng.choice(_FIRST)} {i}",) if rng.random() < 0.3 else (),
                birth=birth,
                death=death,
                mention_count=rng.randint(0, 100000),
            )
        )
    for i in range(n_events):
        start, end = (None, None)
        if rng.random() < 0.8:
            start, end = random_interval(rng)
        located = rng.random() < 0.6
        entities.append(
            Entity(
                id=f"E{i:04d}",
                kind=EntityKind.EVENT,
                label=f"Event {i}",
                start=start,
                end=end,
                latitude=round(rng.uniform(-90, 90), 4) if located else None,
                longitude=round(rng.uniform(-180, 180), 4) if located else None,
                event_class=rng.choice(classes) if rng.random() < 0.7 else None,
                mention_count=rng.randint(0, 100000),
            )
        )
    for i in range(n_other):
        entities.append(
            Entity(
                id=f"O{i:04d}",
                kind=EntityKind.OTHER,
                label=f"Thing {i}",
                mention_count=rng.randint(0, 1000),
            )
        )

    ids = [e.id for e in entities]
    person_ids = [e.id for e in entities if e.kind is EntityKind.PERSON]
    triples: list[Triple] = []
    for _ in range(n_triples):
        subject = rng.choice(person_ids) if rng.random() < 0.8 else rng.choice(ids)
        kind = rng.random()
        if kind < 0.75:
            obj, is_entity = rng.choice(ids), True
        else:
            obj, is_entity = rng.choice(_LITERALS), False
        valid_from, valid_to = (None, None)
        if rng.random() < 0.3:
            valid_from, valid_to = random_interval(rng)
        triples.append(
            Triple(
                subject=subject,
                predicate=rng.choice(_PREDICATES),
                object=obj,
                object_is_entity=is_entity,
                valid_from=valid_from,
                valid_to=valid_to,
            )
        )
    return KnowledgeGraph(entities, triples, ontology)
