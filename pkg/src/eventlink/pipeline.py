"""End-to-end query engine: question in, serialized QueryResponse out.

The engine owns one immutable graph snapshot plus the name index, stopword
list, and optional embedding table built from it. ``respond`` produces the
JSON-ready response dict consumed by the HTTP API, the CLI, and the report
renderer; its shape is pinned by ``schema/query_response.schema.json``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .answer import (
    AnswerContext,
    NullTextGenerator,
    TextGeneratorClient,
    answer,
)
from .config import ServiceConfig
from .dates import PartialDate
from .embeddings import EmbeddingProvider
from .graph import Entity, EntityKind, IconCategory, KnowledgeGraph
from .ingest import DatasetManifest, load_dataset, load_embeddings, load_stopwords
from .names import NameIndex
from .query import StructuredQuery, build_query
from .retrieval import (
    PersonEvents,
    TimelineLayout,
    collect_person_events,
    layout_timeline,
    map_points,
    person_relations,
    relation_graph,
    shared_events,
)


def _date_str(d: PartialDate | None) -> str | None:
    return d.isoformat() if d is not None else None


def _event_icon(graph: KnowledgeGraph, entity: Entity) -> str:
    if entity.event_class is None:
        return IconCategory.GENERIC.value
    return graph.ontology.icon_for(entity.event_class).value


def event_descriptor(graph: KnowledgeGraph, event_id: str) -> dict:
    e = graph.entity(event_id)
    return {
        "id": e.id,
        "label": e.label,
        "start": _date_str(e.start),
        "end": _date_str(e.end),
        "icon": _event_icon(graph, e),
        "wikipedia_url": e.wikipedia_url,
    }


def entity_descriptor(graph: KnowledgeGraph, entity_id: str) -> dict:
    """Full entity record for the detail panel; raises UnknownEntity."""
    e = graph.entity(entity_id)
    descriptor = {
        "id": e.id,
        "kind": e.kind.value,
        "label": e.label,
        "aliases": list(e.aliases),
        "birth": _date_str(e.birth),
        "death": _date_str(e.death),
        "start": _date_str(e.start),
        "end": _date_str(e.end),
        "latitude": e.latitude,
        "longitude": e.longitude,
        "event_class": e.event_class,
        "mention_count": e.mention_count,
        "wikipedia_url": e.wikipedia_url,
    }
    if e.kind is EntityKind.EVENT:
        descriptor["icon"] = _event_icon(graph, e)
    return descriptor


def _serialize_timeline(layout: TimelineLayout) -> dict:
    return {
        "lanes": [
            {
                "person": lane.person,
                "lifespan_start": _date_str(lane.lifespan_start),
                "lifespan_end": _date_str(lane.lifespan_end),
                "row_count": lane.row_count,
                "events": [
                    {
                        "event": p.event,
                        "start": p.start.isoformat(),
                        "end": p.end.isoformat(),
                        "row": p.row,
                        "icon": p.icon.value,
                        "participants": list(p.participants),
                    }
                    for p in lane.events
                ],
            }
            for lane in layout.lanes
        ],
        "omitted": list(layout.omitted),
    }


@dataclass
class QueryEngine:
    graph: KnowledgeGraph
    stopwords: frozenset[str] = frozenset()
    provider: EmbeddingProvider | None = None
    config: ServiceConfig = field(default_factory=ServiceConfig)
    generator: TextGeneratorClient = field(default_factory=NullTextGenerator)

    def __post_init__(self):
        self.index = NameIndex(self.graph, self.stopwords)

    @classmethod
    def from_data_dir(
        cls,
        data_dir: str | Path,
        config: ServiceConfig | None = None,
        generator: TextGeneratorClient | None = None,
    ) -> QueryEngine:
        manifest = DatasetManifest.from_dir(data_dir)
        graph = load_dataset(manifest)
        stopwords = (
            load_stopwords(manifest.stopwords_path)
            if manifest.stopwords_path is not None
            else frozenset()
        )
        provider = (
            load_embeddings(manifest.embeddings_path)
            if manifest.embeddings_path is not None
            else None
        )
        return cls(
            graph=graph,
            stopwords=stopwords,
            provider=provider,
            config=config if config is not None else ServiceConfig(data_dir=Path(data_dir)),
            generator=generator if generator is not None else NullTextGenerator(),
        )

    def parse(self, question: str) -> StructuredQuery:
        return build_query(
            question,
            self.graph,
            self.index,
            provider=self.provider,
            stopwords=self.stopwords,
            intent_threshold=self.config.intent_threshold,
        )

    def respond(self, question: str) -> dict:
        """Run the full pipeline; raises NoPersonsFound / TooManyPersons."""
        query = self.parse(question)
        graph = self.graph

        shared = shared_events(graph, query.persons) if len(query.persons) >= 2 else []
        shared_ids = frozenset(s.event for s in shared)
        person_events: list[PersonEvents] = [
            collect_person_events(graph, p, self.config.relevance_cap, shared_ids)
            for p in query.persons
        ]
        relations = person_relations(graph, query.persons) if len(query.persons) >= 2 else []
        timeline = layout_timeline(
            graph, person_events, shared, clamp_to_lifespan=self.config.clamp_to_lifespan
        )
        points = map_points(graph, person_events, shared)
        nodes, edges = relation_graph(query.persons, shared)

        event_ids: dict[str, None] = {}
        for pe in person_events:
            for event_id, _ in pe.events:
                event_ids.setdefault(event_id)
        labels = {eid: graph.entity(eid).label for eid in event_ids}
        labels.update({p: graph.entity(p).label for p in query.persons})

        ctx = AnswerContext(
            query=query,
            shared=tuple(shared),
            relations=tuple(relations),
            event_counts={pe.person: len({e for e, _ in pe.events}) for pe in person_events},
            labels=labels,
        )
        text, source = answer(ctx, self.generator, self.config.generator_timeout)

        warnings = [
            f"{graph.entity(eid).label} has no start date and is omitted from the timeline and map"
            for eid in timeline.omitted
        ]

        return {
            "answer": {"text": text, "source": source.value},
            "persons": [
                self._person_block(p, color_index) for color_index, p in enumerate(query.persons)
            ],
            "events": {eid: event_descriptor(graph, eid) for eid in event_ids},
            "timeline": _serialize_timeline(timeline),
            "map_points": [
                {
                    "event": mp.event,
                    "lat": mp.latitude,
                    "lon": mp.longitude,
                    "participants": list(mp.participants),
                }
                for mp in points
            ],
            "graph": {
                "nodes": [{"id": n.id, "kind": n.kind} for n in nodes],
                "edges": [{"person": e.person, "event": e.event} for e in edges],
            },
            "shared_events": [
                {"event": s.event, "participants": list(s.participants)} for s in shared
            ],
            "relations": [
                {
                    "subject": r.subject,
                    "predicate": r.predicate,
                    "object": r.object,
                    "valid_from": _date_str(r.valid_from),
                    "valid_to": _date_str(r.valid_to),
                }
                for r in relations
            ],
            "warnings": warnings,
        }

    def _person_block(self, person_id: str, color_index: int) -> dict:
        e = self.graph.entity(person_id)
        return {
            "id": e.id,
            "label": e.label,
            "color_index": color_index,
            "birth": _date_str(e.birth),
            "death": _date_str(e.death),
            "wikipedia_url": e.wikipedia_url,
        }

    def entity(self, entity_id: str) -> dict:
        return entity_descriptor(self.graph, entity_id)

    def stats(self) -> dict:
        return {
            "status": "ok",
            "entities": len(self.graph.entities),
            "triples": len(self.graph.triples),
        }
