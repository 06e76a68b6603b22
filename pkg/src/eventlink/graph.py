"""Immutable in-memory knowledge graph.

Entities are persons, events, and other things; triples are temporal
subject-predicate-object edges. The graph is built once, validated, and then
only read: adjacency indexes give constant-time neighborhood lookups and all
orderings are deterministic (triple load order, then entity id).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping

from .dates import PartialDate, intervals_ordered
from .errors import IntegrityError, UnknownClass, UnknownEntity


class EntityKind(str, Enum):
    PERSON = "person"
    EVENT = "event"
    OTHER = "other"


class IconCategory(str, Enum):
    BIRTH = "birth"
    DEATH = "death"
    MARRIAGE = "marriage"
    AWARD = "award"
    SPORTS = "sports"
    CONFLICT = "conflict"
    GENERIC = "generic"


def _check_entity_id(entity_id: str) -> None:
    if not entity_id:
        raise ValueError("entity id must be non-empty")
    if any(c.isspace() for c in entity_id):
        raise ValueError(f"entity id must not contain whitespace: {entity_id!r}")


@dataclass(frozen=True)
class Entity:
    """A node of the graph.

    Date fields are kind-specific: ``birth``/``death`` are for persons,
    ``start``/``end`` and ``event_class`` for events. ``mention_count`` is the
    Wikipedia-derived popularity used for relevance ranking and name-match
    tie-breaking.
    """

    id: str
    kind: EntityKind
    label: str
    aliases: tuple[str, ...] = ()
    birth: PartialDate | None = None
    death: PartialDate | None = None
    start: PartialDate | None = None
    end: PartialDate | None = None
    latitude: float | None = None
    longitude: float | None = None
    event_class: str | None = None
    mention_count: int = 0
    wikipedia_url: str | None = None

    def __post_init__(self):
        _check_entity_id(self.id)
        if not self.label:
            raise ValueError(f"entity {self.id!r} has an empty label")
        if self.mention_count < 0:
            raise ValueError(f"entity {self.id!r} has negative mention_count")
        if self.kind is not EntityKind.PERSON and (self.birth or self.death):
            raise ValueError(f"entity {self.id!r}: birth/death are person-only fields")
        if self.kind is not EntityKind.EVENT and (self.start or self.end or self.event_class):
            raise ValueError(f"entity {self.id!r}: start/end/event_class are event-only fields")
        if not intervals_ordered(self.birth, self.death):
            raise ValueError(f"entity {self.id!r}: birth after death")
        if not intervals_ordered(self.start, self.end):
            raise ValueError(f"entity {self.id!r}: start after end")
        if (self.latitude is None) != (self.longitude is None):
            raise ValueError(f"entity {self.id!r}: latitude and longitude must come together")
        if self.latitude is not None and not -90.0 <= self.latitude <= 90.0:
            raise ValueError(f"entity {self.id!r}: latitude out of range")
        if self.longitude is not None and not -180.0 <= self.longitude <= 180.0:
            raise ValueError(f"entity {self.id!r}: longitude out of range")

    @property
    def location(self) -> tuple[float, float] | None:
        if self.latitude is None:
            return None
        return (self.latitude, self.longitude)


@dataclass(frozen=True)
class Triple:
    """A temporal subject-predicate-object edge.

    The object is an entity id when ``object_is_entity`` is true, otherwise a
    literal string. ``valid_from``/``valid_to`` bound when the relation held.
    """

    subject: str
    predicate: str
    object: str
    object_is_entity: bool = True
    valid_from: PartialDate | None = None
    valid_to: PartialDate | None = None

    def __post_init__(self):
        _check_entity_id(self.subject)
        if not self.predicate:
            raise ValueError("triple predicate must be non-empty")
        if self.object_is_entity:
            _check_entity_id(self.object)
        if not intervals_ordered(self.valid_from, self.valid_to):
            raise ValueError(
                f"triple {self.subject!r} {self.predicate!r} {self.object!r}: "
                "valid_from after valid_to"
            )


class EventClassOntology:
    """Event-type hierarchy with transitive subclass resolution.

    Parent links must form a forest. Icon categories attach to some classes;
    unmapped classes inherit the nearest mapped ancestor's icon and fall back
    to ``generic``.
    """

    def __init__(
        self,
        parents: Mapping[str, str | None],
        icons: Mapping[str, IconCategory] = MappingProxyType({}),
    ):
        self._parents = dict(parents)
        self._icons = {c: IconCategory(i) for c, i in icons.items()}
        problems = []
        for cls, parent in self._parents.items():
            if parent is not None and parent not in self._parents:
                problems.append(f"class {cls!r} has unknown parent {parent!r}")
        for cls in self._icons:
            if cls not in self._parents:
                problems.append(f"icon mapped for unknown class {cls!r}")
        if problems:
            raise IntegrityError(problems)
        cycle = self._find_cycle()
        if cycle:
            raise IntegrityError([f"ontology cycle: {' -> '.join(cycle)}"])

    def _find_cycle(self) -> list[str] | None:
        for start in self._parents:
            seen = {start}
            node = self._parents[start]
            while node is not None:
                if node in seen:
                    return sorted(seen)
                seen.add(node)
                node = self._parents[node]
        return None

    @property
    def classes(self) -> frozenset[str]:
        return frozenset(self._parents)

    def parent(self, class_id: str) -> str | None:
        if class_id not in self._parents:
            raise UnknownClass(class_id)
        return self._parents[class_id]

    def explicit_icon(self, class_id: str) -> IconCategory | None:
        if class_id not in self._parents:
            raise UnknownClass(class_id)
        return self._icons.get(class_id)

    def is_subclass_of(self, child: str, ancestor: str) -> bool:
        """Reflexive-transitive subclass test along parent links."""
        if ancestor not in self._parents:
            raise UnknownClass(ancestor)
        node: str | None = child
        if node not in self._parents:
            raise UnknownClass(child)
        while node is not None:
            if node == ancestor:
                return True
            node = self._parents[node]
        return False

    def icon_for(self, class_id: str) -> IconCategory:
        """Icon of the nearest ancestor (including self) with an explicit icon."""
        node: str | None = class_id
        if node not in self._parents:
            raise UnknownClass(class_id)
        while node is not None:
            icon = self._icons.get(node)
            if icon is not None:
                return icon
            node = self._parents[node]
        return IconCategory.GENERIC

    def __eq__(self, other) -> bool:
        if not isinstance(other, EventClassOntology):
            return NotImplemented
        return self._parents == other._parents and self._icons == other._icons

    def __repr__(self) -> str:
        return f"EventClassOntology({len(self._parents)} classes)"


def is_subclass_of(ontology: EventClassOntology, child: str, ancestor: str) -> bool:
    return ontology.is_subclass_of(child, ancestor)


def icon_for(ontology: EventClassOntology, event_class: str) -> IconCategory:
    return ontology.icon_for(event_class)


class KnowledgeGraph:
    """Construct-once, read-many graph snapshot.

    Construction checks referential integrity exhaustively (all dangling ids
    are collected into one IntegrityError) and builds subject/object adjacency
    indexes. After construction the graph is immutable and safe for
    concurrent reads.
    """

    def __init__(
        self,
        entities: Iterable[Entity],
        triples: Iterable[Triple],
        ontology: EventClassOntology | None = None,
    ):
        by_id: dict[str, Entity] = {}
        problems: list[str] = []
        for entity in entities:
            if entity.id in by_id:
                problems.append(f"duplicate entity id {entity.id!r}")
            by_id[entity.id] = entity
        self._entities = by_id
        self._triples = tuple(triples)
        self._ontology = ontology if ontology is not None else EventClassOntology({})

        by_subject: dict[str, list[int]] = {}
        by_object: dict[str, list[int]] = {}
        for idx, t in enumerate(self._triples):
            if t.subject not in by_id:
                problems.append(f"triple {idx}: dangling subject {t.subject!r}")
            if t.object_is_entity and t.object not in by_id:
                problems.append(f"triple {idx}: dangling object {t.object!r}")
            by_subject.setdefault(t.subject, []).append(idx)
            if t.object_is_entity:
                by_object.setdefault(t.object, []).append(idx)
        for entity in by_id.values():
            if entity.event_class is not None and entity.event_class not in self._ontology.classes:
                problems.append(
                    f"entity {entity.id!r}: unknown event class {entity.event_class!r}"
                )
        if problems:
            raise IntegrityError(problems)
        self._by_subject = {k: tuple(v) for k, v in by_subject.items()}
        self._by_object = {k: tuple(v) for k, v in by_object.items()}

    @property
    def entities(self) -> Mapping[str, Entity]:
        return MappingProxyType(self._entities)

    @property
    def triples(self) -> tuple[Triple, ...]:
        return self._triples

    @property
    def ontology(self) -> EventClassOntology:
        return self._ontology

    @property
    def by_subject(self) -> Mapping[str, tuple[int, ...]]:
        return MappingProxyType(self._by_subject)

    @property
    def by_object(self) -> Mapping[str, tuple[int, ...]]:
        return MappingProxyType(self._by_object)

    def entity(self, entity_id: str) -> Entity:
        try:
            return self._entities[entity_id]
        except KeyError:
            raise UnknownEntity(entity_id) from None

    def neighbors(self, entity_id: str) -> list[Triple]:
        """Every triple touching the entity (as subject or entity object), in load order."""
        if entity_id not in self._entities:
            raise UnknownEntity(entity_id)
        indexes = set(self._by_subject.get(entity_id, ()))
        indexes.update(self._by_object.get(entity_id, ()))
        return [self._triples[i] for i in sorted(indexes)]

    def persons(self) -> list[Entity]:
        return [e for e in self._entities.values() if e.kind is EntityKind.PERSON]

    def __eq__(self, other) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return (
            self._entities == other._entities
            and self._triples == other._triples
            and self._ontology == other._ontology
        )

    def __repr__(self) -> str:
        return f"KnowledgeGraph({len(self._entities)} entities, {len(self._triples)} triples)"


def neighbors(graph: KnowledgeGraph, entity_id: str) -> list[Triple]:
    return graph.neighbors(entity_id)
