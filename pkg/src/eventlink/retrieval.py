"""Event retrieval and view-ready layout for a structured query.

Given resolved persons, computes each person's events, the events shared
between two or more of them, the direct person-to-person relations, a
relevance-ranked selection, and the data the timeline, map, and relationship
graph views render. Everything here is a pure read over the immutable graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .dates import PartialDate, span_days, strictly_before
from .graph import EntityKind, IconCategory, KnowledgeGraph

RELEVANCE_CAP = 50


@dataclass(frozen=True)
class SharedEvent:
    """An event linked to two or more of the queried persons."""

    event: str
    participants: tuple[str, ...]


@dataclass(frozen=True)
class PersonRelation:
    """A direct triple between two queried persons, with its validity window."""

    subject: str
    predicate: str
    object: str
    valid_from: PartialDate | None = None
    valid_to: PartialDate | None = None


@dataclass(frozen=True)
class PersonEvents:
    """One person's selected events plus the lifespan the timeline draws.

    The lifespan starts at birth and ends at the later of death and the last
    selected event's end, so posthumous awards extend the line.
    """

    person: str
    events: tuple[tuple[str, str], ...]  # (event id, predicate)
    lifespan_start: PartialDate | None
    lifespan_end: PartialDate | None


@dataclass(frozen=True)
class PlacedEvent:
    event: str
    start: PartialDate
    end: PartialDate
    row: int
    icon: IconCategory
    participants: tuple[str, ...]


@dataclass(frozen=True)
class TimelineLane:
    person: str
    lifespan_start: PartialDate | None
    lifespan_end: PartialDate | None
    row_count: int
    events: tuple[PlacedEvent, ...]


@dataclass(frozen=True)
class TimelineLayout:
    lanes: tuple[TimelineLane, ...]
    omitted: tuple[str, ...]  # events excluded for lack of a start date


@dataclass(frozen=True)
class MapPoint:
    event: str
    latitude: float
    longitude: float
    participants: tuple[str, ...]


@dataclass(frozen=True)
class GraphNode:
    id: str
    kind: str  # "person" or "event"


@dataclass(frozen=True)
class GraphEdge:
    person: str
    event: str


def events_of(graph: KnowledgeGraph, person: str) -> list[tuple[str, str]]:
    """(event id, predicate) pairs for every event the person is linked to.

    Both triple directions count; duplicates of the same (event, predicate)
    pair collapse. Order follows triple load order.
    """
    pairs: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()
    for t in graph.neighbors(person):
        if t.subject == person and t.object_is_entity:
            other = t.object
        elif t.object_is_entity and t.object == person:
            other = t.subject
        else:
            continue
        if graph.entity(other).kind is not EntityKind.EVENT:
            continue
        pair = (other, t.predicate)
        if pair not in seen:
            seen.add(pair)
            pairs.append(pair)
    return pairs


def shared_events(graph: KnowledgeGraph, persons: Sequence[str]) -> list[SharedEvent]:
    """Events linked to at least two of the queried persons.

    Participants are exactly the queried persons with a link to the event, in
    query order. Sorted by participant count (desc), mention count (desc),
    then event id.
    """
    order = {p: i for i, p in enumerate(persons)}
    participation: dict[str, set[str]] = {}
    for person in order:
        for event_id in {e for e, _ in events_of(graph, person)}:
            participation.setdefault(event_id, set()).add(person)
    shared = [
        SharedEvent(event=event_id, participants=tuple(sorted(people, key=order.__getitem__)))
        for event_id, people in participation.items()
        if len(people) >= 2
    ]
    shared.sort(
        key=lambda s: (-len(s.participants), -graph.entity(s.event).mention_count, s.event)
    )
    return shared


def person_relations(graph: KnowledgeGraph, persons: Sequence[str]) -> list[PersonRelation]:
    """Direct triples whose subject and entity object are both queried persons."""
    wanted = set(persons)
    relations: list[PersonRelation] = []
    for t in graph.triples:
        if t.subject in wanted and t.object_is_entity and t.object in wanted:
            relations.append(
                PersonRelation(t.subject, t.predicate, t.object, t.valid_from, t.valid_to)
            )
    return relations


def select_relevant(
    graph: KnowledgeGraph,
    event_ids: Iterable[str],
    cap: int = RELEVANCE_CAP,
    always_keep: frozenset[str] = frozenset(),
) -> list[str]:
    """Top events by mention count, truncated to ``cap``.

    Events in ``always_keep`` (the shared ones) survive truncation no matter
    how far down the ranking they fall. Result keeps ranking order.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    unique = list(dict.fromkeys(event_ids))
    ranked = sorted(unique, key=lambda e: (-graph.entity(e).mention_count, e))
    return [e for i, e in enumerate(ranked) if i < cap or e in always_keep]


def collect_person_events(
    graph: KnowledgeGraph,
    person: str,
    cap: int = RELEVANCE_CAP,
    always_keep: frozenset[str] = frozenset(),
) -> PersonEvents:
    """Relevance-selected events for one person, with the lifespan computed."""
    pairs = events_of(graph, person)
    selected = set(select_relevant(graph, (e for e, _ in pairs), cap, always_keep))
    kept = tuple((e, p) for e, p in pairs if e in selected)

    entity = graph.entity(person)
    start = entity.birth
    if start is None:
        starts = [graph.entity(e).start for e, _ in kept if graph.entity(e).start is not None]
        start = min(starts, key=lambda d: d.earliest(), default=None)
    end_candidates = [entity.death] if entity.death is not None else []
    for event_id, _ in kept:
        ev = graph.entity(event_id)
        effective_end = ev.end or ev.start
        if effective_end is not None:
            end_candidates.append(effective_end)
    end = max(end_candidates, key=lambda d: d.latest(), default=None)
    return PersonEvents(person=person, events=kept, lifespan_start=start, lifespan_end=end)


def _first_fit_rows(
    intervals: Sequence[tuple[str, PartialDate, PartialDate]],
) -> list[tuple[str, int]]:
    """Greedy first-fit stacking of (id, start, end) intervals.

    Input must already be sorted; an interval goes to the lowest row whose
    previous occupant ends strictly before it starts.
    """
    row_last_end: list[PartialDate] = []
    placed: list[tuple[str, int]] = []
    for event_id, start, end in intervals:
        row = None
        for idx, last_end in enumerate(row_last_end):
            if strictly_before(last_end, start):
                row = idx
                break
        if row is None:
            row = len(row_last_end)
            row_last_end.append(end)
        else:
            row_last_end[row] = end
        placed.append((event_id, row))
    return placed


def layout_timeline(
    graph: KnowledgeGraph,
    person_events: Sequence[PersonEvents],
    shared: Sequence[SharedEvent],
    clamp_to_lifespan: bool = False,
) -> TimelineLayout:
    """Stack each person's dated events into rows with no in-row overlap.

    Events without a start date cannot be placed and are reported in
    ``omitted`` instead. Point events take end = start. With
    ``clamp_to_lifespan`` set, event bars are cut to the person's birth-death
    window (events falling entirely outside it are omitted); by default
    prolonged events are drawn as-is even when they spill past the lifespan.
    """
    participants_of = {s.event: s.participants for s in shared}
    lanes: list[TimelineLane] = []
    omitted: list[str] = []
    omitted_seen: set[str] = set()
    for pe in person_events:
        entity = graph.entity(pe.person)
        intervals: list[tuple[str, PartialDate, PartialDate]] = []
        for event_id in dict.fromkeys(e for e, _ in pe.events):
            ev = graph.entity(event_id)
            if ev.start is None:
                if event_id not in omitted_seen:
                    omitted_seen.add(event_id)
                    omitted.append(event_id)
                continue
            start, end = ev.start, ev.end or ev.start
            if clamp_to_lifespan:
                if entity.birth is not None and start.earliest() < entity.birth.earliest():
                    start = entity.birth
                if entity.death is not None and end.latest() > entity.death.latest():
                    end = entity.death
                if start.earliest() > end.latest():
                    continue
            intervals.append((event_id, start, end))
        intervals.sort(key=lambda t: (t[1].earliest(), -span_days(t[1], t[2]), t[0]))
        rows = dict(_first_fit_rows(intervals))
        placed = tuple(
            PlacedEvent(
                event=event_id,
                start=start,
                end=end,
                row=rows[event_id],
                icon=_icon_of(graph, event_id),
                participants=participants_of.get(event_id, (pe.person,)),
            )
            for event_id, start, end in intervals
        )
        lanes.append(
            TimelineLane(
                person=pe.person,
                lifespan_start=pe.lifespan_start,
                lifespan_end=pe.lifespan_end,
                row_count=max((p.row for p in placed), default=-1) + 1,
                events=placed,
            )
        )
    return TimelineLayout(lanes=tuple(lanes), omitted=tuple(omitted))


def _icon_of(graph: KnowledgeGraph, event_id: str) -> IconCategory:
    event_class = graph.entity(event_id).event_class
    if event_class is None:
        return IconCategory.GENERIC
    return graph.ontology.icon_for(event_class)


def map_points(
    graph: KnowledgeGraph,
    person_events: Sequence[PersonEvents],
    shared: Sequence[SharedEvent],
) -> list[MapPoint]:
    """Located, dated events as map glyph data, ordered by event id.

    Undated events stay off the map for the same reason they stay off the
    timeline; events without coordinates simply cannot be placed.
    """
    participants_of = {s.event: s.participants for s in shared}
    owner: dict[str, str] = {}
    for pe in person_events:
        for event_id, _ in pe.events:
            owner.setdefault(event_id, pe.person)
    points = []
    for event_id in sorted(owner):
        ev = graph.entity(event_id)
        if ev.latitude is None or ev.start is None:
            continue
        points.append(
            MapPoint(
                event=event_id,
                latitude=ev.latitude,
                longitude=ev.longitude,
                participants=participants_of.get(event_id, (owner[event_id],)),
            )
        )
    return points


def relation_graph(
    persons: Sequence[str],
    shared: Sequence[SharedEvent],
) -> tuple[list[GraphNode], list[GraphEdge]]:
    """Node/edge lists for the relationship graph view.

    Only shared events appear; events of a single person would add clutter
    without showing connectivity. Layout is left to the client.
    """
    nodes = [GraphNode(p, "person") for p in persons]
    nodes.extend(GraphNode(s.event, "event") for s in shared)
    edges = [GraphEdge(person, s.event) for s in shared for person in s.participants]
    return nodes, edges
