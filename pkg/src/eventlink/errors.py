"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class EventLinkError(Exception):
    """Base class for all errors raised by this package."""


class UnknownEntity(EventLinkError):
    """An entity id was queried that is not present in the loaded graph."""

    def __init__(self, entity_id: str):
        super().__init__(f"unknown entity: {entity_id!r}")
        self.entity_id = entity_id


class UnknownClass(EventLinkError):
    """An ontology class id was queried that is not defined."""

    def __init__(self, class_id: str):
        super().__init__(f"unknown event class: {class_id!r}")
        self.class_id = class_id


@dataclass(frozen=True)
class ParseIssue:
    """One malformed row in a dataset file."""

    file: str
    line: int
    reason: str

    def __str__(self) -> str:
        return f"{self.file}:{self.line}: {self.reason}"


class ParseError(EventLinkError):
    """Raised after a dataset file scan; carries every malformed row found."""

    def __init__(self, issues: list[ParseIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class IntegrityError(EventLinkError):
    """Structural problems in a graph: dangling references or ontology cycles.

    ``issues`` holds one human-readable string per problem; all problems are
    collected before raising, not reported one at a time.
    """

    def __init__(self, issues: list[str]):
        self.issues = list(issues)
        super().__init__("; ".join(self.issues))


class NoPersonsFound(EventLinkError):
    """No person name in the question resolved against the graph."""

    def __init__(self, question: str):
        super().__init__(f"no person names resolved in question: {question!r}")
        self.question = question


class TooManyPersons(EventLinkError):
    """More distinct persons resolved than a single query supports."""

    def __init__(self, count: int, limit: int):
        super().__init__(f"question names {count} persons; the limit is {limit}")
        self.count = count
        self.limit = limit
