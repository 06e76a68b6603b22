"""Question answering over an event-centric knowledge graph.

Given a natural-language question naming public figures, resolves the names
against a loaded graph, retrieves their individual and shared events plus
direct relations, and produces a textual answer alongside payloads for four
linked views: event timeline, event map, relationship graph, and chat.
"""

from .config import ServiceConfig, default_data_dir
from .dates import PartialDate
from .errors import (
    EventLinkError,
    IntegrityError,
    NoPersonsFound,
    ParseError,
    TooManyPersons,
    UnknownClass,
    UnknownEntity,
)
from .graph import Entity, EntityKind, EventClassOntology, IconCategory, KnowledgeGraph, Triple
from .ingest import DatasetManifest, load_dataset, validate_graph, write_dataset
from .pipeline import QueryEngine

__version__ = "0.1.0"

__all__ = [
    "DatasetManifest",
    "Entity",
    "EntityKind",
    "EventClassOntology",
    "EventLinkError",
    "IconCategory",
    "IntegrityError",
    "KnowledgeGraph",
    "NoPersonsFound",
    "ParseError",
    "PartialDate",
    "QueryEngine",
    "ServiceConfig",
    "TooManyPersons",
    "Triple",
    "UnknownClass",
    "UnknownEntity",
    "default_data_dir",
    "load_dataset",
    "validate_graph",
    "write_dataset",
    "__version__",
]
