"""Dataset loading: TSV files in, validated knowledge graph out.

All files are UTF-8 TSV with a header row; an empty cell means "absent".
Malformed rows are collected per load and reported together with file and
line numbers, never one at a time.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .dates import PartialDate
from .embeddings import EmbeddingProvider
from .errors import IntegrityError, ParseError, ParseIssue
from .graph import Entity, EntityKind, EventClassOntology, IconCategory, KnowledgeGraph, Triple

ENTITY_COLUMNS = [
    "id", "kind", "label", "aliases", "birth", "death", "start", "end",
    "lat", "lon", "event_class", "mention_count", "wikipedia_url",
]
TRIPLE_COLUMNS = ["subject", "predicate", "object", "object_is_entity", "valid_from", "valid_to"]
ONTOLOGY_COLUMNS = ["class", "parent", "icon"]


@dataclass(frozen=True)
class DatasetManifest:
    """Where the pieces of one dataset live on disk."""

    entities_path: Path
    triples_path: Path
    ontology_path: Path
    embeddings_path: Path | None = None
    stopwords_path: Path | None = None

    @classmethod
    def from_dir(cls, directory: str | Path) -> DatasetManifest:
        """Conventional file names inside one directory; optional files only when present."""
        d = Path(directory)
        embeddings = d / "embeddings.tsv"
        stopwords = d / "stopwords.txt"
        return cls(
            entities_path=d / "entities.tsv",
            triples_path=d / "triples.tsv",
            ontology_path=d / "ontology.tsv",
            embeddings_path=embeddings if embeddings.exists() else None,
            stopwords_path=stopwords if stopwords.exists() else None,
        )


@dataclass(frozen=True)
class GraphWarning:
    """Non-fatal data gap found by validate_graph."""

    code: str
    entity_id: str
    message: str


def _read_rows(path: Path, columns: list[str], issues: list[ParseIssue]) -> list[tuple[int, dict[str, str]]]:
    """Rows of a TSV file as (line number, column dict); header is line 1."""
    rows: list[tuple[int, dict[str, str]]] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        header = next(reader, None)
        if header is None:
            issues.append(ParseIssue(path.name, 1, "missing header row"))
            return rows
        if header != columns:
            issues.append(ParseIssue(path.name, 1, f"bad header: expected {columns}, got {header}"))
            return rows
        for lineno, raw in enumerate(reader, start=2):
            if not raw or all(cell == "" for cell in raw):
                continue
            if len(raw) != len(columns):
                issues.append(
                    ParseIssue(path.name, lineno, f"expected {len(columns)} columns, got {len(raw)}")
                )
                continue
            rows.append((lineno, dict(zip(columns, raw))))
    return rows


def _opt_date(cell: str) -> PartialDate | None:
    return PartialDate.parse(cell) if cell else None


def _opt_float(cell: str) -> float | None:
    return float(cell) if cell else None


def _parse_entity(row: dict[str, str]) -> Entity:
    return Entity(
        id=row["id"],
        kind=EntityKind(row["kind"]),
        label=row["label"],
        aliases=tuple(a for a in row["aliases"].split("|") if a),
        birth=_opt_date(row["birth"]),
        death=_opt_date(row["death"]),
        start=_opt_date(row["start"]),
        end=_opt_date(row["end"]),
        latitude=_opt_float(row["lat"]),
        longitude=_opt_float(row["lon"]),
        event_class=row["event_class"] or None,
        mention_count=int(row["mention_count"]) if row["mention_count"] else 0,
        wikipedia_url=row["wikipedia_url"] or None,
    )


def _parse_triple(row: dict[str, str]) -> Triple:
    if row["object_is_entity"] not in ("0", "1"):
        raise ValueError(f"object_is_entity must be 0 or 1, got {row['object_is_entity']!r}")
    return Triple(
        subject=row["subject"],
        predicate=row["predicate"],
        object=row["object"],
        object_is_entity=row["object_is_entity"] == "1",
        valid_from=_opt_date(row["valid_from"]),
        valid_to=_opt_date(row["valid_to"]),
    )


def load_dataset(manifest: DatasetManifest) -> KnowledgeGraph:
    """Load, validate, and index a dataset.

    Raises ParseError with every malformed row, or IntegrityError with every
    dangling reference (each tagged with file and line number). Loading the
    same files always produces an identical graph.
    """
    issues: list[ParseIssue] = []
    entity_rows = _read_rows(Path(manifest.entities_path), ENTITY_COLUMNS, issues)
    triple_rows = _read_rows(Path(manifest.triples_path), TRIPLE_COLUMNS, issues)
    ontology_rows = _read_rows(Path(manifest.ontology_path), ONTOLOGY_COLUMNS, issues)

    entities: list[Entity] = []
    for lineno, row in entity_rows:
        try:
            entities.append(_parse_entity(row))
        except ValueError as exc:
            issues.append(ParseIssue(Path(manifest.entities_path).name, lineno, str(exc)))

    triples: list[tuple[int, Triple]] = []
    for lineno, row in triple_rows:
        try:
            triples.append((lineno, _parse_triple(row)))
        except ValueError as exc:
            issues.append(ParseIssue(Path(manifest.triples_path).name, lineno, str(exc)))

    parents: dict[str, str | None] = {}
    icons: dict[str, IconCategory] = {}
    for lineno, row in ontology_rows:
        cls = row["class"]
        if not cls:
            issues.append(ParseIssue(Path(manifest.ontology_path).name, lineno, "empty class id"))
            continue
        parents[cls] = row["parent"] or None
        if row["icon"]:
            try:
                icons[cls] = IconCategory(row["icon"])
            except ValueError:
                issues.append(
                    ParseIssue(Path(manifest.ontology_path).name, lineno, f"unknown icon {row['icon']!r}")
                )

    if issues:
        raise ParseError(issues)

    # Integrity is checked here rather than left to the graph constructor so
    # every dangling reference carries its file and line number.
    known = {e.id for e in entities}
    dangling: list[str] = []
    triples_file = Path(manifest.triples_path).name
    for lineno, t in triples:
        if t.subject not in known:
            dangling.append(f"{triples_file}:{lineno}: dangling subject {t.subject!r}")
        if t.object_is_entity and t.object not in known:
            dangling.append(f"{triples_file}:{lineno}: dangling object {t.object!r}")
    entities_file = Path(manifest.entities_path).name
    for e in entities:
        if e.event_class is not None and e.event_class not in parents:
            dangling.append(f"{entities_file}: entity {e.id!r} has unknown event class {e.event_class!r}")
    if dangling:
        raise IntegrityError(dangling)

    ontology = EventClassOntology(parents, icons)
    return KnowledgeGraph(entities, [t for _, t in triples], ontology)


def load_stopwords(path: str | Path) -> frozenset[str]:
    """One lowercase word per line; blank lines ignored."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word:
                words.add(word.lower())
    return frozenset(words)


def load_embeddings(path: str | Path) -> EmbeddingProvider:
    """Header line, then rows of: word, whitespace-separated vector components."""
    path = Path(path)
    issues: list[ParseIssue] = []
    vectors: dict[str, list[float]] = {}
    dimension: int | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if lineno == 1 or not line.strip():
                continue
            parts = line.split()
            try:
                vec = [float(x) for x in parts[1:]]
            except ValueError as exc:
                issues.append(ParseIssue(path.name, lineno, str(exc)))
                continue
            if not vec:
                issues.append(ParseIssue(path.name, lineno, "no vector components"))
                continue
            if dimension is None:
                dimension = len(vec)
            elif len(vec) != dimension:
                issues.append(
                    ParseIssue(path.name, lineno, f"dimension {len(vec)} != {dimension}")
                )
                continue
            vectors[parts[0]] = vec
    if issues:
        raise ParseError(issues)
    return EmbeddingProvider(vectors)


def _date_cell(d: PartialDate | None) -> str:
    return d.isoformat() if d is not None else ""


def _float_cell(x: float | None) -> str:
    return repr(x) if x is not None else ""


def write_dataset(graph: KnowledgeGraph, directory: str | Path) -> None:
    """Serialize a graph back to the TSV formats; reloading yields an equal graph."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    with open(d / "entities.tsv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(ENTITY_COLUMNS)
        for e in graph.entities.values():
            w.writerow([
                e.id, e.kind.value, e.label, "|".join(e.aliases),
                _date_cell(e.birth), _date_cell(e.death), _date_cell(e.start), _date_cell(e.end),
                _float_cell(e.latitude), _float_cell(e.longitude),
                e.event_class or "", str(e.mention_count), e.wikipedia_url or "",
            ])
    with open(d / "triples.tsv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(TRIPLE_COLUMNS)
        for t in graph.triples:
            w.writerow([
                t.subject, t.predicate, t.object, "1" if t.object_is_entity else "0",
                _date_cell(t.valid_from), _date_cell(t.valid_to),
            ])
    with open(d / "ontology.tsv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(ONTOLOGY_COLUMNS)
        ontology = graph.ontology
        for cls in sorted(ontology.classes):
            icon = ontology.explicit_icon(cls)
            w.writerow([cls, ontology.parent(cls) or "", icon.value if icon else ""])


def validate_graph(graph: KnowledgeGraph) -> list[GraphWarning]:
    """Non-fatal data gaps: missing person birth dates, event dates, event coordinates.

    These are all legal (the source data is incomplete in the same ways); the
    warnings exist so fixture authors and operators can see what the views
    will silently omit.
    """
    warnings: list[GraphWarning] = []
    for e in graph.entities.values():
        if e.kind is EntityKind.PERSON and e.birth is None:
            warnings.append(GraphWarning("person_no_birth", e.id, f"person {e.label!r} has no birth date"))
        elif e.kind is EntityKind.EVENT:
            if e.start is None:
                warnings.append(GraphWarning("event_no_start", e.id, f"event {e.label!r} has no start date"))
            if e.end is None:
                warnings.append(GraphWarning("event_no_end", e.id, f"event {e.label!r} has no end date"))
            if e.latitude is None:
                warnings.append(
                    GraphWarning("event_no_coordinates", e.id, f"event {e.label!r} has no coordinates")
                )
    return warnings
