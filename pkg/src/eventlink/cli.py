"""Command-line front end: ask questions, serve the API, render reports."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .config import ServiceConfig, default_data_dir
from .errors import IntegrityError, NoPersonsFound, ParseError, TooManyPersons
from .ingest import DatasetManifest, load_dataset, validate_graph
from .pipeline import QueryEngine

EXIT_LOAD_ERROR = 1
EXIT_QUERY_ERROR = 2

_data_option = click.option(
    "--data",
    "data_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Dataset directory (entities.tsv, triples.tsv, ontology.tsv, ...); defaults to the bundled fixture.",
)


def _load_engine(data_dir: Path | None, **config_overrides) -> QueryEngine:
    from .service import build_engine

    directory = data_dir if data_dir is not None else default_data_dir()
    config = ServiceConfig.from_env(data_dir=directory, **config_overrides)
    try:
        return build_engine(config)
    except (ParseError, IntegrityError, OSError) as exc:
        click.echo(f"error: could not load dataset from {directory}: {exc}", err=True)
        sys.exit(EXIT_LOAD_ERROR)


def _run_query(engine: QueryEngine, question: str) -> dict:
    try:
        return engine.respond(question)
    except NoPersonsFound:
        click.echo("error: no person names resolved; try one of the sample queries", err=True)
        sys.exit(EXIT_QUERY_ERROR)
    except TooManyPersons as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_QUERY_ERROR)


def _format_text(response: dict) -> str:
    lines = [response["answer"]["text"], ""]
    if response["shared_events"]:
        lines.append("Shared events:")
        for s in response["shared_events"]:
            descriptor = response["events"][s["event"]]
            window = descriptor["start"] or "?"
            if descriptor["end"]:
                window += f" to {descriptor['end']}"
            names = ", ".join(
                next(p["label"] for p in response["persons"] if p["id"] == pid)
                for pid in s["participants"]
            )
            lines.append(f"  - {descriptor['label']} ({window}) with {names}")
    if response["warnings"]:
        lines.append("")
        lines.extend(f"note: {w}" for w in response["warnings"])
    return "\n".join(lines)


@click.group()
def main():
    """Question answering over an event-centric knowledge graph."""


@main.command()
@click.argument("question")
@_data_option
@click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text")
@click.option("--generator-url", default=None, help="External text generator endpoint (optional).")
def ask(question: str, data_dir: Path | None, output_format: str, generator_url: str | None):
    """Answer QUESTION and list the shared events."""
    if not question.strip():
        click.echo("error: empty question", err=True)
        sys.exit(EXIT_QUERY_ERROR)
    engine = _load_engine(data_dir, generator_url=generator_url)
    response = _run_query(engine, question)
    if output_format == "json":
        click.echo(json.dumps(response, ensure_ascii=False, indent=2))
    else:
        click.echo(_format_text(response))


@main.command()
@click.argument("question")
@_data_option
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), required=True)
@click.option("--dpi", default=150, show_default=True)
def report(question: str, data_dir: Path | None, out_dir: Path, dpi: int):
    """Answer QUESTION and render figures plus TSV exports into --out."""
    from .figures import render_report

    if not question.strip():
        click.echo("error: empty question", err=True)
        sys.exit(EXIT_QUERY_ERROR)
    engine = _load_engine(data_dir)
    response = _run_query(engine, question)
    paths = render_report(response, out_dir, dpi=dpi)
    (Path(out_dir) / "response.json").write_text(
        json.dumps(response, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    for path in paths:
        click.echo(str(path))


@main.command()
@_data_option
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--generator-url", default=None)
def serve(data_dir: Path | None, host: str | None, port: int | None, generator_url: str | None):
    """Run the HTTP JSON API."""
    from .service import run

    directory = data_dir if data_dir is not None else default_data_dir()
    try:
        config = ServiceConfig.from_env(
            data_dir=directory, host=host, port=port, generator_url=generator_url
        )
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_LOAD_ERROR)
    try:
        run(config)
    except (ParseError, IntegrityError, OSError) as exc:
        click.echo(f"error: could not load dataset: {exc}", err=True)
        sys.exit(EXIT_LOAD_ERROR)


@main.command()
@_data_option
def validate(data_dir: Path | None):
    """Load a dataset and print non-fatal warnings about missing data."""
    directory = data_dir if data_dir is not None else default_data_dir()
    try:
        graph = load_dataset(DatasetManifest.from_dir(directory))
    except (ParseError, IntegrityError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_LOAD_ERROR)
    warnings = validate_graph(graph)
    click.echo(f"loaded {len(graph.entities)} entities, {len(graph.triples)} triples")
    for warning in warnings:
        click.echo(f"warning [{warning.code}] {warning.message}")
    click.echo(f"{len(warnings)} warnings")


@main.command()
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--persons", type=int, default=10, show_default=True)
@click.option("--events", type=int, default=20, show_default=True)
@click.option("--triples", type=int, default=60, show_default=True)
def synth(out_dir: Path, seed: int, persons: int, events: int, triples: int):
    """Generate a random synthetic dataset in the TSV formats."""
    from .ingest import write_dataset
    from .synth import synthetic_graph

    graph = synthetic_graph(seed, n_persons=persons, n_events=events, n_triples=triples)
    write_dataset(graph, out_dir)
    click.echo(f"wrote {len(graph.entities)} entities, {len(graph.triples)} triples to {out_dir}")


if __name__ == "__main__":
    main()
