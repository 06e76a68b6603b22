"""Static rendering of a query response: matplotlib figures plus TSV exports.

The report path consumes the same serialized response the HTTP clients get,
so the figures can never drift from what the API returns. Colors follow the
server-assigned per-person color index; shared events are drawn with the
stripes/wedges of every participant.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402
from matplotlib.patches import Rectangle, Wedge  # noqa: E402

from .dates import PartialDate  # noqa: E402

PALETTE = ["#4c78a8", "#f58518", "#54a24b", "#b279a2", "#e45756"]

ICON_MARKERS = {
    "birth": "*",
    "death": "+",
    "marriage": "o",
    "award": "^",
    "sports": "P",
    "conflict": "x",
    "generic": ".",
}

_DAYS_PER_YEAR = 365.2425


def _year_float(date_str: str, edge: str) -> float:
    d = PartialDate.parse(date_str)
    ordinal = d.earliest_ordinal() if edge == "start" else d.latest_ordinal() + 1
    return 1970.0 + ordinal / _DAYS_PER_YEAR


def _color_of(response: dict) -> dict[str, str]:
    return {p["id"]: PALETTE[p["color_index"]] for p in response["persons"]}


def _label_of(response: dict, entity_id: str) -> str:
    if entity_id in response["events"]:
        return response["events"][entity_id]["label"]
    for p in response["persons"]:
        if p["id"] == entity_id:
            return p["label"]
    return entity_id


def timeline_figure(response: dict) -> plt.Figure:
    """One lane per person; events stacked on their server-assigned rows."""
    colors = _color_of(response)
    lanes = response["timeline"]["lanes"]
    fig, axes = plt.subplots(
        len(lanes) or 1, 1, figsize=(11, 2.2 * max(len(lanes), 1)), sharex=True, squeeze=False
    )
    for ax_row, lane in zip(axes, lanes):
        ax = ax_row[0]
        person_color = colors[lane["person"]]
        row_count = max(lane["row_count"], 1)
        if lane["lifespan_start"] and lane["lifespan_end"]:
            x0 = _year_float(lane["lifespan_start"], "start")
            x1 = _year_float(lane["lifespan_end"], "end")
            ax.hlines(-0.5, x0, x1, color=person_color, linewidth=2, alpha=0.6)
        for ev in lane["events"]:
            x0 = _year_float(ev["start"], "start")
            x1 = max(_year_float(ev["end"], "end"), x0 + 0.15)
            participants = ev["participants"]
            height = 0.72 / len(participants)
            for k, participant in enumerate(participants):
                ax.add_patch(
                    Rectangle(
                        (x0, ev["row"] + k * height - 0.36),
                        x1 - x0,
                        height,
                        color=colors.get(participant, "#999999"),
                        linewidth=0,
                    )
                )
            ax.plot(
                [x0], [ev["row"] - 0.36],
                marker=ICON_MARKERS.get(ev["icon"], "."),
                color="black", markersize=6, linestyle="none",
            )
            ax.annotate(
                _label_of(response, ev["event"]),
                (x0, ev["row"] + 0.4),
                fontsize=7, va="bottom",
            )
        ax.set_ylim(-1, row_count)
        ax.set_yticks([])
        ax.set_ylabel(_label_of(response, lane["person"]), fontsize=9, color=person_color)
    axes[-1][0].set_xlabel("year")
    fig.suptitle("Event timeline")
    fig.tight_layout()
    return fig


def map_figure(response: dict) -> plt.Figure:
    """Located events on a plain equirectangular backdrop, split by participant."""
    colors = _color_of(response)
    fig, ax = plt.subplots(figsize=(10, 5.2))
    ax.set_xlim(-180, 180)
    ax.set_ylim(-90, 90)
    ax.set_facecolor("#eef3f7")
    ax.grid(True, color="white", linewidth=0.8)
    for point in response["map_points"]:
        participants = point["participants"]
        sweep = 360.0 / len(participants)
        for k, participant in enumerate(participants):
            ax.add_patch(
                Wedge(
                    (point["lon"], point["lat"]), 4.0,
                    90 + k * sweep, 90 + (k + 1) * sweep,
                    color=colors.get(participant, "#999999"),
                )
            )
        ax.annotate(
            _label_of(response, point["event"]),
            (point["lon"] + 4.5, point["lat"]),
            fontsize=7, va="center",
        )
    ax.set_xlabel("longitude")
    ax.set_ylabel("latitude")
    ax.set_title("Event map")
    fig.tight_layout()
    return fig


def graph_figure(response: dict) -> plt.Figure:
    """Relationship graph with a deterministic spring layout."""
    colors = _color_of(response)
    g = nx.Graph()
    for node in response["graph"]["nodes"]:
        g.add_node(node["id"], kind=node["kind"])
    for edge in response["graph"]["edges"]:
        g.add_edge(edge["person"], edge["event"], person=edge["person"])
    pos = nx.spring_layout(g, seed=7) if g.number_of_nodes() else {}
    fig, ax = plt.subplots(figsize=(7, 7))
    for a, b, data in g.edges(data=True):
        ax.plot(
            [pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]],
            color=colors.get(data["person"], "#999999"), linewidth=1.5, zorder=1,
        )
    for node_id, data in g.nodes(data=True):
        x, y = pos[node_id]
        if data["kind"] == "person":
            ax.scatter([x], [y], s=900, color=colors.get(node_id, "#999999"), zorder=2)
        else:
            participants = next(
                (s["participants"] for s in response["shared_events"] if s["event"] == node_id),
                [],
            )
            sweep = 360.0 / max(len(participants), 1)
            for k, participant in enumerate(participants):
                ax.add_patch(
                    Wedge((x, y), 0.045, 90 + k * sweep, 90 + (k + 1) * sweep,
                          color=colors.get(participant, "#999999"), zorder=2)
                )
        ax.annotate(_label_of(response, node_id), (x, y - 0.09), fontsize=8, ha="center", zorder=3)
    ax.set_axis_off()
    ax.set_title("Relationship graph")
    fig.tight_layout()
    return fig


def _write_tsv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def export_tables(response: dict, out_dir: Path) -> list[Path]:
    """TSV exports of the answer and per-view payloads."""
    paths = []

    path = out_dir / "answer.txt"
    path.write_text(response["answer"]["text"] + "\n", encoding="utf-8")
    paths.append(path)

    path = out_dir / "shared_events.tsv"
    _write_tsv(
        path,
        ["event", "label", "participants"],
        [
            [s["event"], _label_of(response, s["event"]), "|".join(s["participants"])]
            for s in response["shared_events"]
        ],
    )
    paths.append(path)

    path = out_dir / "timeline.tsv"
    rows = []
    for lane in response["timeline"]["lanes"]:
        for ev in lane["events"]:
            rows.append(
                [lane["person"], ev["event"], ev["start"], ev["end"], ev["row"], ev["icon"]]
            )
    _write_tsv(path, ["person", "event", "start", "end", "row", "icon"], rows)
    paths.append(path)

    path = out_dir / "map_points.tsv"
    _write_tsv(
        path,
        ["event", "lat", "lon", "participants"],
        [[p["event"], p["lat"], p["lon"], "|".join(p["participants"])] for p in response["map_points"]],
    )
    paths.append(path)

    path = out_dir / "relations.tsv"
    _write_tsv(
        path,
        ["subject", "predicate", "object", "valid_from", "valid_to"],
        [
            [r["subject"], r["predicate"], r["object"], r["valid_from"] or "", r["valid_to"] or ""]
            for r in response["relations"]
        ],
    )
    paths.append(path)
    return paths


def render_report(response: dict, out_dir: str | Path, dpi: int = 150) -> list[Path]:
    """Write the three view figures and the TSV exports into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = export_tables(response, out)
    for name, builder in (
        ("timeline.png", timeline_figure),
        ("map.png", map_figure),
        ("graph.png", graph_figure),
    ):
        fig = builder(response)
        target = out / name
        fig.savefig(target, dpi=dpi)
        plt.close(fig)
        paths.append(target)
    return paths
