"""Deterministic writers for graphs, tables and trend plots.

Every writer renders to a string first and writes it in one go, so the
same inputs always give byte-identical files.

CSV layouts:

* ``table_proximate.csv`` / ``table_distal.csv``:
  ``field,physics,chemistry,medicine,economics,any,none``
* ``ancestry_summary.csv``: ``scope,statistic,mean,se,n`` (mean and se
  left empty when undefined)
* ``trend_<metric>.csv`` (``trend_<metric>_prior.csv`` for prior-only
  counting): ``year,value,cohort_size``
* ``closeness.csv``: ``id,out_distance,in_distance,cross_distance,``
  ``out_closeness,in_closeness,cross_closeness,total_closeness``

Reals are written with 6 significant digits.
"""

from __future__ import annotations

import csv
import io
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .closeness import ClosenessRecord, ClosenessReport
from .errors import EmptySeriesError, GenealogyError, IoFailure
from .graph import FIELDS, Edge, Field, GenealogyGraph, Scholar, descendants, weak_components
from .ingest import parse_prizes
from .stats import SCOPES, SUMMARY_STATS, AncestrySummary, CohortPoint, CohortSeries, CrossTable, Summary

__all__ = [
    "FIELD_COLORS",
    "RenderSpec",
    "component_of",
    "lineage_of",
    "export_dot",
    "export_graphml",
    "read_graphml",
    "export_tables_csv",
    "export_closeness_csv",
    "read_cross_table_csv",
    "read_summary_csv",
    "read_series_csv",
    "read_closeness_csv",
    "export_svg_scatter",
    "fmt",
]

FIELD_COLORS: dict[Field | None, str] = {
    Field.MEDICINE: "red",
    Field.PHYSICS: "blue",
    Field.CHEMISTRY: "green",
    Field.ECONOMICS: "lightblue",
    None: "grey",
}

TABLE_HEADER = ("field",) + tuple(f.value for f in FIELDS) + ("any", "none")
SUMMARY_HEADER = ("scope", "statistic", "mean", "se", "n")
SERIES_HEADER = ("year", "value", "cohort_size")
CLOSENESS_HEADER = ClosenessRecord._fields


def fmt(x) -> str:
    """Six significant digits for reals, plain digits for integers."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    out = format(x, ".6g")
    return "0" if out == "-0" else out


def write_text(path, text: str) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"{path}: {exc.strerror}") from None
    return path


# -- graph renderings ----------------------------------------------------------


@dataclass(frozen=True)
class RenderSpec:
    """How nodes are coloured, sized and selected.

    ``size_rule="total_closeness"`` draws each node with side
    ``max(min_size, scale_factor * total_closeness)`` inches;
    ``"uniform"`` uses ``scale_factor`` for every node. ``include`` limits
    the rendering to a node set (see :func:`component_of`,
    :func:`lineage_of`); ``None`` keeps everything.
    """

    color_map: Mapping[Field | None, str] = field(default_factory=lambda: dict(FIELD_COLORS))
    size_rule: str = "total_closeness"
    scale_factor: float = 1.0
    include: frozenset[str] | None = None
    min_size: float = 0.05

    def __post_init__(self):
        missing = [k for k in FIELD_COLORS if k not in self.color_map]
        if missing:
            raise ValueError(f"color_map lacks entries for {missing}")
        if self.size_rule not in ("total_closeness", "uniform"):
            raise ValueError(f"unknown size rule {self.size_rule!r}")
        if not self.scale_factor > 0:
            raise ValueError("scale_factor must be positive")
        if self.include is not None:
            object.__setattr__(self, "include", frozenset(self.include))

    def selected(self, g: GenealogyGraph) -> list[str]:
        if self.include is None:
            return list(g.ids)
        return [x for x in g.ids if x in self.include]

    def color(self, s: Scholar) -> str:
        return self.color_map[s.primary_field]


def component_of(g: GenealogyGraph, node_id: str) -> frozenset[str]:
    """All members of the family tree containing ``node_id``."""
    g.index(node_id)
    for comp in weak_components(g).components:
        if node_id in comp.members:
            return frozenset(comp.members)
    return frozenset()  # unreachable for a valid id


def lineage_of(g: GenealogyGraph, node_id: str) -> frozenset[str]:
    """``node_id`` plus all of its descendants."""
    return frozenset(descendants(g, node_id) | {node_id})


def _node_size(spec: RenderSpec, rec: ClosenessRecord | None, node_id: str) -> float:
    if spec.size_rule == "uniform":
        return spec.scale_factor
    if rec is None:
        raise GenealogyError(f"closeness report has no row for {node_id!r}")
    if not math.isfinite(rec.total_closeness):
        raise GenealogyError(f"total closeness of {node_id!r} is not finite")
    return max(spec.min_size, spec.scale_factor * rec.total_closeness)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(g: GenealogyGraph, report: ClosenessReport | None, spec: RenderSpec = RenderSpec()) -> str:
    rows = report.by_id() if report is not None else {}
    chosen = spec.selected(g)
    keep = set(chosen)
    lines = [
        "digraph genealogy {",
        "  node [shape=circle, style=filled, fixedsize=true, fontsize=8];",
    ]
    for sid in chosen:
        s = g.scholars[sid]
        size = fmt(_node_size(spec, rows.get(sid), sid))
        lines.append(
            f"  {_dot_quote(sid)} [label={_dot_quote(s.name or sid)}, "
            f"fillcolor={_dot_quote(spec.color(s))}, width={size}, height={size}];"
        )
    for e in g.edges:
        if e.advisor in keep and e.student in keep:
            lines.append(f"  {_dot_quote(e.advisor)} -> {_dot_quote(e.student)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(g: GenealogyGraph, report: ClosenessReport | None, spec: RenderSpec, path) -> Path:
    """Write a Graphviz digraph with field colours and closeness-scaled nodes."""
    return write_text(path, render_dot(g, report, spec))


_GRAPHML_KEYS = (
    ("field", "string"),
    ("prizes", "string"),
    ("out_closeness", "double"),
    ("in_closeness", "double"),
    ("cross_closeness", "double"),
)


def _xsd_double(x: float) -> str:
    if math.isinf(x):
        return "INF" if x > 0 else "-INF"
    return repr(float(x))


def render_graphml(g: GenealogyGraph, report: ClosenessReport, spec: RenderSpec = RenderSpec()) -> str:
    rows = report.by_id()
    chosen = spec.selected(g)
    keep = set(chosen)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns" '
        'xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" '
        'xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns '
        'http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">',
    ]
    for k, (name, typ) in enumerate(_GRAPHML_KEYS):
        out.append(f'  <key id="d{k}" for="node" attr.name="{name}" attr.type="{typ}"/>')
    out.append('  <graph id="genealogy" edgedefault="directed">')
    for sid in chosen:
        s = g.scholars[sid]
        rec = rows.get(sid)
        if rec is None:
            raise GenealogyError(f"closeness report has no row for {sid!r}")
        values = (
            s.primary_field.value if s.primary_field else "",
            ";".join(p.token() for p in s.prizes),
            _xsd_double(rec.out_closeness),
            _xsd_double(rec.in_closeness),
            _xsd_double(rec.cross_closeness),
        )
        out.append(f"    <node id={quoteattr(sid)}>")
        for k, v in enumerate(values):
            out.append(f'      <data key="d{k}">{escape(v)}</data>')
        out.append("    </node>")
    for n, e in enumerate(x for x in g.edges if x.advisor in keep and x.student in keep):
        out.append(f'    <edge id="e{n}" source={quoteattr(e.advisor)} target={quoteattr(e.student)}/>')
    out.append("  </graph>")
    out.append("</graphml>")
    return "\n".join(out) + "\n"


def export_graphml(g: GenealogyGraph, report: ClosenessReport, spec: RenderSpec, path) -> Path:
    """Write GraphML with field, prizes and the three closeness values per node."""
    return write_text(path, render_graphml(g, report, spec))


def read_graphml(path) -> tuple[list[Scholar], list[Edge], dict[str, tuple[float, float, float]]]:
    """Inverse of :func:`export_graphml`: scholars, edges and closeness triples."""
    ns = {"g": "http://graphml.graphdrawing.org/xmlns"}
    try:
        root = ET.parse(path).getroot()
    except (OSError, ET.ParseError) as exc:
        raise IoFailure(f"{path}: {exc}") from None
    keys = {k.get("id"): k.get("attr.name") for k in root.findall("g:key", ns)}
    scholars, edges, closeness = [], [], {}
    graph = root.find("g:graph", ns)
    for node in graph.findall("g:node", ns):
        attrs = {keys[d.get("key")]: (d.text or "") for d in node.findall("g:data", ns)}
        sid = node.get("id")
        scholars.append(Scholar(sid, "", parse_prizes(attrs.get("prizes", ""), path)))
        closeness[sid] = tuple(float(attrs[k]) for k in ("out_closeness", "in_closeness", "cross_closeness"))
    for e in graph.findall("g:edge", ns):
        edges.append(Edge(e.get("source"), e.get("target")))
    return scholars, edges, closeness


# -- tables ---------------------------------------------------------------------


def csv_text(header: Iterable[str], rows: Iterable[Iterable[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_cross_table(table: CrossTable) -> str:
    rows = []
    for r, f in enumerate(FIELDS):
        rows.append([f.value] + [fmt(int(x)) for x in table.cells[r]] + [fmt(int(table.any[r])), fmt(int(table.none[r]))])
    return csv_text(TABLE_HEADER, rows)


def render_summary(summary: AncestrySummary) -> str:
    rows = []
    for scope in SCOPES:
        for stat in SUMMARY_STATS:
            s = summary[scope][stat]
            rows.append([scope, stat, "", "", "0"] if s is None else [scope, stat, fmt(s.mean), fmt(s.se), fmt(s.n)])
    return csv_text(SUMMARY_HEADER, rows)


def render_series(series: CohortSeries) -> str:
    rows = [[fmt(p.year), fmt(p.value), fmt(p.cohort_size)] for p in sorted(series.points)]
    return csv_text(SERIES_HEADER, rows)


def series_filename(series: CohortSeries) -> str:
    return f"trend_{series.metric}{'_prior' if series.prior_only else ''}.csv"


def export_tables_csv(out_dir, *, proximate: CrossTable | None = None, distal: CrossTable | None = None,
                      summary: AncestrySummary | None = None, series: Iterable[CohortSeries] = ()) -> list[Path]:
    """Write one CSV per supplied artifact into ``out_dir``; returns the paths."""
    out_dir = Path(out_dir)
    written = []
    if proximate is not None:
        written.append(write_text(out_dir / "table_proximate.csv", render_cross_table(proximate)))
    if distal is not None:
        written.append(write_text(out_dir / "table_distal.csv", render_cross_table(distal)))
    if summary is not None:
        written.append(write_text(out_dir / "ancestry_summary.csv", render_summary(summary)))
    for s in series:
        written.append(write_text(out_dir / series_filename(s), render_series(s)))
    return written


def render_closeness(records: Iterable[ClosenessRecord]) -> str:
    return csv_text(CLOSENESS_HEADER, ([r.id] + [fmt(v) for v in r[1:]] for r in records))


def export_closeness_csv(report: ClosenessReport, path) -> Path:
    return write_text(path, render_closeness(report.records))


def _read_csv(path, header) -> list[list[str]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"{path}: {exc.strerror}") from None
    rows = list(csv.reader(text.splitlines()))
    if not rows or tuple(rows[0]) != tuple(header):
        raise GenealogyError(f"{path}: unexpected header")
    return rows[1:]


def read_cross_table_csv(path, kind: str = "") -> CrossTable:
    rows = _read_csv(path, TABLE_HEADER)
    cells = np.array([[int(x) for x in r[1:5]] for r in rows], dtype=np.int64)
    return CrossTable(kind, cells, np.array([int(r[5]) for r in rows]), np.array([int(r[6]) for r in rows]))


def read_summary_csv(path) -> AncestrySummary:
    values: dict[str, dict[str, Summary | None]] = {}
    for scope, stat, mean, se, n in _read_csv(path, SUMMARY_HEADER):
        values.setdefault(scope, {})[stat] = None if mean == "" else Summary(float(mean), float(se), int(n))
    return AncestrySummary(values)


def read_series_csv(path, metric: str = "") -> list[CohortPoint]:
    return [CohortPoint(int(y), float(v), int(c)) for y, v, c in _read_csv(path, SERIES_HEADER)]


def read_closeness_csv(path) -> list[ClosenessRecord]:
    return [ClosenessRecord(r[0], *(float(x) for x in r[1:])) for r in _read_csv(path, CLOSENESS_HEADER)]


# -- trend plot -------------------------------------------------------------------

_W, _H = 640, 400
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 20, 40, 50


def render_svg_scatter(series: CohortSeries) -> str:
    pts = sorted(series.points)
    if not pts:
        raise EmptySeriesError(f"series {series.metric!r} has no points")
    years = [p.year for p in pts]
    vals = [p.value for p in pts]
    x0, x1 = min(years), max(years)
    if x0 == x1:
        x0, x1 = x0 - 1, x1 + 1
    y0 = min(0.0, min(vals))
    y1 = max(vals)
    if y1 <= y0:
        y1 = y0 + 1.0
    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM

    def sx(x):
        return _LEFT + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return _TOP + ph - (y - y0) / (y1 - y0) * ph

    c = lambda v: f"{v:.2f}"  # noqa: E731
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W // 2}" y="20" text-anchor="middle" font-size="14">'
        f'{escape(series.metric)} (slope {fmt(series.trend_slope)} per year)</text>',
        f'<line x1="{_LEFT}" y1="{_TOP + ph}" x2="{_LEFT + pw}" y2="{_TOP + ph}" stroke="black"/>',
        f'<line x1="{_LEFT}" y1="{_TOP}" x2="{_LEFT}" y2="{_TOP + ph}" stroke="black"/>',
        f'<text x="{_LEFT}" y="{_TOP + ph + 18}" text-anchor="middle" font-size="11">{x0}</text>',
        f'<text x="{_LEFT + pw}" y="{_TOP + ph + 18}" text-anchor="middle" font-size="11">{x1}</text>',
        f'<text x="{_LEFT - 6}" y="{_TOP + ph + 4}" text-anchor="end" font-size="11">{fmt(y0)}</text>',
        f'<text x="{_LEFT - 6}" y="{_TOP + 4}" text-anchor="end" font-size="11">{fmt(y1)}</text>',
        f'<text x="{_LEFT + pw / 2:.0f}" y="{_H - 10}" text-anchor="middle" font-size="12">award year</text>',
        f'<text x="16" y="{_TOP + ph / 2:.0f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {_TOP + ph / 2:.0f})">{escape(series.metric)}</text>',
    ]
    for p in pts:
        out.append(f'<circle class="point" cx="{c(sx(p.year))}" cy="{c(sy(p.value))}" r="3" fill="steelblue"/>')
    if len(pts) >= 2:
        mx, my = float(np.mean(years)), float(np.mean(vals))
        ya = my + series.trend_slope * (min(years) - mx)
        yb = my + series.trend_slope * (max(years) - mx)
        out.append(
            f'<line class="trend" x1="{c(sx(min(years)))}" y1="{c(sy(ya))}" '
            f'x2="{c(sx(max(years)))}" y2="{c(sy(yb))}" stroke="firebrick" stroke-width="1.5"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_svg_scatter(series: CohortSeries, path) -> Path:
    """Scatter of the cohort values over award year with the OLS line."""
    return write_text(path, render_svg_scatter(series))
