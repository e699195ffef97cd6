"""Reading genealogy datasets from disk.

Nodes file (CSV, header ``id,name,prizes``)::

    id,name,prizes
    p1,Jane Doe,physics:1904
    p2,John Roe,
    p3,"Curie, M.",physics:1903;chemistry:1911

Edges file (CSV, header ``advisor_id,student_id``)::

    advisor_id,student_id
    p1,p2

A ``.json`` extension selects the JSON mirror of the same schema: a list
of ``{"id", "name", "prizes"}`` objects (prizes as ``"field:year"`` strings
or ``{"field", "year"}`` objects) and a list of
``{"advisor_id", "student_id"}`` objects. JSON diagnostics report the
1-based record number in place of a line number.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

from .errors import (
    BadYearError,
    GenealogyError,
    IoFailure,
    MalformedRowError,
    SelfLoopError,
    UnknownFieldError,
)
from .graph import FIRST_PRIZE_YEAR, Edge, Field, GenealogyGraph, Prize, Scholar, build_graph

log = logging.getLogger(__name__)

NODE_HEADER = ("id", "name", "prizes")
EDGE_HEADER = ("advisor_id", "student_id")
FORMAT_VERSION = 1


class Diagnostic(NamedTuple):
    path: str
    line: int
    message: str

    def __str__(self) -> str:
        return f"{self.path}:{self.line}: {self.message}"


def parse_prizes(cell: str, path="<string>", line: int = 0) -> tuple[Prize, ...]:
    """Parse ``"field:year;field:year"`` into prizes; an empty cell means none."""
    prizes = []
    for token in cell.split(";"):
        token = token.strip()
        if not token:
            continue
        fld, sep, year = token.partition(":")
        if not sep:
            raise MalformedRowError(path, line, f"prize token {token!r} is not field:year")
        try:
            field = Field.parse(fld)
        except ValueError:
            raise UnknownFieldError(path, line, f"unknown prize field {fld.strip()!r}") from None
        prizes.append(Prize(field, _parse_year(year, path, line)))
    return tuple(prizes)


def _parse_year(text, path, line) -> int:
    if isinstance(text, int) and not isinstance(text, bool):
        year = text
    else:
        try:
            year = int(str(text).strip())
        except ValueError:
            raise BadYearError(path, line, f"prize year {text!r} is not an integer") from None
    if year < FIRST_PRIZE_YEAR:
        raise BadYearError(path, line, f"prize year {year} precedes {FIRST_PRIZE_YEAR}")
    return year


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise IoFailure(f"{path}: no such file") from None
    except UnicodeDecodeError as exc:
        raise MalformedRowError(path, 1, f"not valid UTF-8 ({exc.reason})") from None
    except OSError as exc:
        raise IoFailure(f"{path}: {exc.strerror}") from None


def _csv_rows(path: Path, header: tuple[str, ...]):
    reader = csv.reader(_read_text(path).splitlines())
    first = next(reader, None)
    if first is None or tuple(c.strip().lower() for c in first) != header:
        raise MalformedRowError(path, 1, f"expected header {','.join(header)!r}")
    for row in reader:
        if not row or all(not c.strip() for c in row):
            continue
        yield reader.line_num, [c.strip() for c in row]


def _load_json(path: Path) -> list:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise MalformedRowError(path, exc.lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(data, list):
        raise MalformedRowError(path, 1, "top-level JSON value must be a list")
    return data


def parse_nodes(path) -> list[Scholar]:
    """Read scholars from a nodes CSV (or ``.json`` mirror)."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        return [_scholar_from_json(rec, path, k) for k, rec in enumerate(_load_json(path), start=1)]
    scholars = []
    for line, row in _csv_rows(path, NODE_HEADER):
        if len(row) == 2:
            row.append("")
        if len(row) != 3:
            raise MalformedRowError(path, line, f"expected 3 columns, found {len(row)}")
        sid, name, cell = row
        if not sid:
            raise MalformedRowError(path, line, "empty scholar id")
        scholars.append(Scholar(sid, name, parse_prizes(cell, path, line)))
    return scholars


def _scholar_from_json(rec, path, k) -> Scholar:
    if not isinstance(rec, dict) or not rec.get("id"):
        raise MalformedRowError(path, k, "record needs a non-empty 'id'")
    raw = rec.get("prizes") or []
    if isinstance(raw, str):
        prizes = parse_prizes(raw, path, k)
    else:
        items = []
        for p in raw:
            if isinstance(p, str):
                items.extend(parse_prizes(p, path, k))
            elif isinstance(p, dict) and "field" in p and "year" in p:
                try:
                    fld = Field.parse(str(p["field"]))
                except ValueError:
                    raise UnknownFieldError(path, k, f"unknown prize field {p['field']!r}") from None
                items.append(Prize(fld, _parse_year(p["year"], path, k)))
            else:
                raise MalformedRowError(path, k, f"bad prize entry {p!r}")
        prizes = tuple(items)
    return Scholar(str(rec["id"]), str(rec.get("name", "")), prizes)


def parse_edges(path, diagnostics: list[Diagnostic] | None = None) -> list[Edge]:
    """Read advisor -> student edges, keeping file order.

    Repeated edges are dropped; each repeat is logged as a warning and,
    when ``diagnostics`` is given, appended to it.
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        rows = []
        for k, rec in enumerate(_load_json(path), start=1):
            if isinstance(rec, dict):
                pair = [rec.get("advisor_id"), rec.get("student_id")]
            elif isinstance(rec, (list, tuple)):
                pair = list(rec)
            else:
                pair = []
            rows.append((k, [str(x).strip() if x is not None else "" for x in pair]))
    else:
        rows = _csv_rows(path, EDGE_HEADER)
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for line, row in rows:
        if len(row) != 2 or not row[0] or not row[1]:
            raise MalformedRowError(path, line, "expected two non-empty columns advisor_id,student_id")
        edge = Edge(row[0], row[1])
        if edge.advisor == edge.student:
            raise SelfLoopError(path, line, f"{edge.advisor!r} is listed as their own advisor")
        if edge in seen:
            diag = Diagnostic(str(path), line, f"duplicate edge {edge.advisor},{edge.student} ignored")
            log.warning("%s", diag)
            if diagnostics is not None:
                diagnostics.append(diag)
            continue
        seen.add(edge)
        edges.append(edge)
    return edges


@dataclass(frozen=True)
class DatasetManifest:
    nodes_path: Path
    edges_path: Path
    format_version: int = FORMAT_VERSION
    checksum: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "nodes_path", Path(self.nodes_path))
        object.__setattr__(self, "edges_path", Path(self.edges_path))

    @classmethod
    def from_json(cls, path) -> "DatasetManifest":
        """Load ``{"nodes": ..., "edges": ..., "format_version": 1, "checksum": ...}``.

        Relative file paths resolve against the manifest's directory.
        """
        path = Path(path)
        try:
            data = json.loads(_read_text(path))
        except json.JSONDecodeError as exc:
            raise MalformedRowError(path, exc.lineno, f"invalid JSON: {exc.msg}") from None
        base = path.parent
        try:
            return cls(base / data["nodes"], base / data["edges"],
                       int(data.get("format_version", FORMAT_VERSION)), data.get("checksum"))
        except (KeyError, TypeError) as exc:
            raise MalformedRowError(path, 1, f"manifest missing key {exc}") from None

    def content_hash(self) -> str:
        h = hashlib.sha256()
        for p in (self.nodes_path, self.edges_path):
            try:
                h.update(p.read_bytes())
            except OSError as exc:
                raise IoFailure(f"{p}: {exc.strerror}") from None
        return h.hexdigest()

    def verify(self) -> None:
        if self.format_version != FORMAT_VERSION:
            raise GenealogyError(f"unsupported format version {self.format_version}")
        for p in (self.nodes_path, self.edges_path):
            if not p.is_file():
                raise IoFailure(f"{p}: no such file")
        if self.checksum is not None and self.checksum != self.content_hash():
            raise GenealogyError("dataset checksum does not match manifest")


def load_dataset(manifest: DatasetManifest, diagnostics: list[Diagnostic] | None = None) -> GenealogyGraph:
    manifest.verify()
    return build_graph(parse_nodes(manifest.nodes_path), parse_edges(manifest.edges_path, diagnostics))
