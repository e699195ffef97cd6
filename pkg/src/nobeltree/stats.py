"""Laureate-level tabulations: pair counts, field tables, summaries, trends.

Everything here works off one laureate x laureate relation matrix, so the
cost depends on the number of laureates rather than on the full graph.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateGroupError, NoLaureatesError
from .graph import FIELDS, Field, GenealogyGraph, bfs_layers, component_labels

__all__ = [
    "LaureateRelations",
    "laureate_relations",
    "PairCounts",
    "laureate_pair_counts",
    "CrossTable",
    "cross_table",
    "distal_pair_matrix",
    "Summary",
    "AncestrySummary",
    "ancestry_summary",
    "welch_t",
    "TieClass",
    "tie_classification",
    "METRICS",
    "CohortPoint",
    "CohortSeries",
    "cohort_series",
    "ols_slope",
]


@dataclass(frozen=True)
class LaureateRelations:
    """Dense relations among the laureates, in sorted id order.

    ``ancestor[a, d]`` is true when laureate ``a`` is a (transitive)
    ancestor of laureate ``d``; ``advisor`` holds direct edges only;
    ``peer`` marks distinct laureates sharing at least one advisor.
    ``fields`` is a laureate x field boolean membership matrix.
    """

    ids: tuple[str, ...]
    fields: np.ndarray
    first_year: np.ndarray
    ancestor: np.ndarray
    advisor: np.ndarray
    peer: np.ndarray
    lone: np.ndarray

    def __len__(self) -> int:
        return len(self.ids)


_RELATIONS: "weakref.WeakKeyDictionary[GenealogyGraph, LaureateRelations]" = weakref.WeakKeyDictionary()
_BLOCK = 512


def _reach_among(g: GenealogyGraph, adj, lau: np.ndarray) -> np.ndarray:
    """Boolean [source, target] reachability restricted to laureate targets."""
    pos = np.full(len(g), -1, dtype=np.int64)
    pos[lau] = np.arange(len(lau))
    out = np.zeros((len(lau), len(lau)), dtype=bool)
    for start in range(0, len(lau), _BLOCK):
        block = lau[start:start + _BLOCK]
        for _, layer in bfs_layers(adj, block):
            coo = layer.tocoo()
            keep = pos[coo.col] >= 0
            out[coo.row[keep] + start, pos[coo.col[keep]]] = True
    return out


def laureate_relations(g: GenealogyGraph) -> LaureateRelations:
    cached = _RELATIONS.get(g)
    if cached is not None:
        return cached
    ids = g.laureate_ids
    lau = g.indices(ids)
    fields = np.array([[f in g.scholars[x].fields for f in FIELDS] for x in ids], dtype=bool).reshape(len(ids), len(FIELDS))
    first_year = np.array([g.scholars[x].first_award_year for x in ids], dtype=np.int64)
    ancestor = _reach_among(g, g.forward, lau)
    advisor = g.forward[lau][:, lau].toarray() > 0
    advisors_of = g.reverse[lau]
    peer = (advisors_of @ advisors_of.T).toarray() > 0
    np.fill_diagonal(peer, False)
    labels = component_labels(g)[lau]
    per_label = np.bincount(labels) if len(labels) else np.zeros(0, dtype=np.int64)
    lone = per_label[labels] == 1 if len(labels) else np.zeros(0, dtype=bool)
    rel = LaureateRelations(ids, fields, first_year, ancestor, advisor, peer, lone)
    _RELATIONS[g] = rel
    return rel


def distal_pair_matrix(g: GenealogyGraph, orientation: str = "ancestor_first") -> np.ndarray:
    """Field x field counts of laureate (ancestor, descendant) pairs.

    ``ancestor_first`` sweeps downstream from every laureate,
    ``descendant_first`` sweeps upstream. The two must agree exactly.
    """
    lau = g.indices(g.laureate_ids)
    rel = laureate_relations(g)
    if orientation == "ancestor_first":
        anc = _reach_among(g, g.forward, lau)
    elif orientation == "descendant_first":
        anc = _reach_among(g, g.reverse, lau).T
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    f = rel.fields.astype(np.int64)
    return f.T @ anc.astype(np.int64) @ f


class PairCounts(NamedTuple):
    direct: int
    direct_same_field: int
    transitive: int
    transitive_same_field: int


def laureate_pair_counts(g: GenealogyGraph) -> PairCounts:
    """Advisor-student and ancestor-descendant pairs in which both won."""
    rel = laureate_relations(g)
    f = rel.fields.astype(np.int64)
    same = (f @ f.T) > 0
    return PairCounts(
        int(rel.advisor.sum()),
        int((rel.advisor & same).sum()),
        int(rel.ancestor.sum()),
        int((rel.ancestor & same).sum()),
    )


@dataclass(frozen=True)
class CrossTable:
    """Professor-field x student-field pair counts plus Any/None columns.

    ``any[r]`` counts distinct laureates of field ``r`` with at least one
    laureate student (proximate) or descendant (distal); ``none[r]`` counts
    the rest.
    """

    kind: str
    cells: np.ndarray
    any: np.ndarray
    none: np.ndarray

    def row(self, field: Field | str) -> tuple[int, ...]:
        r = FIELDS.index(Field.parse(str(field)))
        return tuple(int(x) for x in self.cells[r]) + (int(self.any[r]), int(self.none[r]))


def cross_table(g: GenealogyGraph, kind: str = "proximate") -> CrossTable:
    rel = laureate_relations(g)
    if kind == "proximate":
        link = rel.advisor
    elif kind == "distal":
        link = rel.ancestor
    else:
        raise ValueError(f"kind must be 'proximate' or 'distal', got {kind!r}")
    f = rel.fields.astype(np.int64)
    cells = f.T @ link.astype(np.int64) @ f
    has = link.any(axis=1) if len(rel) else np.zeros(0, dtype=bool)
    any_col = (rel.fields & has[:, None]).sum(axis=0)
    none_col = rel.fields.sum(axis=0) - any_col
    return CrossTable(kind, cells, any_col.astype(np.int64), none_col.astype(np.int64))


# -- per-laureate summaries --------------------------------------------------


class Summary(NamedTuple):
    mean: float
    se: float
    n: int


def _summarise(values: np.ndarray) -> Summary | None:
    if len(values) == 0:
        return None
    values = np.asarray(values, dtype=float)
    se = float(values.std(ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
    return Summary(float(values.mean()), se, len(values))


SCOPES = ("any",) + tuple(f.value for f in FIELDS)
SUMMARY_STATS = (
    "ancestors",
    "ancestors_own_field",
    "ancestors_other_fraction",
    "descendants",
    "descendants_own_field",
    "descendants_other_fraction",
)


@dataclass(frozen=True)
class AncestrySummary:
    """``values[scope][statistic]`` is a :class:`Summary` or ``None`` when undefined."""

    values: dict[str, dict[str, Summary | None]]

    def __getitem__(self, scope: str) -> dict[str, Summary | None]:
        return self.values[scope]


def ancestry_summary(g: GenealogyGraph) -> AncestrySummary:
    """Mean and standard error of laureate-relative counts, overall and by field.

    For a field scope, "own field" relatives are laureates who also won in
    that field; for the ``any`` scope they share at least one field with
    the laureate. Fractions average per-laureate shares over laureates
    with at least one counted relative.
    """
    rel = laureate_relations(g)
    if not len(rel):
        raise NoLaureatesError("graph has no laureates")
    anc = rel.ancestor.astype(np.int64)
    f = rel.fields.astype(np.int64)
    n_anc = anc.sum(axis=0)
    n_desc = anc.sum(axis=1)
    values: dict[str, dict[str, Summary | None]] = {}
    for scope in SCOPES:
        if scope == "any":
            members = np.arange(len(rel))
            shares = (f @ f.T) > 0
            own_anc = (anc * shares).sum(axis=0)
            own_desc = (anc * shares).sum(axis=1)
        else:
            col = FIELDS.index(Field(scope))
            members = np.flatnonzero(rel.fields[:, col])
            own_anc = anc.T @ f[:, col]
            own_desc = anc @ f[:, col]
        row: dict[str, Summary | None] = {}
        for label, total, own in (("ancestors", n_anc, own_anc), ("descendants", n_desc, own_desc)):
            t, o = total[members], own[members]
            row[label] = _summarise(t)
            row[f"{label}_own_field"] = _summarise(o)
            has = t > 0
            row[f"{label}_other_fraction"] = _summarise(1.0 - o[has] / t[has])
        values[scope] = row
    return AncestrySummary(values)


def welch_t(group_a: Sequence[float], group_b: Sequence[float]) -> tuple[float, float]:
    """Welch's unequal-variance t statistic and Welch-Satterthwaite dof."""
    a = np.asarray(group_a, dtype=float)
    b = np.asarray(group_b, dtype=float)
    if len(a) < 2 or len(b) < 2:
        raise DegenerateGroupError("each group needs at least two observations")
    va, vb = a.var(ddof=1) / len(a), b.var(ddof=1) / len(b)
    if va + vb == 0:
        raise DegenerateGroupError("both groups have zero variance")
    t = (a.mean() - b.mean()) / math.sqrt(va + vb)
    dof = (va + vb) ** 2 / (va ** 2 / (len(a) - 1) + vb ** 2 / (len(b) - 1))
    return float(t), float(dof)


class TieClass(str, Enum):
    NO_TIES = "no_ties"
    PEERS_ONLY = "peers_only"
    HAS_NOBEL_ANCESTOR = "has_nobel_ancestor"
    UNCONNECTED = "unconnected"

    def __str__(self) -> str:
        return self.value


def tie_classification(g: GenealogyGraph) -> dict[str, TieClass]:
    """Classify every laureate by its strongest tie to other laureates.

    A laureate ancestor beats a laureate peer (shared advisor); a laureate
    with neither is ``unconnected`` if its family tree holds no other
    laureate and ``no_ties`` otherwise.
    """
    rel = laureate_relations(g)
    has_anc = rel.ancestor.any(axis=0)
    has_peer = rel.peer.any(axis=1)
    out = {}
    for k, sid in enumerate(rel.ids):
        if has_anc[k]:
            out[sid] = TieClass.HAS_NOBEL_ANCESTOR
        elif has_peer[k]:
            out[sid] = TieClass.PEERS_ONLY
        elif rel.lone[k]:
            out[sid] = TieClass.UNCONNECTED
        else:
            out[sid] = TieClass.NO_TIES
    return out


# -- award-year cohorts -------------------------------------------------------

METRICS = (
    "anc_per_laureate",
    "desc_per_laureate",
    "frac_anc_other_field",
    "frac_desc_other_field",
    "frac_no_ancestry",
    "frac_no_ties",
)

_ALIASES = {
    "ancPerLaureate": "anc_per_laureate",
    "descPerLaureate": "desc_per_laureate",
    "fracAncOtherField": "frac_anc_other_field",
    "fracDescOtherField": "frac_desc_other_field",
    "fracNoAncestry": "frac_no_ancestry",
    "fracNoTies": "frac_no_ties",
}


def canonical_metric(name: str) -> str:
    name = _ALIASES.get(name, name).replace("-", "_")
    if name not in METRICS:
        raise ValueError(f"unknown cohort metric {name!r}; choose from {', '.join(METRICS)}")
    return name


class CohortPoint(NamedTuple):
    year: int
    value: float
    cohort_size: int


@dataclass(frozen=True)
class CohortSeries:
    metric: str
    points: tuple[CohortPoint, ...]
    trend_slope: float
    prior_only: bool = False


def ols_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of y on x; 0 when x has no spread."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2:
        return 0.0
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0:
        return 0.0
    return float(dx @ (y - y.mean()) / sxx)


def cohort_series(g: GenealogyGraph, metric: str, prior_only: bool = False) -> CohortSeries:
    """One value per award year for ``metric``.

    Every prize record puts its winner in that year's cohort. With
    ``prior_only`` a relative counts only if their first award came
    strictly before the cohort year. Fraction-of-relatives metrics skip
    members without relatives and omit years where no member has any.
    """
    metric = canonical_metric(metric)
    rel = laureate_relations(g)
    by_year: dict[int, list[float]] = {}
    for k, sid in enumerate(rel.ids):
        for prize in g.scholars[sid].prizes:
            col = FIELDS.index(prize.field)
            eligible = rel.first_year < prize.year if prior_only else np.ones(len(rel), dtype=bool)
            anc = rel.ancestor[:, k] & eligible
            desc = rel.ancestor[k, :] & eligible
            value: float | None
            if metric == "anc_per_laureate":
                value = float(anc.sum())
            elif metric == "desc_per_laureate":
                value = float(desc.sum())
            elif metric in ("frac_anc_other_field", "frac_desc_other_field"):
                group = anc if metric == "frac_anc_other_field" else desc
                total = int(group.sum())
                value = None if total == 0 else float((group & ~rel.fields[:, col]).sum()) / total
            elif metric == "frac_no_ancestry":
                value = float(not anc.any())
            else:
                peers = rel.peer[k] & eligible
                value = float(not anc.any() and not peers.any())
            bucket = by_year.setdefault(prize.year, [])
            if value is not None:
                bucket.append(value)
    points = tuple(
        CohortPoint(year, float(np.mean(vals)), len(vals))
        for year, vals in sorted(by_year.items())
        if vals
    )
    slope = ols_slope([p.year for p in points], [p.value for p in points])
    return CohortSeries(metric, points, slope, prior_only)
