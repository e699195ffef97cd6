"""Hölder-mean closeness to a subset of scholars (normally the laureates).

Out-closeness looks upstream: it averages the distances from the subset's
members that are ancestors of a node down to that node. In-closeness looks
downstream at descendants. Cross-closeness looks sideways, through shared
ancestors of equal generation.

For a negative exponent an unreachable member contributes a zero
reciprocal term, so the mean stays finite as long as one member is
reachable. For a positive exponent one unreachable member makes the mean
infinite. Closeness is the reciprocal of the mean distance, and zero when
that distance is infinite.

The pairwise sideways distance is ``min_n n / H(i, j, n)`` over generations
``n`` where the horizontal overlap ``H`` is positive. Full siblings sit at 1,
half siblings at 2 and first cousins at 4.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Literal, NamedTuple, Sequence

import numpy as np

from .errors import EmptySubsetError, SameNodeError
from .graph import (
    GenealogyGraph,
    bfs_layers,
    descendants,
    distance_to_set,
    generation_layers,
    _bfs,
)

__all__ = [
    "HolderParams",
    "ClosenessRecord",
    "ClosenessReport",
    "Kin",
    "holder_mean",
    "holder_mean_distance",
    "horizontal_distance",
    "pairwise_cross_distance",
    "cross_distance",
    "crosscloseness",
    "closeness_report",
    "kinship_neighborhood",
    "to_closeness",
]


@dataclass(frozen=True)
class HolderParams:
    """Exponent and reference subset for the Hölder-mean distances.

    ``subset=None`` stands for the graph's laureates.
    """

    h: float = -1.0
    subset: frozenset[str] | None = None
    exclude_self: bool = True

    def __post_init__(self):
        if self.h == 0 or not math.isfinite(self.h):
            raise ValueError("Hölder exponent must be finite and non-zero")
        object.__setattr__(self, "h", float(self.h))
        if self.subset is not None:
            object.__setattr__(self, "subset", frozenset(self.subset))

    def resolve(self, g: GenealogyGraph) -> frozenset[str]:
        subset = g.laureates if self.subset is None else self.subset
        for x in subset:
            g.index(x)
        return subset

    def members_for(self, g: GenealogyGraph, i: str) -> list[str]:
        members = self.resolve(g)
        if self.exclude_self:
            members = members - {i}
        if not members:
            raise EmptySubsetError(f"reference subset is empty for {i!r}")
        return sorted(members)


def holder_mean(values: Iterable[float], h: float) -> float:
    """Power mean of distances with ``inf`` meaning unreachable.

    Negative ``h``: infinite terms add nothing to the sum of powers, and a
    zero distance drives the mean to 0. Positive ``h``: any infinite term
    makes the mean infinite.
    """
    values = list(values)
    if not values:
        raise EmptySubsetError("power mean of an empty collection")
    if h == 0:
        raise ValueError("h must be non-zero")
    if h < 0:
        if any(v == 0 for v in values):
            return 0.0
        total = math.fsum(v ** h for v in values if math.isfinite(v))
        if total == 0:
            return math.inf
    else:
        if any(not math.isfinite(v) for v in values):
            return math.inf
        total = math.fsum(v ** h for v in values)
    return (total / len(values)) ** (1.0 / h)


def to_closeness(distance: float) -> float:
    if distance == 0:
        return math.inf
    if math.isinf(distance):
        return 0.0
    return 1.0 / distance


def holder_mean_distance(g: GenealogyGraph, i: str, params: HolderParams = HolderParams(),
                         direction: Literal["out", "in"] = "out") -> float:
    """Mean distance between ``i`` and the reference subset.

    ``out`` uses distances from ancestors in the subset down to ``i``;
    ``in`` uses distances from ``i`` down to descendants in the subset.
    """
    if direction not in ("out", "in"):
        raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
    g.index(i)
    members = params.members_for(g, i)
    orient = "from_ancestors" if direction == "out" else "to_descendants"
    dist = distance_to_set(g, i, members, orient)
    return holder_mean([dist[j] for j in members], params.h)


def _overlap(layers_i: list[set[int]], layers_j: list[set[int]], n: int) -> float:
    if n > len(layers_i) or n > len(layers_j):
        return 0.0
    a, b = layers_i[n - 1], layers_j[n - 1]
    denom = max(len(a), len(b))
    return len(a & b) / denom if denom else 0.0


def horizontal_distance(g: GenealogyGraph, i: str, j: str, n: int) -> float:
    """Shared generation-``n`` ancestors over the larger generation-``n`` set."""
    if i == j:
        raise SameNodeError(f"horizontal distance needs two distinct nodes, got {i!r} twice")
    if n < 1:
        raise ValueError("generation must be >= 1")
    return _overlap(generation_layers(g, i, n), generation_layers(g, j, n), n)


def _pairwise_from_layers(layers_i, layers_j, max_n: int) -> float:
    best = math.inf
    for n in range(1, min(max_n, len(layers_i), len(layers_j)) + 1):
        a, b = layers_i[n - 1], layers_j[n - 1]
        shared = len(a & b)
        if shared:
            best = min(best, n * max(len(a), len(b)) / shared)
    return best


def pairwise_cross_distance(g: GenealogyGraph, i: str, j: str, max_n: int | None = None) -> float:
    """Smallest ``n / H(i, j, n)`` over generations with shared ancestors."""
    if i == j:
        raise SameNodeError(f"cross distance needs two distinct nodes, got {i!r} twice")
    max_n = g.depth if max_n is None else max_n
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    return _pairwise_from_layers(generation_layers(g, i, max_n), generation_layers(g, j, max_n), max_n)


def cross_distance(g: GenealogyGraph, i: str, params: HolderParams = HolderParams(),
                   max_n: int | None = None) -> float:
    """Hölder mean of the pairwise cross distances from ``i`` to the subset."""
    members = params.members_for(g, i)
    max_n = g.depth if max_n is None else max_n
    li = generation_layers(g, i, max_n)
    dists = []
    for j in members:
        if j == i:
            dists.append(0.0)
        else:
            dists.append(_pairwise_from_layers(li, generation_layers(g, j, max_n), max_n))
    return holder_mean(dists, params.h)


def crosscloseness(g: GenealogyGraph, i: str, params: HolderParams = HolderParams(),
                   max_n: int | None = None) -> float:
    return to_closeness(cross_distance(g, i, params, max_n))


# -- whole-graph report ------------------------------------------------------


class ClosenessRecord(NamedTuple):
    id: str
    out_distance: float
    in_distance: float
    cross_distance: float
    out_closeness: float
    in_closeness: float
    cross_closeness: float
    total_closeness: float


RANK_KEYS = {
    "out": "out_closeness",
    "in": "in_closeness",
    "cross": "cross_closeness",
    "total": "total_closeness",
}


@dataclass(frozen=True)
class ClosenessReport:
    records: tuple[ClosenessRecord, ...]
    params: HolderParams
    max_n: int

    def __len__(self) -> int:
        return len(self.records)

    def by_id(self) -> dict[str, ClosenessRecord]:
        return {r.id: r for r in self.records}

    def ranked(self, key: str = "total", top: int | None = None) -> list[ClosenessRecord]:
        """Records sorted by descending closeness, ties broken by id."""
        attr = RANK_KEYS.get(key, key)
        rows = sorted(self.records, key=lambda r: (-getattr(r, attr), r.id))
        return rows if top is None else rows[:top]


# Row/source block sizes are fixed so results never depend on the thread count.
_SOURCE_BLOCK = 512
_DENSE_CELLS = 4_000_000


def _map_blocks(fn, blocks, threads):
    if threads is None:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(blocks) <= 1:
        return [fn(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, blocks))


def _level_counts(adj, sources: np.ndarray, n_nodes: int, threads) -> dict[int, np.ndarray]:
    """Per level n, how many sources reach each node at distance exactly n."""
    blocks = [sources[s:s + _SOURCE_BLOCK] for s in range(0, len(sources), _SOURCE_BLOCK)]

    def run(block):
        return {n: np.bincount(layer.indices, minlength=n_nodes) for n, layer in bfs_layers(adj, block)}

    total: dict[int, np.ndarray] = {}
    for part in _map_blocks(run, blocks, threads):
        for n, c in part.items():
            total[n] = total.get(n, 0) + c
    return total


def _vertical_distances(adj, members: np.ndarray, member_mask: np.ndarray, h: float,
                        exclude_self: bool, n_nodes: int, threads) -> np.ndarray:
    counts = _level_counts(adj, members, n_nodes, threads)
    power_sum = np.zeros(n_nodes)
    reached = np.zeros(n_nodes, dtype=np.int64)
    for n in sorted(counts):
        power_sum += counts[n] * float(n) ** h
        reached += counts[n]
    size = np.full(n_nodes, len(members), dtype=np.int64)
    zero_term = np.zeros(n_nodes, dtype=bool)
    if exclude_self:
        size -= member_mask
    else:
        # the node's own zero distance counts as reached
        zero_term = member_mask.copy()
        reached += zero_term
    return _finish_mean(power_sum, reached, size, h, zero_term)


def _finish_mean(power_sum, reached, size, h, zero_term):
    out = np.full(power_sum.shape, np.inf)
    ok = size > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        if h < 0:
            finite = ok & (power_sum > 0)
        else:
            finite = ok & (reached >= size)
        out[finite] = (power_sum[finite] / size[finite]) ** (1.0 / h)
    if h < 0:
        out[zero_term] = 0.0
    out[~ok] = np.nan
    return out


def _cross_distances(g: GenealogyGraph, rows: np.ndarray, members: np.ndarray, h: float,
                     exclude_self: bool, max_n: int, threads) -> np.ndarray:
    rev = g.reverse
    member_layers = [layer for _, layer in bfs_layers(rev, members, max_n)]
    member_sizes = [np.diff(layer.indptr) for layer in member_layers]
    member_pos = {int(k): c for c, k in enumerate(members)}
    m = len(members)
    chunk = max(1, min(2048, _DENSE_CELLS // max(m, 1)))
    blocks = [rows[s:s + chunk] for s in range(0, len(rows), chunk)]

    def run(block):
        best = np.full((len(block), m), np.inf)
        for n, layer in bfs_layers(rev, block, max_n):
            if n > len(member_layers):
                break
            shared = (layer @ member_layers[n - 1].T).tocoo()
            if not shared.nnz:
                continue
            a = np.diff(layer.indptr)[shared.row]
            b = member_sizes[n - 1][shared.col]
            cand = n * np.maximum(a, b) / shared.data
            cur = best[shared.row, shared.col]
            best[shared.row, shared.col] = np.minimum(cur, cand)
        size = np.full(len(block), m, dtype=np.int64)
        zero_term = np.zeros(len(block), dtype=bool)
        for r, k in enumerate(block.tolist()):
            c = member_pos.get(k)
            if c is None:
                continue
            if exclude_self:
                best[r, c] = np.inf
                size[r] -= 1
            else:
                best[r, c] = 0.0
                zero_term[r] = True
        finite = np.isfinite(best)
        usable = finite & (best > 0)
        powered = np.where(usable, best, 1.0) ** h
        powered[~usable] = 0.0
        power_sum = powered.sum(axis=1)
        reached = finite.sum(axis=1)
        return _finish_mean(power_sum, reached, size, h, zero_term)

    parts = _map_blocks(run, blocks, threads)
    return np.concatenate(parts) if parts else np.zeros(0)


def closeness_report(g: GenealogyGraph, params: HolderParams = HolderParams(),
                     ids: Sequence[str] | None = None, max_n: int | None = None,
                     threads: int | None = None) -> ClosenessReport:
    """Out-, in- and cross-closeness for every node (or for ``ids``).

    Distances are gathered by sweeping breadth-first from the reference
    subset only, so the cost scales with the subset rather than the graph.
    ``threads`` caps parallelism; output does not depend on it.
    """
    subset = params.resolve(g)
    if not subset:
        raise EmptySubsetError("reference subset is empty")
    max_n = g.depth if max_n is None else max_n
    if max_n < 1:
        max_n = 1
    n_nodes = len(g)
    members = np.sort(g.indices(subset))
    mask = np.zeros(n_nodes, dtype=bool)
    mask[members] = True
    h = params.h

    out_d = _vertical_distances(g.forward, members, mask, h, params.exclude_self, n_nodes, threads)
    in_d = _vertical_distances(g.reverse, members, mask, h, params.exclude_self, n_nodes, threads)
    row_ids = list(g.ids) if ids is None else sorted(set(ids))
    rows = g.indices(row_ids)
    cross_d = _cross_distances(g, rows, members, h, params.exclude_self, max_n, threads)

    records = []
    for r, (sid, k) in enumerate(zip(row_ids, rows.tolist())):
        if np.isnan(out_d[k]):
            raise EmptySubsetError(f"reference subset is empty for {sid!r}")
        od, idist, cd = float(out_d[k]), float(in_d[k]), float(cross_d[r])
        oc, ic, cc = to_closeness(od), to_closeness(idist), to_closeness(cd)
        records.append(ClosenessRecord(sid, od, idist, cd, oc, ic, cc, oc + ic + cc))
    return ClosenessReport(tuple(records), params, max_n)


# -- sibling / cousin neighbourhoods ------------------------------------------


class Kin(NamedTuple):
    id: str
    generation: int
    overlap: float


def kinship_neighborhood(g: GenealogyGraph, i: str, max_n: int = 2,
                         lineage_only: bool = False) -> list[Kin]:
    """Nodes sharing generation-n ancestors with ``i`` for some n <= ``max_n``.

    Each relative is listed once, at its smallest qualifying generation.
    ``lineage_only`` keeps only laureates and ancestors of laureates.
    Sorted by generation, then id.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    me = g.index(i)
    li = generation_layers(g, i, max_n)
    succ = g.adjacency_lists("to_descendants")
    found: dict[int, tuple[int, float]] = {}
    for n in range(1, len(li) + 1):
        cands: set[int] = set()
        for k in li[n - 1]:
            cands.update(j for j, d in _bfs(succ, k, n).items() if d == n)
        cands.discard(me)
        for j in sorted(cands - found.keys()):
            lj = generation_layers(g, g.ids[j], n)
            val = _overlap(li, lj, n)
            if val > 0:
                found[j] = (n, val)
    out = []
    for j, (n, val) in found.items():
        sid = g.ids[j]
        if lineage_only and sid not in g.laureates and not (descendants(g, sid) & g.laureates):
            continue
        out.append(Kin(sid, n, val))
    out.sort(key=lambda k: (k.generation, k.id))
    return out
