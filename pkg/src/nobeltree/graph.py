"""Genealogy DAG: construction, validation, reachability and distances.

Edges run advisor -> student. Ancestry therefore follows the reverse
adjacency and descent follows the forward adjacency. All distances are
shortest directed path lengths counted in edges.

Two query paths exist side by side. The per-node functions
(:func:`ancestors`, :func:`distance_to_set`, ...) run plain breadth-first
searches over Python adjacency lists. Batch sweeps over many sources go
through :func:`bfs_layers`, which advances all sources one level at a time
with sparse matrix products.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Literal, Mapping, NamedTuple, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import (
    CycleDetectedError,
    DanglingEdgeError,
    DuplicateIdError,
    GenealogyError,
    UnknownIdError,
)

__all__ = [
    "Field",
    "FIELDS",
    "Prize",
    "Scholar",
    "Edge",
    "GenealogyGraph",
    "Component",
    "ComponentCensus",
    "build_graph",
    "weak_components",
    "ancestors",
    "descendants",
    "distance_to_set",
    "generation_ancestors",
    "nearest_common_ancestor",
    "laureate_descendant_counts",
    "laureate_ancestor_counts",
    "bfs_layers",
    "distance_matrix",
]

FIRST_PRIZE_YEAR = 1901


class Field(str, Enum):
    PHYSICS = "physics"
    CHEMISTRY = "chemistry"
    MEDICINE = "medicine"
    ECONOMICS = "economics"

    @classmethod
    def parse(cls, token: str) -> "Field":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValueError(f"unknown prize field {token!r}") from None

    def __str__(self) -> str:
        return self.value


FIELDS: tuple[Field, ...] = tuple(Field)


@dataclass(frozen=True, order=True)
class Prize:
    field: Field
    year: int

    def __post_init__(self):
        if not isinstance(self.field, Field):
            object.__setattr__(self, "field", Field.parse(str(self.field)))
        if isinstance(self.year, bool) or not isinstance(self.year, (int, np.integer)):
            raise ValueError(f"prize year must be an integer, got {self.year!r}")
        if self.year < FIRST_PRIZE_YEAR:
            raise ValueError(f"prize year {self.year} precedes {FIRST_PRIZE_YEAR}")
        object.__setattr__(self, "year", int(self.year))

    def token(self) -> str:
        return f"{self.field.value}:{self.year}"


@dataclass(frozen=True)
class Scholar:
    id: str
    name: str = ""
    prizes: tuple[Prize, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prizes", tuple(self.prizes))

    @property
    def is_laureate(self) -> bool:
        return bool(self.prizes)

    @property
    def fields(self) -> frozenset[Field]:
        return frozenset(p.field for p in self.prizes)

    @property
    def first_award_year(self) -> int | None:
        return min((p.year for p in self.prizes), default=None)

    @property
    def primary_field(self) -> Field | None:
        """Field of the earliest prize, used where a single colour is needed."""
        if not self.prizes:
            return None
        return min(self.prizes, key=lambda p: (p.year, FIELDS.index(p.field))).field


class Edge(NamedTuple):
    advisor: str
    student: str


class GenealogyGraph:
    """Immutable advisor -> student DAG.

    Nodes are stored in sorted id order; integer node indices used by the
    sparse matrices follow that order. Build instances with
    :func:`build_graph`.
    """

    def __init__(self, scholars: Sequence[Scholar], edges: Sequence[Edge], _validated=False):
        if not _validated:
            raise GenealogyError("use build_graph() to construct a GenealogyGraph")
        self._scholars = {s.id: s for s in sorted(scholars, key=lambda s: s.id)}
        self._ids: tuple[str, ...] = tuple(self._scholars)
        self._index = {sid: k for k, sid in enumerate(self._ids)}
        self._edges: tuple[Edge, ...] = tuple(sorted(edges))
        n = len(self._ids)
        rows = np.fromiter((self._index[e.advisor] for e in self._edges), dtype=np.int64, count=len(self._edges))
        cols = np.fromiter((self._index[e.student] for e in self._edges), dtype=np.int64, count=len(self._edges))
        data = np.ones(len(self._edges), dtype=np.int32)
        self._fwd = sp.csr_matrix((data, (rows, cols)), shape=(n, n))
        self._rev = self._fwd.T.tocsr()
        self._fwd.sort_indices()
        self._rev.sort_indices()

    # -- basic accessors ---------------------------------------------------

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, node_id) -> bool:
        return node_id in self._index

    def __repr__(self) -> str:
        return f"GenealogyGraph({len(self)} nodes, {self.num_edges} edges, {len(self.laureates)} laureates)"

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def scholars(self) -> Mapping[str, Scholar]:
        return self._scholars

    def scholar(self, node_id: str) -> Scholar:
        try:
            return self._scholars[node_id]
        except KeyError:
            raise UnknownIdError(node_id) from None

    def index(self, node_id: str) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise UnknownIdError(node_id) from None

    def indices(self, node_ids: Iterable[str]) -> np.ndarray:
        return np.array([self.index(x) for x in node_ids], dtype=np.int64)

    @property
    def forward(self) -> sp.csr_matrix:
        """Advisor -> student adjacency (treat as read-only)."""
        return self._fwd

    @property
    def reverse(self) -> sp.csr_matrix:
        """Student -> advisor adjacency (treat as read-only)."""
        return self._rev

    def students(self, node_id: str) -> list[str]:
        return [self._ids[k] for k in self._succ[self.index(node_id)]]

    def advisors(self, node_id: str) -> list[str]:
        return [self._ids[k] for k in self._pred[self.index(node_id)]]

    @cached_property
    def _succ(self) -> list[list[int]]:
        return _adjacency_lists(self._fwd)

    @cached_property
    def _pred(self) -> list[list[int]]:
        return _adjacency_lists(self._rev)

    @cached_property
    def laureates(self) -> frozenset[str]:
        return frozenset(s.id for s in self._scholars.values() if s.is_laureate)

    @cached_property
    def laureate_ids(self) -> tuple[str, ...]:
        return tuple(sid for sid in self._ids if self._scholars[sid].is_laureate)

    @cached_property
    def laureate_mask(self) -> np.ndarray:
        mask = np.zeros(len(self), dtype=bool)
        mask[[self._index[x] for x in self.laureate_ids]] = True
        return mask

    @cached_property
    def topological_order(self) -> tuple[str, ...]:
        return tuple(self._ids[k] for k in _toposort(self._succ, self._pred))

    @cached_property
    def depth(self) -> int:
        """Length in edges of the longest directed path."""
        level = [0] * len(self)
        for k in _toposort(self._succ, self._pred):
            for s in self._succ[k]:
                if level[k] + 1 > level[s]:
                    level[s] = level[k] + 1
        return max(level, default=0)

    def adjacency(self, direction: str) -> sp.csr_matrix:
        return self._rev if direction in _UPSTREAM else self._fwd

    def adjacency_lists(self, direction: str) -> list[list[int]]:
        return self._pred if direction in _UPSTREAM else self._succ


_UPSTREAM = {"from_ancestors", "out", "up", "ancestors"}


def _adjacency_lists(m: sp.csr_matrix) -> list[list[int]]:
    idx = m.indices.tolist()
    ptr = m.indptr.tolist()
    return [idx[ptr[k]:ptr[k + 1]] for k in range(m.shape[0])]


def _toposort(succ: list[list[int]], pred: list[list[int]]) -> list[int]:
    indeg = [len(p) for p in pred]
    queue = deque(k for k, d in enumerate(indeg) if d == 0)
    order = []
    while queue:
        k = queue.popleft()
        order.append(k)
        for s in succ[k]:
            indeg[s] -= 1
            if indeg[s] == 0:
                queue.append(s)
    if len(order) != len(succ):
        raise _CycleRemnant(indeg)
    return order


class _CycleRemnant(Exception):
    def __init__(self, indeg):
        self.indeg = indeg


def _find_cycle(pred: list[list[int]], indeg: list[int]) -> list[int]:
    # Every node left with indegree > 0 after Kahn's pass has a predecessor
    # that was also left over, so walking predecessors must revisit a node.
    remaining = {k for k, d in enumerate(indeg) if d > 0}
    start = min(remaining)
    walk, pos = [], {}
    k = start
    while k not in pos:
        pos[k] = len(walk)
        walk.append(k)
        k = next(p for p in pred[k] if p in remaining)
    cycle = walk[pos[k]:]
    cycle.reverse()
    return cycle + [cycle[0]]


def build_graph(nodes: Iterable[Scholar], edges: Iterable[Edge | tuple[str, str]]) -> GenealogyGraph:
    """Validate scholars and advisor edges and return an immutable graph.

    Raises
    ------
    DuplicateIdError
        A scholar id occurs twice.
    DanglingEdgeError
        An edge endpoint is not among the scholars.
    CycleDetectedError
        The advisor relation is cyclic (self-loops included).
    """
    scholars = list(nodes)
    seen: set[str] = set()
    for s in scholars:
        if s.id in seen:
            raise DuplicateIdError(f"duplicate scholar id {s.id!r}")
        seen.add(s.id)
    edge_set: dict[Edge, None] = {}
    for e in edges:
        e = Edge(*e)
        for end in e:
            if end not in seen:
                raise DanglingEdgeError(f"edge {e.advisor!r} -> {e.student!r} refers to unknown id {end!r}")
        if e.advisor == e.student:
            raise CycleDetectedError([e.advisor, e.student])
        edge_set[e] = None
    g = GenealogyGraph(scholars, list(edge_set), _validated=True)
    try:
        _toposort(g._succ, g._pred)
    except _CycleRemnant as exc:
        cycle = _find_cycle(g._pred, exc.indeg)
        raise CycleDetectedError([g.ids[k] for k in cycle]) from None
    return g


# -- components ------------------------------------------------------------


class Component(NamedTuple):
    members: tuple[str, ...]
    laureate_count: int


@dataclass(frozen=True)
class ComponentCensus:
    components: tuple[Component, ...]
    histogram: dict[int, int] = field(default_factory=dict)

    @property
    def sizes(self) -> list[int]:
        return [len(c.members) for c in self.components]


def component_labels(g: GenealogyGraph) -> np.ndarray:
    """Weak-component label per node index."""
    _, labels = connected_components(g.forward, directed=True, connection="weak")
    return labels


def weak_components(g: GenealogyGraph) -> ComponentCensus:
    """Partition the scholars into family trees, ignoring edge direction."""
    labels = component_labels(g)
    groups: dict[int, list[str]] = {}
    for sid, lab in zip(g.ids, labels.tolist()):
        groups.setdefault(lab, []).append(sid)
    laureates = g.laureates
    comps = [Component(tuple(m), sum(x in laureates for x in m)) for m in groups.values()]
    comps.sort(key=lambda c: (-c.laureate_count, c.members[0]))
    hist: dict[int, int] = {}
    for c in comps:
        hist[c.laureate_count] = hist.get(c.laureate_count, 0) + 1
    return ComponentCensus(tuple(comps), dict(sorted(hist.items())))


# -- single-source queries --------------------------------------------------


def _bfs(adj: list[list[int]], start: int, max_n: int | None = None) -> dict[int, int]:
    """Shortest hop counts from ``start``; the start node itself is left out."""
    dist = {start: 0}
    queue = deque([start])
    while queue:
        k = queue.popleft()
        d = dist[k] + 1
        if max_n is not None and d > max_n:
            continue
        for nb in adj[k]:
            if nb not in dist:
                dist[nb] = d
                queue.append(nb)
    del dist[start]
    return dist


def ancestors(g: GenealogyGraph, node_id: str) -> set[str]:
    """All transitive advisors of ``node_id``, excluding itself."""
    return {g.ids[k] for k in _bfs(g._pred, g.index(node_id))}


def descendants(g: GenealogyGraph, node_id: str) -> set[str]:
    """All transitive students of ``node_id``, excluding itself."""
    return {g.ids[k] for k in _bfs(g._succ, g.index(node_id))}


Direction = Literal["from_ancestors", "to_descendants"]


def distance_to_set(g: GenealogyGraph, i: str, targets: Iterable[str], direction: Direction) -> dict[str, float]:
    """Shortest path length between ``i`` and each target.

    ``from_ancestors`` measures paths j -> ... -> i, ``to_descendants``
    measures i -> ... -> j. Unreachable targets map to ``math.inf``.
    """
    if direction not in ("from_ancestors", "to_descendants"):
        raise ValueError(f"bad direction {direction!r}")
    targets = list(targets)
    for t in targets:
        g.index(t)
    dist = _bfs(g.adjacency_lists(direction), g.index(i))
    out: dict[str, float] = {}
    for t in targets:
        k = g._index[t]
        if k == g._index[i]:
            out[t] = 0
        else:
            out[t] = dist.get(k, math.inf)
    return out


def generation_layers(g: GenealogyGraph, node_id: str, max_n: int | None = None) -> list[set[int]]:
    """Ancestor index sets by shortest distance; element ``n - 1`` is generation n."""
    dist = _bfs(g._pred, g.index(node_id), max_n)
    layers: list[set[int]] = [set() for _ in range(max(dist.values(), default=0))]
    for k, d in dist.items():
        layers[d - 1].add(k)
    return layers


def generation_ancestors(g: GenealogyGraph, node_id: str, n: int) -> set[str]:
    """Ancestors whose shortest distance to ``node_id`` is exactly ``n``."""
    if n < 1:
        raise ValueError("generation must be >= 1")
    layers = generation_layers(g, node_id, n)
    return {g.ids[k] for k in layers[n - 1]} if len(layers) >= n else set()


def nearest_common_ancestor(g: GenealogyGraph, targets: Iterable[str]) -> tuple[str, int, int] | None:
    """Common ancestor closest to all of ``targets``.

    Minimises the largest distance to a target, then the summed distance,
    then the id. Returns ``(id, max_distance, sum_distance)`` or ``None``.
    """
    targets = sorted(set(targets))
    if not targets:
        raise ValueError("need at least one target id")
    common: dict[int, list[int]] | None = None
    for t in targets:
        dist = _bfs(g._pred, g.index(t))
        if common is None:
            common = {k: [d] for k, d in dist.items()}
        else:
            common = {k: v + [dist[k]] for k, v in common.items() if k in dist}
        if not common:
            return None
    best = min(common.items(), key=lambda kv: (max(kv[1]), sum(kv[1]), g.ids[kv[0]]))
    return g.ids[best[0]], max(best[1]), sum(best[1])


# -- batch sweeps -----------------------------------------------------------


def bfs_layers(adj: sp.csr_matrix, sources: Sequence[int] | np.ndarray,
               max_n: int | None = None) -> Iterator[tuple[int, sp.csr_matrix]]:
    """Level-synchronous BFS from many sources at once.

    Yields ``(n, layer)`` where ``layer`` is a 0/1 CSR matrix with one row
    per source; entry ``[s, k]`` is set when node ``k`` lies at shortest
    distance exactly ``n`` from ``sources[s]`` along ``adj``.
    """
    sources = np.asarray(sources, dtype=np.int64)
    m, n_nodes = len(sources), adj.shape[0]
    frontier = sp.csr_matrix((np.ones(m, dtype=np.int32), (np.arange(m), sources)), shape=(m, n_nodes))
    seen = frontier
    n = 0
    while frontier.nnz and (max_n is None or n < max_n):
        n += 1
        nxt = frontier @ adj
        nxt.data[:] = 1
        nxt = nxt - nxt.multiply(seen)
        nxt.eliminate_zeros()
        if not nxt.nnz:
            return
        nxt.sort_indices()
        seen = seen + nxt
        yield n, nxt
        frontier = nxt


def distance_matrix(adj: sp.csr_matrix, sources: Sequence[int] | np.ndarray,
                    max_n: int | None = None) -> sp.csr_matrix:
    """Sparse shortest distances from each source; unreachable and self entries absent."""
    sources = np.asarray(sources, dtype=np.int64)
    acc = sp.csr_matrix((len(sources), adj.shape[0]), dtype=np.int32)
    for n, layer in bfs_layers(adj, sources, max_n):
        acc = acc + layer * n
    acc.sort_indices()
    return acc


def laureate_descendant_counts(g: GenealogyGraph) -> dict[str, int]:
    """Number of laureates among the descendants of every scholar."""
    return _laureate_reach_counts(g, g.reverse)


def laureate_ancestor_counts(g: GenealogyGraph) -> dict[str, int]:
    """Number of laureates among the ancestors of every scholar."""
    return _laureate_reach_counts(g, g.forward)


def _laureate_reach_counts(g: GenealogyGraph, adj: sp.csr_matrix) -> dict[str, int]:
    counts = np.zeros(len(g), dtype=np.int64)
    lau = g.indices(g.laureate_ids)
    for start in range(0, len(lau), _SOURCE_CHUNK):
        for _, layer in bfs_layers(adj, lau[start:start + _SOURCE_CHUNK]):
            counts += np.bincount(layer.indices, minlength=len(g))
    return dict(zip(g.ids, counts.tolist()))


_SOURCE_CHUNK = 512
