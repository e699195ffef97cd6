"""Random graphs for tests and benchmarks."""

from __future__ import annotations

import numpy as np

from .graph import FIELDS, Edge, Prize, Scholar


def _scholars(n: int, laureate_idx, rng: np.random.Generator, years=None) -> list[Scholar]:
    width = len(str(max(n - 1, 0)))
    chosen = set(int(k) for k in laureate_idx)
    out = []
    for k in range(n):
        prizes = ()
        if k in chosen:
            field = FIELDS[int(rng.integers(len(FIELDS)))]
            year = int(years[k]) if years is not None else int(rng.integers(1901, 2024))
            prizes = (Prize(field, year),)
        out.append(Scholar(f"s{k:0{width}d}", f"Scholar {k}", prizes))
    return out


def random_dag(n_nodes: int, n_edges: int, seed=None, laureate_fraction: float = 0.3):
    """Uniform random DAG on a hidden random order, with random laureates.

    Returns ``(scholars, edges)``. ``n_edges`` is capped at the number of
    available forward pairs.
    """
    rng = np.random.default_rng(seed)
    order = rng.permutation(n_nodes)
    n_edges = min(n_edges, n_nodes * (n_nodes - 1) // 2)
    pairs: set[tuple[int, int]] = set()
    while len(pairs) < n_edges:
        a, b = rng.integers(n_nodes, size=2)
        if a != b:
            pairs.add((min(a, b), max(a, b)))
    laureates = np.flatnonzero(rng.random(n_nodes) < laureate_fraction)
    scholars = _scholars(n_nodes, laureates, rng)
    edges = [Edge(scholars[order[a]].id, scholars[order[b]].id) for a, b in sorted(pairs)]
    return scholars, edges


def layered_genealogy(n_nodes: int = 100_000, n_edges: int = 300_000, n_laureates: int = 1_000,
                      generations: int = 33, window: int = 2, seed=None):
    """Genealogy-like DAG: generations of students with nearby advisors.

    Each non-founder draws its advisors from the ``2 * window + 1``
    positions around it in the previous generation (wrapping around), so
    lineages stay local the way real schools do. Three advisors each,
    plus a fourth for as many students as needed to reach ``n_edges``.
    Laureate award years increase with generation.
    """
    rng = np.random.default_rng(seed)
    width = -(-n_nodes // generations)
    gen = np.arange(n_nodes) // width
    pos = np.arange(n_nodes) % width
    students = np.flatnonzero(gen > 0)
    offsets = np.arange(-window, window + 1)
    n_cand = len(offsets)
    base = min(3, n_cand)
    extra = max(0, min(len(students), n_edges - base * len(students)))
    fourth = np.zeros(n_nodes, dtype=bool)
    if n_cand > base:
        fourth[rng.choice(students, size=extra, replace=False)] = True
    src, dst = [], []
    for k in students.tolist():
        take = base + int(fourth[k])
        picks = rng.choice(offsets, size=take, replace=False)
        prev = (gen[k] - 1) * width + (pos[k] + picks) % width
        prev = prev[prev < n_nodes]
        src.extend(prev.tolist())
        dst.extend([k] * len(prev))
    laureates = rng.choice(n_nodes, size=min(n_laureates, n_nodes), replace=False)
    years = 1901 + (gen * 120) // max(generations - 1, 1) + rng.integers(0, 5, size=n_nodes)
    years = np.minimum(years, 2025)
    scholars = _scholars(n_nodes, laureates, rng, years)
    edges = sorted({Edge(scholars[a].id, scholars[b].id) for a, b in zip(src, dst)})
    return scholars, edges
