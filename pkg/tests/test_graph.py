import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import make_graph, random_graphs
from nobeltree import (
    CycleDetectedError,
    DanglingEdgeError,
    DuplicateIdError,
    Edge,
    Prize,
    Scholar,
    UnknownIdError,
    ancestors,
    build_graph,
    descendants,
    distance_to_set,
    generation_ancestors,
    laureate_descendant_counts,
    nearest_common_ancestor,
    weak_components,
)
from nobeltree.graph import distance_matrix, laureate_ancestor_counts
from oracles import all_pairs_distances, index_edges, longest_path, reachability, union_find_components
from strategies import dags


def test_minimal_chain():
    g = build_graph([Scholar("A"), Scholar("B")], [Edge("A", "B")])
    assert len(g) == 2 and g.num_edges == 1
    assert g.students("A") == ["B"] and g.advisors("B") == ["A"]


def test_two_cycle_rejected():
    with pytest.raises(CycleDetectedError) as exc:
        build_graph([Scholar("A"), Scholar("B")], [("A", "B"), ("B", "A")])
    assert exc.value.cycle in (["A", "B", "A"], ["B", "A", "B"])


def test_reported_cycle_is_a_real_cycle():
    edges = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "b"), ("x", "a")]
    with pytest.raises(CycleDetectedError) as exc:
        build_graph([Scholar(x) for x in "abcdx"], edges)
    cyc = exc.value.cycle
    assert cyc[0] == cyc[-1] and set(cyc) == {"b", "c", "d"}
    assert all(e in edges for e in zip(cyc, cyc[1:]))


def test_self_loop_is_a_cycle():
    with pytest.raises(CycleDetectedError):
        build_graph([Scholar("A")], [("A", "A")])


def test_dangling_edge():
    with pytest.raises(DanglingEdgeError, match="Z"):
        build_graph([Scholar("A")], [("A", "Z")])


def test_duplicate_id():
    with pytest.raises(DuplicateIdError):
        build_graph([Scholar("A"), Scholar("A", "again")], [])


def test_duplicate_edges_collapse():
    g = build_graph([Scholar("A"), Scholar("B")], [("A", "B"), ("A", "B")])
    assert g.num_edges == 1


def test_prize_validation():
    with pytest.raises(ValueError):
        Prize("physics", 1900)
    with pytest.raises(ValueError):
        Prize("alchemy", 1950)
    assert Prize("Physics", 1901).token() == "physics:1901"


def test_laureate_set():
    g = make_graph("A>B", {"B": "physics:1950;chemistry:1960"})
    assert g.laureates == {"B"}
    assert g.scholar("B").first_award_year == 1950


def test_components_chain_plus_isolated():
    g = build_graph([Scholar("A"), Scholar("B"), Scholar("C")], [("A", "B")])
    census = weak_components(g)
    assert sorted(census.sizes) == [1, 2]


def test_components_order_and_histogram(mini):
    census = weak_components(mini)
    assert [c.laureate_count for c in census.components] == [9, 1]
    assert census.histogram == {1: 1, 9: 1}
    assert sum(k * v for k, v in census.histogram.items()) == len(mini.laureates)


def test_components_match_union_find():
    for scholars, edges in random_graphs(25, seed=1, max_nodes=60, max_edges=60):
        g = build_graph(scholars, edges)
        ids, idx = index_edges(scholars, edges)
        expected = [tuple(ids[k] for k in comp) for comp in union_find_components(len(ids), idx)]
        got = sorted(c.members for c in weak_components(g).components)
        assert got == sorted(expected)


def test_diamond_closures(diamond):
    assert ancestors(diamond, "D") == {"A", "B", "C"}
    assert descendants(diamond, "A") == {"B", "C", "D"}
    assert ancestors(diamond, "A") == set()


def test_unknown_id(diamond):
    with pytest.raises(UnknownIdError):
        ancestors(diamond, "Q")
    with pytest.raises(UnknownIdError):
        distance_to_set(diamond, "A", ["Q"], "to_descendants")


def test_chain_distances(chain):
    assert distance_to_set(chain, "C", {"A", "B"}, "from_ancestors") == {"A": 2, "B": 1}
    assert distance_to_set(chain, "A", {"C"}, "from_ancestors") == {"C": math.inf}


def test_diamond_shortest(diamond):
    assert distance_to_set(diamond, "D", {"A"}, "from_ancestors") == {"A": 2}


def test_generation_ancestors(chain, diamond, pedb):
    assert generation_ancestors(chain, "C", 2) == {"A"}
    assert generation_ancestors(diamond, "D", 2) == {"A"}
    assert len(generation_ancestors(pedb, "c1", 2)) == 4
    assert len(generation_ancestors(pedb, "d1", 3)) == 8
    with pytest.raises(ValueError):
        generation_ancestors(chain, "C", 0)
    assert generation_ancestors(chain, "C", 7) == set()


def test_nca_examples(diamond, chain):
    assert nearest_common_ancestor(diamond, {"B", "C"}) == ("A", 1, 2)
    assert nearest_common_ancestor(chain, {"C"}) == ("B", 1, 1)
    assert nearest_common_ancestor(chain, {"A"}) is None


def test_laureate_descendant_counts_chain():
    g = make_graph("A>B B>C", {"B": "physics:1950", "C": "physics:1970"})
    assert laureate_descendant_counts(g) == {"A": 2, "B": 1, "C": 0}
    assert laureate_ancestor_counts(g) == {"A": 0, "B": 0, "C": 1}


def test_laureate_descendant_counts_mini(mini):
    ids, idx = index_edges(mini.scholars.values(), mini.edges)
    reach = reachability(len(ids), idx)
    lau = np.array([x in mini.laureates for x in ids])
    counts = laureate_descendant_counts(mini)
    for k, x in enumerate(ids):
        assert counts[x] == int((reach[k] & lau).sum() - lau[k])
    assert max(counts, key=counts.get) == "a"


def test_random_dags_against_oracles():
    for scholars, edges in random_graphs(30, seed=2, max_nodes=80, max_edges=250):
        g = build_graph(scholars, edges)
        ids, idx = index_edges(scholars, edges)
        n = len(ids)
        d = all_pairs_distances(n, idx)
        reach = reachability(n, idx)
        assert g.depth == longest_path(n, idx)
        dm = distance_matrix(g.forward, np.arange(n)).toarray()
        expect = np.where(np.isfinite(d), d, 0)
        np.fill_diagonal(expect, 0)
        np.testing.assert_array_equal(dm, expect)
        for k in range(0, n, max(1, n // 7)):
            x = ids[k]
            assert ancestors(g, x) == {ids[j] for j in range(n) if reach[j, k] and j != k}
            assert descendants(g, x) == {ids[j] for j in range(n) if reach[k, j] and j != k}
            got = distance_to_set(g, x, ids, "from_ancestors")
            assert [got[y] for y in ids] == list(d[:, k])
            got = distance_to_set(g, x, ids, "to_descendants")
            assert [got[y] for y in ids] == list(d[k, :])


def test_nca_matches_exhaustive_scan():
    rng = np.random.default_rng(3)
    checked = 0
    for scholars, edges in random_graphs(30, seed=4, max_nodes=60, max_edges=200):
        g = build_graph(scholars, edges)
        ids, idx = index_edges(scholars, edges)
        if len(ids) < 3:
            continue
        d = all_pairs_distances(len(ids), idx)
        targets = rng.choice(len(ids), 3, replace=False)
        best = None
        for k in range(len(ids)):
            if k in targets or not all(np.isfinite(d[k, t]) for t in targets):
                continue
            key = (max(d[k, t] for t in targets), sum(d[k, t] for t in targets), ids[k])
            best = key if best is None or key < best else best
        got = nearest_common_ancestor(g, [ids[t] for t in targets])
        if best is None:
            assert got is None
        else:
            assert got == (best[2], int(best[0]), int(best[1]))
            checked += 1
    assert checked > 0


@settings(max_examples=60, deadline=None)
@given(dags())
def test_closure_duality_and_topology(data):
    scholars, edges = data
    g = build_graph(scholars, edges)
    pos = {x: k for k, x in enumerate(g.topological_order)}
    assert all(pos[a] < pos[b] for a, b in g.edges)
    for x in g.ids:
        for y in ancestors(g, x):
            assert x in descendants(g, y)


@settings(max_examples=60, deadline=None)
@given(dags())
def test_generations_partition_ancestors(data):
    g = build_graph(*data)
    for x in g.ids:
        layers = [generation_ancestors(g, x, n) for n in range(1, g.depth + 1)]
        union = set().union(*layers) if layers else set()
        assert union == ancestors(g, x)
        assert sum(map(len, layers)) == len(union)


@settings(max_examples=40, deadline=None)
@given(dags())
def test_distance_orientation_symmetry(data):
    g = build_graph(*data)
    for x in g.ids:
        up = distance_to_set(g, x, g.ids, "from_ancestors")
        for y in g.ids:
            assert up[y] == distance_to_set(g, y, [x], "to_descendants")[x]


@settings(max_examples=40, deadline=None)
@given(dags())
def test_components_have_no_crossing_edges(data):
    g = build_graph(*data)
    census = weak_components(g)
    label = {x: k for k, c in enumerate(census.components) for x in c.members}
    assert len(label) == len(g)
    assert all(label[a] == label[b] for a, b in g.edges)
