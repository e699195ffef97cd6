import math

import numpy as np
import pytest
import scipy.stats
from hypothesis import given, settings

from conftest import make_graph, random_graphs
from nobeltree import (
    DegenerateGroupError,
    NoLaureatesError,
    ancestry_summary,
    build_graph,
    cohort_series,
    cross_table,
    laureate_pair_counts,
    tie_classification,
    welch_t,
)
from nobeltree.graph import FIELDS
from nobeltree.stats import METRICS, TieClass, distal_pair_matrix, ols_slope
from oracles import brute_pair_counts, index_edges, reachability, union_find_components
from strategies import dags


def _closure(g):
    ids, idx = index_edges(g.scholars.values(), g.edges)
    reach = reachability(len(ids), idx)
    np.fill_diagonal(reach, False)
    return ids, idx, reach


def test_pair_counts_chain():
    g = make_graph("A>B B>C", {"A": "physics:1910", "C": "physics:1950"})
    assert tuple(laureate_pair_counts(g)) == (0, 0, 1, 1)


def test_pair_counts_brute_force(mini):
    ids, idx, reach = _closure(mini)
    fields = [mini.scholars[x].fields for x in ids]
    assert tuple(laureate_pair_counts(mini)) == brute_pair_counts(ids, fields, reach, set(idx))


def test_single_pair_table():
    g = make_graph("A>B", {"A": "physics:1910", "B": "physics:1930"})
    t = cross_table(g, "proximate")
    assert t.row("physics") == (1, 0, 0, 0, 1, 1)
    assert t.row("chemistry") == (0, 0, 0, 0, 0, 0)


def test_dual_field_counts_once_per_field_pair():
    g = make_graph("A>B", {"A": "physics:1910;chemistry:1915", "B": "medicine:1930"})
    t = cross_table(g, "proximate")
    assert t.cells[FIELDS.index("physics"), FIELDS.index("medicine")] == 1
    assert t.cells[FIELDS.index("chemistry"), FIELDS.index("medicine")] == 1
    assert t.any.tolist() == [1, 1, 0, 0]


def test_table_brute_force(mini):
    ids, idx, reach = _closure(mini)
    edges = set(idx)
    for kind, link in (("proximate", lambda a, b: (a, b) in edges), ("distal", lambda a, b: reach[a, b])):
        cells = np.zeros((4, 4), dtype=int)
        anyc = np.zeros(4, dtype=int)
        for a, x in enumerate(ids):
            fa = mini.scholars[x].fields
            related = [b for b, y in enumerate(ids) if mini.scholars[y].fields and link(a, b)]
            for r, f in enumerate(FIELDS):
                if f in fa and related:
                    anyc[r] += 1
                for b in related:
                    for c, f2 in enumerate(FIELDS):
                        cells[r, c] += (f in fa) and (f2 in mini.scholars[ids[b]].fields)
        t = cross_table(mini, kind)
        np.testing.assert_array_equal(t.cells, cells)
        np.testing.assert_array_equal(t.any, anyc)


def test_mini_tables_by_hand(mini):
    # physics laureates b, d, g; chemistry c, e, g, h
    # physics advisor edges: b>d, b>e, d>g (g holds physics and chemistry)
    prox = cross_table(mini, "proximate")
    assert prox.row("physics") == (2, 2, 0, 0, 2, 1)
    dist = cross_table(mini, "distal")
    assert dist.row("chemistry") == (2, 5, 1, 3, 3, 1)


def test_conservation_and_coherence_random():
    for scholars, edges in random_graphs(20, seed=5, max_nodes=80, max_edges=240):
        g = build_graph(scholars, edges)
        down = distal_pair_matrix(g, "ancestor_first")
        up = distal_pair_matrix(g, "descendant_first")
        np.testing.assert_array_equal(down, up)
        np.testing.assert_array_equal(down, cross_table(g, "distal").cells)
        per_field = [sum(f in g.scholars[x].fields for x in g.laureates) for f in FIELDS]
        for kind in ("proximate", "distal"):
            t = cross_table(g, kind)
            assert (t.any + t.none).tolist() == per_field


def test_single_laureate_summary():
    g = make_graph("A>B", {"B": "physics:1950"})
    s = ancestry_summary(g)
    for scope in ("any", "physics"):
        assert s[scope]["ancestors"] == (0.0, 0.0, 1)
        assert s[scope]["descendants"] == (0.0, 0.0, 1)
        assert s[scope]["ancestors_other_fraction"] is None
        assert s[scope]["descendants_other_fraction"] is None
    assert s["chemistry"]["ancestors"] is None


def test_no_laureates():
    with pytest.raises(NoLaureatesError):
        ancestry_summary(make_graph("A>B"))


def _mean_se(values):
    n = len(values)
    m = sum(values) / n
    if n < 2:
        return m, 0.0
    var = sum((v - m) ** 2 for v in values) / (n - 1)
    return m, math.sqrt(var / n)


def test_summary_recomputed_from_raw_counts(mini):
    ids, idx, reach = _closure(mini)
    lau = [k for k, x in enumerate(ids) if mini.scholars[x].is_laureate]
    fields = {k: mini.scholars[ids[k]].fields for k in lau}
    s = ancestry_summary(mini)
    for f in FIELDS:
        members = [k for k in lau if f in fields[k]]
        anc = [sum(reach[a, k] for a in lau) for k in members]
        own = [sum(reach[a, k] and f in fields[a] for a in lau) for k in members]
        frac = [1 - o / t for o, t in zip(own, anc) if t]
        assert s[f.value]["ancestors"][:2] == pytest.approx(_mean_se(anc))
        assert s[f.value]["ancestors_own_field"][:2] == pytest.approx(_mean_se(own))
        if frac:
            assert s[f.value]["ancestors_other_fraction"][:2] == pytest.approx(_mean_se(frac))
        else:
            assert s[f.value]["ancestors_other_fraction"] is None
        desc = [sum(reach[k, d] for d in lau) for k in members]
        assert s[f.value]["descendants"][:2] == pytest.approx(_mean_se(desc))


def test_mean_identity_random():
    for scholars, edges in random_graphs(15, seed=6, max_nodes=60, max_edges=200):
        g = build_graph(scholars, edges)
        if not g.laureates:
            continue
        s = ancestry_summary(g)
        assert s["any"]["ancestors"].mean == pytest.approx(s["any"]["descendants"].mean, abs=1e-12)
        for f in FIELDS:
            a, d = s[f.value]["ancestors_own_field"], s[f.value]["descendants_own_field"]
            if a is not None:
                assert a.mean == pytest.approx(d.mean, abs=1e-12)
            for stat, v in s[f.value].items():
                if v is not None and "fraction" in stat:
                    assert 0 <= v.mean <= 1 and v.se >= 0


def test_welch_examples():
    assert welch_t([1, 2, 3], [1, 2, 3])[0] == 0
    with pytest.raises(DegenerateGroupError):
        welch_t([0, 0, 0, 0], [1, 1, 1, 1])
    with pytest.raises(DegenerateGroupError):
        welch_t([1], [1, 2])
    t, dof = welch_t([1, 2, 3], [2, 4, 6])
    # means 2 and 4, sample variances 1 and 4, n = 3 each
    assert t == pytest.approx(-2 / math.sqrt(5 / 3), abs=1e-12)
    assert dof == pytest.approx(50 / 17, abs=1e-12)
    ref = scipy.stats.ttest_ind([1, 2, 3], [2, 4, 6], equal_var=False)
    assert t == pytest.approx(ref.statistic)


def test_ties_shared_advisor():
    g = make_graph("X>A X>B", {"A": "physics:1950", "B": "chemistry:1960"})
    assert tie_classification(g) == {"A": TieClass.PEERS_ONLY, "B": TieClass.PEERS_ONLY}


def _brute_ties(g):
    ids, idx, reach = _closure(g)
    pos = {x: k for k, x in enumerate(ids)}
    comp = {}
    for label, members in enumerate(union_find_components(len(ids), idx)):
        comp.update((k, label) for k in members)
    advisors = {k: {a for a, b in idx if b == k} for k in range(len(ids))}
    lau = [pos[x] for x in g.laureates]
    out = {}
    for k in lau:
        others = [y for y in lau if y != k]
        if any(reach[y, k] for y in others):
            c = TieClass.HAS_NOBEL_ANCESTOR
        elif any(advisors[k] & advisors[y] for y in others):
            c = TieClass.PEERS_ONLY
        elif not any(comp[y] == comp[k] for y in others):
            c = TieClass.UNCONNECTED
        else:
            c = TieClass.NO_TIES
        out[ids[k]] = c
    return out


def test_ties_mini(mini):
    got = tie_classification(mini)
    assert got == _brute_ties(mini)
    assert set(got.values()) == set(TieClass)


def test_ties_random():
    for scholars, edges in random_graphs(15, seed=8, max_nodes=60, max_edges=120):
        g = build_graph(scholars, edges)
        assert tie_classification(g) == _brute_ties(g)


@settings(max_examples=40, deadline=None)
@given(dags())
def test_tie_classes_exhaustive(data):
    g = build_graph(*data)
    classes = tie_classification(g)
    assert set(classes) == g.laureates
    assert all(isinstance(v, TieClass) for v in classes.values())


def test_single_cohort_year():
    g = make_graph("A>B", {"A": "physics:1950", "B": "physics:1950"})
    s = cohort_series(g, "anc_per_laureate")
    assert len(s.points) == 1 and s.trend_slope == 0
    assert s.points[0] == (1950, 0.5, 2)


def test_no_ancestry_cohort():
    g = make_graph("X>A Y>B", {"A": "physics:1950", "B": "chemistry:1950"})
    s = cohort_series(g, "frac_no_ancestry")
    assert s.points[0].value == 1


def test_mini_cohorts_recomputed(mini):
    ids, idx, reach = _closure(mini)
    pos = {x: k for k, x in enumerate(ids)}
    lau = sorted(mini.laureates)
    for prior in (False, True):
        s = cohort_series(mini, "anc_per_laureate", prior_only=prior)
        by_year = {}
        for x in lau:
            for p in mini.scholars[x].prizes:
                n = sum(reach[pos[y], pos[x]] and (not prior or mini.scholars[y].first_award_year < p.year)
                        for y in lau)
                by_year.setdefault(p.year, []).append(n)
        expected = [(y, sum(v) / len(v), len(v)) for y, v in sorted(by_year.items())]
        assert [tuple(p) for p in s.points] == pytest.approx(expected)
        xs = np.array([p[0] for p in expected], float)
        ys = np.array([p[1] for p in expected], float)
        closed = ((xs - xs.mean()) * (ys - ys.mean())).sum() / ((xs - xs.mean()) ** 2).sum()
        assert s.trend_slope == pytest.approx(closed, abs=1e-12)


def test_prior_only_drops_later_relatives(mini):
    # g (physics 1954, chemistry 1962) has ancestors b, c, d, e all awarded earlier
    late = cohort_series(mini, "anc_per_laureate", prior_only=True)
    assert dict((p.year, p.value) for p in late.points)[1954] == 4
    # b's descendants all won after 1904, so none count as prior descendants
    desc = cohort_series(mini, "desc_per_laureate", prior_only=True)
    assert dict((p.year, p.value) for p in desc.points)[1904] == 0


def test_all_metrics_in_range(mini):
    for m in METRICS:
        for prior in (False, True):
            s = cohort_series(mini, m, prior)
            years = [p.year for p in s.points]
            assert years == sorted(years)
            if m.startswith("frac"):
                assert all(0 <= p.value <= 1 for p in s.points)


def test_metric_aliases(mini):
    assert cohort_series(mini, "fracNoTies") == cohort_series(mini, "frac_no_ties")
    with pytest.raises(ValueError):
        cohort_series(mini, "bogus")


def test_ols_slope():
    assert ols_slope([1, 2, 3], [2, 4, 6]) == pytest.approx(2)
    assert ols_slope([5], [1]) == 0
    assert ols_slope([5, 5], [1, 2]) == 0
