from hypothesis import strategies as st

from nobeltree import Edge, Field, Prize, Scholar


@st.composite
def dags(draw, max_nodes=25, laureate_p=0.4):
    """Small random DAGs as ``(scholars, edges)`` with a shuffled hidden order."""
    n = draw(st.integers(1, max_nodes))
    order = draw(st.permutations(range(n)))
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] < p[1]),
                         max_size=3 * n))
    scholars = []
    for k in range(n):
        prizes = ()
        if draw(st.floats(0, 1)) < laureate_p:
            prizes = (Prize(draw(st.sampled_from(list(Field))), draw(st.integers(1901, 2020))),)
        scholars.append(Scholar(f"n{k:02d}", "", prizes))
    edges = [Edge(f"n{order[a]:02d}", f"n{order[b]:02d}") for a, b in sorted(pairs)]
    return scholars, edges
