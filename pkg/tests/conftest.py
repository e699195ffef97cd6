import sys
from pathlib import Path

import pytest

from nobeltree import Edge, Field, Prize, Scholar, build_graph, fixtures
from nobeltree.synthetic import random_dag

sys.path.insert(0, str(Path(__file__).parent))


def make_graph(spec: str, laureates: dict | None = None):
    """Build from ``"A>B B>C"`` plus ``{"A": "physics:1904"}`` style prizes."""
    laureates = laureates or {}
    edges = [tuple(tok.split(">")) for tok in spec.split()]
    ids = sorted({x for e in edges for x in e} | set(laureates))
    scholars = []
    for x in ids:
        prizes = ()
        if x in laureates:
            prizes = tuple(Prize(Field.parse(t.split(":")[0]), int(t.split(":")[1])) for t in laureates[x].split(";"))
        scholars.append(Scholar(x, x, prizes))
    return build_graph(scholars, [Edge(a, b) for a, b in edges])


@pytest.fixture
def chain():
    return make_graph("A>B B>C", {"A": "physics:1910", "B": "physics:1930"})


@pytest.fixture
def diamond():
    return make_graph("A>B A>C B>D C>D")


@pytest.fixture(scope="session")
def mini():
    return fixtures.load("mini_nobel")


@pytest.fixture(scope="session")
def pedb():
    return fixtures.load("ped_b")


def random_graphs(count, seed=0, max_nodes=200, max_edges=800):
    import numpy as np

    rng = np.random.default_rng(seed)
    for k in range(count):
        n = int(rng.integers(2, max_nodes + 1))
        m = int(rng.integers(0, min(max_edges, n * (n - 1) // 2) + 1))
        yield random_dag(n, m, seed=int(rng.integers(2**31)), laureate_fraction=float(rng.uniform(0.05, 0.5)))


# -- acceptance reporting ------------------------------------------------------

_ACCEPTANCE: list[tuple[str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _ACCEPTANCE.append((str(number), title, status))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status in sorted(_ACCEPTANCE, key=lambda r: int(r[0])):
        terminalreporter.write_line(f"criterion {number:>2} [{status}] {title}")
