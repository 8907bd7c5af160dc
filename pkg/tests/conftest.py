import itertools
from functools import lru_cache

import networkx as nx
import pytest

from sigsys.graphs import Graph


def from_nx(g) -> Graph:
    nodes = sorted(g.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(pos[u], pos[v]) for u, v in g.edges()])


@lru_cache(maxsize=None)
def connected_graphs(max_n: int) -> tuple[Graph, ...]:
    """All connected graphs with 2..max_n vertices up to isomorphism (max_n <= 7)."""
    out = []
    for g in nx.graph_atlas_g():
        if 2 <= g.number_of_nodes() <= max_n and nx.is_connected(g):
            out.append(from_nx(g))
    return tuple(out)


def brute_homs(d: Graph, h: Graph):
    """Every map V(d) -> V(h), filtered; lexicographic order by construction."""
    for img in itertools.product(range(h.n), repeat=d.n):
        if all(h.has_edge(img[u], img[v]) for u, v in d.edges):
            yield img


@pytest.fixture(scope="session")
def small_connected():
    return connected_graphs(5)


# -- acceptance summary ------------------------------------------------------

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.failed:
        _acceptance[name] = "FAIL"
    elif report.when == "call" and name not in _acceptance:
        _acceptance[name] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")
