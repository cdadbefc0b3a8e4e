import itertools

import numpy as np
import pytest

from netdecomp.graph import Graph, generate


def floyd_warshall(g: Graph, members=None):
    """All-pairs hop distances inside the subgraph induced by ``members``."""
    ids = list(range(g.n)) if members is None else sorted(members)
    pos = {v: i for i, v in enumerate(ids)}
    k = len(ids)
    dist = np.full((k, k), np.inf)
    np.fill_diagonal(dist, 0)
    for v in ids:
        for w in g.adjacency[v]:
            if w in pos:
                dist[pos[v], pos[w]] = 1
    for m in range(k):
        dist = np.minimum(dist, dist[:, [m]] + dist[[m], :])
    return ids, dist


@pytest.fixture
def c4():
    return generate("cycle", 4)


@pytest.fixture
def path3():
    return generate("path", 3)


def small_graph_zoo():
    yield "path", generate("path", 9)
    yield "cycle", generate("cycle", 10)
    yield "grid", generate("grid", 0, {"rows": 4, "cols": 5})
    yield "star", generate("star", 8)
    yield "complete", generate("complete", 6)
    yield "hypercube", generate("hypercube", 16)
    yield "tree", generate("random-tree", 15, seed=2)
    yield "gnp", generate("gnp", 30, {"p": 0.12}, seed=5)
    yield "disconnected", Graph.from_edges(7, [(0, 1), (1, 2), (4, 5)])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        passed, detail = results[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
