from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest

from mathmap.model import StructureDef
from mathmap.parser import parse_catalog
from mathmap.pipeline import seed_catalog_path
from mathmap.semantic import EdgeInfo, NodeInfo, ResolvedGraph

SEED_PATH = seed_catalog_path()


@pytest.fixture(scope="session")
def seed_text() -> str:
    return SEED_PATH.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def seed_catalog(seed_text):
    return parse_catalog(seed_text)


def make_graph(names, edges, keep=(), labels=None) -> ResolvedGraph:
    """Build a ResolvedGraph directly from names and (src, dst) index pairs."""
    labels = labels or {}
    nodes = tuple(
        NodeInfo(StructureDef(name=n, sections=("s",), wikipedia=f"https://example.org/{i}"), ("#888888",))
        for i, n in enumerate(names)
    )
    es = tuple(EdgeInfo(u, v, labels.get((u, v)), (u, v) in keep) for u, v in edges)
    return ResolvedGraph(nodes, es, {"s": "#888888"})


def random_dag(rng: random.Random, max_nodes: int = 12, density: float | None = None):
    """Random DAG over a shuffled topological order, random keep flags."""
    n = rng.randint(1, max_nodes)
    p = rng.random() if density is None else density
    order = list(range(n))
    rng.shuffle(order)
    edges = [
        (order[i], order[j])
        for i, j in itertools.combinations(range(n), 2)
        if rng.random() < p
    ]
    rng.shuffle(edges)
    keep = {e for e in edges if rng.random() < 0.2}
    names = [f"N{i:02d}" for i in range(n)]
    return make_graph(names, edges, keep)


def closure(n: int, edges) -> list[list[bool]]:
    """Brute-force transitive closure (Floyd-Warshall on booleans), reflexive."""
    r = [[i == j for j in range(n)] for i in range(n)]
    for u, v in edges:
        r[u][v] = True
    for k in range(n):
        for i in range(n):
            if r[i][k]:
                for j in range(n):
                    if r[k][j]:
                        r[i][j] = True
    return r


def all_paths_longest(n: int, edges) -> list[int]:
    """Longest path ending at each node by enumerating every path (tiny graphs only)."""
    succ = {i: [v for u, v in edges if u == i] for i in range(n)}
    best = [0] * n

    def walk(v, length):
        best[v] = max(best[v], length)
        for w in succ[v]:
            walk(w, length + 1)

    for s in range(n):
        walk(s, 0)
    return best


def edge_pairs(graph) -> list[tuple[int, int]]:
    return [(e.src, e.dst) for e in graph.edges]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
