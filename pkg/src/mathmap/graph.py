"""Graph disciplines applied to a resolved catalog: transitive reduction,
hierarchy levels, map selection and the standard map suite."""

from __future__ import annotations

import dataclasses
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Union

from .semantic import EdgeInfo, ResolvedGraph, merge_partners


class GraphCycleError(RuntimeError):
    """Internal error: a transform received a cyclic graph."""


class UnknownSectionError(KeyError):
    pass


class UnknownStructureError(KeyError):
    pass


@dataclass(frozen=True)
class SectionMap:
    section: str


@dataclass(frozen=True)
class FullMap:
    pass


@dataclass(frozen=True)
class TopLevelMap:
    pass


MapSpec = Union[SectionMap, FullMap, TopLevelMap]


def topological_order(graph: ResolvedGraph) -> list[int]:
    """Kahn's algorithm, smallest index first. Raises GraphCycleError."""
    succ = graph.successors()
    indeg = [0] * len(graph.nodes)
    for e in graph.edges:
        indeg[e.dst] += 1
    ready = deque(i for i, d in enumerate(indeg) if d == 0)
    order = []
    while ready:
        v = ready.popleft()
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    if len(order) != len(graph.nodes):
        raise GraphCycleError("extension graph contains a cycle")
    return order


def reachability(graph: ResolvedGraph) -> list[int]:
    """Bitmask per node of every node reachable from it (itself included)."""
    succ = graph.successors()
    reach = [1 << i for i in range(len(graph.nodes))]
    for v in reversed(topological_order(graph)):
        for w in succ[v]:
            reach[v] |= reach[w]
    return reach


def transitive_reduce(graph: ResolvedGraph) -> tuple[ResolvedGraph, list[EdgeInfo], list[str]]:
    """Drop every edge implied by a longer path, unless it is keep-flagged.

    Returns the reduced graph, the removed edges and one warning per removed
    edge that carried a label.
    """
    reach = reachability(graph)
    succ = graph.successors()
    kept, removed, warnings = [], [], []
    for e in graph.edges:
        if not e.keep and any(w != e.dst and reach[w] >> e.dst & 1 for w in succ[e.src]):
            removed.append(e)
            if e.label:
                src, dst = graph.nodes[e.src].name, graph.nodes[e.dst].name
                warnings.append(
                    f"redundant edge {src!r} -> {dst!r} removed; its label {e.label!r} is discarded"
                )
        else:
            kept.append(e)
    return dataclasses.replace(graph, edges=tuple(kept)), removed, warnings


def compute_levels(graph: ResolvedGraph) -> ResolvedGraph:
    """Level = length of the longest path from any source node."""
    succ = graph.successors()
    level = [0] * len(graph.nodes)
    for v in topological_order(graph):
        for w in succ[v]:
            level[w] = max(level[w], level[v] + 1)
    nodes = tuple(dataclasses.replace(n, level=lv) for n, lv in zip(graph.nodes, level))
    return dataclasses.replace(graph, nodes=nodes)


def induced_subgraph(graph: ResolvedGraph, keep: Iterable[int]) -> ResolvedGraph:
    """Nodes in original order, edges with both ends kept, levels recomputed."""
    selected = sorted(set(keep))
    remap = {old: new for new, old in enumerate(selected)}
    nodes = tuple(graph.nodes[i] for i in selected)
    edges = tuple(
        dataclasses.replace(e, src=remap[e.src], dst=remap[e.dst])
        for e in graph.edges
        if e.src in remap and e.dst in remap
    )
    return compute_levels(dataclasses.replace(graph, nodes=nodes, edges=edges))


def select_map(graph: ResolvedGraph, spec: MapSpec) -> ResolvedGraph:
    if isinstance(spec, FullMap):
        return induced_subgraph(graph, range(len(graph.nodes)))
    if isinstance(spec, TopLevelMap):
        return induced_subgraph(
            graph, (i for i, n in enumerate(graph.nodes) if n.structure.representative)
        )
    if spec.section not in {s.id for s in graph.sections}:
        raise UnknownSectionError(spec.section)
    wanted = {spec.section}
    partner = merge_partners(graph.sections).get(spec.section)
    if partner is not None:
        wanted.add(partner)
    return induced_subgraph(
        graph, (i for i, n in enumerate(graph.nodes) if wanted & set(n.structure.sections))
    )


def dangling_parents(full: ResolvedGraph, sub: ResolvedGraph) -> list[tuple[str, str]]:
    """(child, parent) pairs where the child is in ``sub`` but its parent is not."""
    inside = {n.name for n in sub.nodes}
    out = []
    for e in full.edges:
        child, parent = full.nodes[e.dst].name, full.nodes[e.src].name
        if child in inside and parent not in inside:
            out.append((child, parent))
    return out


def map_suite(graph: ResolvedGraph) -> list[tuple[str, ResolvedGraph]]:
    """Section maps (merged pairs combined), then ``all``, then ``top``."""
    partner = merge_partners(graph.sections)
    suite = []
    done = set()
    for sec in graph.sections:
        if sec.id in done:
            continue
        done.add(sec.id)
        other = partner.get(sec.id)
        if other is None:
            name = sec.id
        else:
            done.add(other)
            first, second = (sec.id, other) if _declares(graph, sec.id, other) else (other, sec.id)
            name = f"{first}_{second}"
        suite.append((name, select_map(graph, SectionMap(sec.id))))
    suite.append(("all", select_map(graph, FullMap())))
    suite.append(("top", select_map(graph, TopLevelMap())))
    return suite


def _declares(graph: ResolvedGraph, a: str, b: str) -> bool:
    """True when ``a`` carries the merge-with clause naming ``b``."""
    for sec in graph.sections:
        if sec.id == a:
            return sec.merge_with == b
    return False


def neighborhood(graph: ResolvedGraph, name: str, radius: int) -> ResolvedGraph:
    """Nodes within undirected distance ``radius`` of ``name``."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    start = graph.index_of(name)
    if start is None:
        raise UnknownStructureError(name)
    adj: list[list[int]] = [[] for _ in graph.nodes]
    for e in graph.edges:
        adj[e.src].append(e.dst)
        adj[e.dst].append(e.src)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if dist[v] == radius:
            continue
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return induced_subgraph(graph, dist)
