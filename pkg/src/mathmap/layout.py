"""Layered layout: levels become rows, rows are ordered by barycenter sweeps,
boxes are sized by generality and edges are straight segments."""

from __future__ import annotations

import dataclasses
import textwrap
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .semantic import ResolvedGraph

SHRINK = 0.85
MIN_SCALE = 0.5
SWEEPS = 4

BASE_WIDTH = 200.0
GUTTER = 0.25 * BASE_WIDTH
LAYER_GAP = 60.0
MARGIN = 20.0
PAD = 8.0
TITLE_HEIGHT = 20.0
LINE_HEIGHT = 11.0
WRAP_CHARS = 38

NAME_FONT = 12.0
BODY_FONT = 8.5
LABEL_FONT = 8.0
LABEL_OFFSET = 6.0
CHAR_WIDTH = 0.55  # em fraction used to estimate text extents

CATEGORIES = ("Types", "Functions", "Relations", "Properties")


class Point(NamedTuple):
    x: float
    y: float


class BodyLine(NamedTuple):
    text: str
    header: bool


@dataclass(frozen=True)
class NodeBox:
    name: str
    x: float  # center
    y: float  # center
    width: float
    height: float
    scale: float
    level: int
    fill_stops: tuple[str, ...]
    wikipedia: str
    body: tuple[BodyLine, ...]

    @property
    def left(self) -> float:
        return self.x - self.width / 2

    @property
    def top(self) -> float:
        return self.y - self.height / 2


@dataclass(frozen=True)
class EdgePath:
    src: int
    dst: int
    start: Point
    end: Point
    waypoints: tuple[Point, ...]
    label: Optional[str]
    label_pos: Optional[Point]


@dataclass(frozen=True)
class RenderPlan:
    width: float = 0.0
    height: float = 0.0
    nodes: tuple[NodeBox, ...] = ()
    edges: tuple[EdgePath, ...] = ()


def size_scale(level: int) -> float:
    return max(SHRINK**level, MIN_SCALE)


def size_nodes(graph: ResolvedGraph) -> ResolvedGraph:
    nodes = tuple(dataclasses.replace(n, size_scale=size_scale(n.level)) for n in graph.nodes)
    return dataclasses.replace(graph, nodes=nodes)


def body_lines(structure) -> tuple[BodyLine, ...]:
    """Category headers followed by their wrapped entries."""
    groups = (
        [r.target for r in structure.types],
        structure.functions,
        structure.relations,
        structure.properties,
    )
    out: list[BodyLine] = []
    for header, items in zip(CATEGORIES, groups):
        if not items:
            continue
        out.append(BodyLine(header, True))
        for item in items:
            for chunk in textwrap.wrap(item, WRAP_CHARS, subsequent_indent="  ") or [""]:
                out.append(BodyLine(chunk, False))
    return tuple(out)


def count_crossings(layers: list[list[int]], layer_of: list[int], edges) -> int:
    """Pairs of edges whose segments properly cross when each row is drawn
    at its centered rank positions. Coordinates are doubled to stay integral."""
    xs = {}
    for row, members in enumerate(layers):
        for rank, v in enumerate(members):
            xs[v] = 2 * rank - (len(members) - 1)
    segs = [((xs[u], 2 * layer_of[u]), (xs[v], 2 * layer_of[v]), u, v) for u, v in edges]

    def orient(a, b, c):
        d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (d > 0) - (d < 0)

    total = 0
    for i in range(len(segs)):
        p1, p2, a, b = segs[i]
        for j in range(i + 1, len(segs)):
            q1, q2, c, d = segs[j]
            if {a, b} & {c, d}:
                continue
            o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
            o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
            if o1 * o2 < 0 and o3 * o4 < 0:
                total += 1
    return total


def order_layers(graph: ResolvedGraph) -> list[list[int]]:
    """Rows seeded in name order, then alternating down/up barycenter sweeps.

    A sweep result is adopted only if it does not increase the crossing count.
    """
    names = [n.name for n in graph.nodes]
    levels = [n.level for n in graph.nodes]
    if not names:
        return []
    layers: list[list[int]] = [[] for _ in range(max(levels) + 1)]
    for v in sorted(range(len(names)), key=lambda v: names[v]):
        layers[levels[v]].append(v)
    edges = [(e.src, e.dst) for e in graph.edges]
    preds = graph.predecessors()
    succs = graph.successors()

    best = crossings = count_crossings(layers, levels, edges)
    for sweep in range(SWEEPS):
        downward = sweep % 2 == 0
        neighbours = preds if downward else succs
        rows = range(1, len(layers)) if downward else range(len(layers) - 2, -1, -1)
        candidate = [list(row) for row in layers]
        for r in rows:
            pos = {}
            for row in candidate:
                for rank, v in enumerate(row):
                    pos[v] = rank - (len(row) - 1) / 2

            def bary(v):
                nb = neighbours[v]
                return sum(pos[u] for u in nb) / len(nb) if nb else pos[v]

            candidate[r] = sorted(candidate[r], key=lambda v: (bary(v), names[v]))
        crossings = count_crossings(candidate, levels, edges)
        if crossings <= best:
            layers, best = candidate, crossings
    return layers


def layout(graph: ResolvedGraph, include_body: bool = True) -> RenderPlan:
    """Place a levelled, sized graph. Level 0 is the top row."""
    if not graph.nodes:
        return RenderPlan()
    layers = order_layers(graph)

    dims = []
    bodies = []
    for n in graph.nodes:
        body = body_lines(n.structure)
        bodies.append(body)
        lines = len(body) if include_body else 0
        base_h = 2 * PAD + TITLE_HEIGHT + LINE_HEIGHT * lines
        dims.append((BASE_WIDTH * n.size_scale, base_h * n.size_scale))

    row_widths = [sum(dims[v][0] for v in row) + GUTTER * (len(row) - 1) for row in layers]
    row_heights = [max(dims[v][1] for v in row) for row in layers]
    inner_w = max(row_widths)

    centers: dict[int, Point] = {}
    y = MARGIN
    for row, rw, rh in zip(layers, row_widths, row_heights):
        x = MARGIN + (inner_w - rw) / 2
        for v in row:
            w = dims[v][0]
            centers[v] = Point(x + w / 2, y + rh / 2)
            x += w + GUTTER
        y += rh + LAYER_GAP
    height = y - LAYER_GAP + MARGIN
    width = inner_w + 2 * MARGIN

    boxes = tuple(
        NodeBox(
            name=n.name,
            x=centers[i].x,
            y=centers[i].y,
            width=dims[i][0],
            height=dims[i][1],
            scale=n.size_scale,
            level=n.level,
            fill_stops=n.fill_stops,
            wikipedia=n.structure.wikipedia,
            body=bodies[i],
        )
        for i, n in enumerate(graph.nodes)
    )

    paths = []
    for e in graph.edges:
        a, b = boxes[e.src], boxes[e.dst]
        start = Point(a.x, a.y + a.height / 2)
        end = Point(b.x, b.y - b.height / 2)
        label_pos = None
        if e.label:
            label_pos = Point((start.x + end.x) / 2 + LABEL_OFFSET, (start.y + end.y) / 2)
            width = max(width, label_pos.x + len(e.label) * LABEL_FONT * CHAR_WIDTH + MARGIN)
        paths.append(EdgePath(e.src, e.dst, start, end, (start, end), e.label, label_pos))
    return RenderPlan(width, height, boxes, tuple(paths))
