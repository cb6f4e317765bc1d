"""Name resolution and validation: Catalog -> ResolvedGraph."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .model import Catalog, SectionDecl, SourcePos, StructureDef


class ErrorKind(str, enum.Enum):
    UNRESOLVED_TARGET = "UnresolvedTarget"
    DUPLICATE_NAME = "DuplicateName"
    DUPLICATE_SECTION = "DuplicateSection"
    UNKNOWN_SECTION = "UnknownSection"
    CYCLE = "Cycle"
    SELF_REFERENCE = "SelfReference"
    BAD_MERGE = "BadMerge"


@dataclass(frozen=True)
class SemanticError:
    kind: ErrorKind
    offender: tuple[str, ...]
    source_pos: SourcePos
    message: str
    cycle_path: tuple[str, ...] = ()

    def format(self, filename: str = "<input>") -> str:
        line, col = self.source_pos
        return f"{filename}:{line}:{col}: error[{self.kind.value}]: {self.message}"


class CatalogError(Exception):
    """Raised by :func:`resolve` with every semantic error found."""

    def __init__(self, errors: list[SemanticError]):
        super().__init__(f"{len(errors)} semantic error(s)")
        self.errors = errors


@dataclass(frozen=True)
class NodeInfo:
    structure: StructureDef
    fill_stops: tuple[str, ...]
    level: int = 0
    size_scale: float = 1.0

    @property
    def name(self) -> str:
        return self.structure.name


@dataclass(frozen=True)
class EdgeInfo:
    """An extension edge from the more general structure to the one extending it."""

    src: int
    dst: int
    label: Optional[str] = None
    keep: bool = False


@dataclass(frozen=True)
class ResolvedGraph:
    nodes: tuple[NodeInfo, ...] = ()
    edges: tuple[EdgeInfo, ...] = ()
    section_palette: dict = field(default_factory=dict, compare=True, hash=False)
    sections: tuple[SectionDecl, ...] = ()

    def index_of(self, name: str) -> Optional[int]:
        for i, node in enumerate(self.nodes):
            if node.name == name:
                return i
        return None

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.nodes]
        for e in self.edges:
            out[e.src].append(e.dst)
        return out

    def predecessors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.nodes]
        for e in self.edges:
            out[e.dst].append(e.src)
        return out


def _strongly_connected(n: int, succ: list[list[int]]) -> list[list[int]]:
    # iterative Tarjan
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _cycle_witness(comp: list[int], names: list[str], extends: list[list[int]]) -> list[str]:
    """Shortest cycle through the least-named member, following 'extends' links."""
    members = set(comp)
    start = min(comp, key=lambda i: names[i])
    parent: dict[int, int] = {}
    queue = deque([start])
    seen = {start}
    while queue:
        v = queue.popleft()
        for w in sorted(extends[v], key=lambda i: names[i]):
            if w not in members:
                continue
            if w == start:
                path = [v]
                while path[-1] != start:
                    path.append(parent[path[-1]])
                path.reverse()
                return [names[i] for i in path] + [names[start]]
            if w not in seen:
                seen.add(w)
                parent[w] = v
                queue.append(w)
    raise AssertionError("component has no cycle")


def resolve(catalog: Catalog) -> ResolvedGraph:
    """Validate ``catalog`` and build its extension graph.

    Every ``types`` reference becomes an edge from the referenced (more
    general) structure to the declaring one. All errors are collected and
    raised together as a :class:`CatalogError`.
    """
    errors: list[SemanticError] = []

    declared: dict[str, SectionDecl] = {}
    for sec in catalog.sections:
        if sec.id in declared:
            errors.append(SemanticError(
                ErrorKind.DUPLICATE_SECTION, (sec.id,), sec.source_pos,
                f"section {sec.id!r} is already declared at line {declared[sec.id].source_pos.line}"))
        else:
            declared[sec.id] = sec
    for sec in catalog.sections:
        if sec.merge_with is None:
            continue
        if sec.merge_with == sec.id:
            errors.append(SemanticError(
                ErrorKind.BAD_MERGE, (sec.id,), sec.source_pos,
                f"section {sec.id!r} cannot merge with itself"))
        elif sec.merge_with not in declared:
            errors.append(SemanticError(
                ErrorKind.BAD_MERGE, (sec.id, sec.merge_with), sec.source_pos,
                f"section {sec.id!r} merges with undeclared section {sec.merge_with!r}"))
    errors.extend(_merge_conflicts(catalog.sections, declared))

    palette = {sid: sec.color.upper() for sid, sec in declared.items()}

    index: dict[str, int] = {}
    kept: list[StructureDef] = []
    for s in catalog.structures:
        if s.name in index:
            first = kept[index[s.name]]
            errors.append(SemanticError(
                ErrorKind.DUPLICATE_NAME, (s.name,), s.source_pos,
                f"structure {s.name!r} is already declared at line {first.source_pos.line}"))
            continue
        index[s.name] = len(kept)
        kept.append(s)

    edge_map: dict[tuple[int, int], list] = {}
    for s in catalog.structures:
        own = index[s.name]
        is_dup = kept[own] is not s
        if not is_dup:
            seen_sections = set()
            for sid in s.sections:
                if sid in seen_sections:
                    errors.append(SemanticError(
                        ErrorKind.DUPLICATE_SECTION, (s.name, sid), s.source_pos,
                        f"structure {s.name!r} lists section {sid!r} more than once"))
                seen_sections.add(sid)
                if sid not in declared:
                    errors.append(SemanticError(
                        ErrorKind.UNKNOWN_SECTION, (s.name, sid), s.source_pos,
                        f"structure {s.name!r} is in undeclared section {sid!r}"))
        for ref in s.types:
            if ref.target == s.name:
                errors.append(SemanticError(
                    ErrorKind.SELF_REFERENCE, (s.name,), s.source_pos,
                    f"structure {s.name!r} lists itself in types"))
            elif ref.target not in index:
                errors.append(SemanticError(
                    ErrorKind.UNRESOLVED_TARGET, (ref.target,), s.source_pos,
                    f"structure {s.name!r} extends undefined structure {ref.target!r}"))
            elif not is_dup:
                key = (index[ref.target], own)
                if key in edge_map:
                    prev = edge_map[key]
                    prev[1] = prev[1] or ref.keep
                    if prev[0] is None:
                        prev[0] = ref.label
                else:
                    edge_map[key] = [ref.label, ref.keep]

    edges = tuple(EdgeInfo(u, v, label, keep) for (u, v), (label, keep) in edge_map.items())

    names = [s.name for s in kept]
    extends: list[list[int]] = [[] for _ in kept]
    succ: list[list[int]] = [[] for _ in kept]
    for e in edges:
        extends[e.dst].append(e.src)
        succ[e.src].append(e.dst)
    for comp in _strongly_connected(len(kept), succ):
        if len(comp) < 2:
            continue
        path = _cycle_witness(comp, names, extends)
        least = kept[index[path[0]]]
        errors.append(SemanticError(
            ErrorKind.CYCLE, tuple(sorted(names[i] for i in comp)), least.source_pos,
            "extension cycle: " + " -> ".join(path), cycle_path=tuple(path)))

    if errors:
        errors.sort(key=lambda e: (e.source_pos.line, e.source_pos.column))
        raise CatalogError(errors)

    nodes = tuple(
        NodeInfo(s, tuple(palette[sid] for sid in s.sections)) for s in kept
    )
    return ResolvedGraph(nodes, edges, palette, tuple(declared.values()))


def _merge_conflicts(sections, declared) -> list[SemanticError]:
    """Each section may belong to at most one merged pair."""
    errors = []
    partner: dict[str, str] = {}
    for sec in sections:
        other = sec.merge_with
        if other is None or other == sec.id or other not in declared:
            continue
        if declared.get(sec.id) is not sec:
            continue
        a, b = sec.id, other
        if partner.get(a) == b and partner.get(b) == a:
            continue
        clash = [x for x in (a, b) if x in partner]
        if clash:
            errors.append(SemanticError(
                ErrorKind.BAD_MERGE, (a, b), sec.source_pos,
                f"section {clash[0]!r} is already merged with {partner[clash[0]]!r}"))
            continue
        partner[a] = b
        partner[b] = a
    return errors


def merge_partners(sections) -> dict[str, str]:
    """Map each merged section id to its partner (valid catalogs only)."""
    ids = {s.id for s in sections}
    partner: dict[str, str] = {}
    for sec in sections:
        if sec.merge_with and sec.merge_with != sec.id and sec.merge_with in ids:
            partner.setdefault(sec.id, sec.merge_with)
            partner.setdefault(sec.merge_with, sec.id)
    return partner

