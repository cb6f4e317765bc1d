"""End-to-end helpers: catalog text -> reduced graph -> plans -> documents."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .emit import EmitOptions, emit
from .graph import compute_levels, map_suite, transitive_reduce
from .layout import RenderPlan, layout, size_nodes
from .model import Catalog
from .parser import parse_catalog
from .semantic import EdgeInfo, ResolvedGraph, resolve


def seed_catalog_path() -> Path:
    return Path(str(resources.files("mathmap") / "data" / "seed.catalog"))


def load_seed() -> Catalog:
    return parse_catalog(seed_catalog_path().read_text(encoding="utf-8"))


@dataclass
class Compiled:
    graph: ResolvedGraph  # reduced, levels filled
    removed: list[EdgeInfo] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def compile_catalog(catalog: Catalog) -> Compiled:
    """Resolve, reduce and level. Raises CatalogError on semantic errors."""
    reduced, removed, warnings = transitive_reduce(resolve(catalog))
    return Compiled(compute_levels(reduced), removed, warnings)


def plan(graph: ResolvedGraph, include_body: bool = True) -> RenderPlan:
    return layout(size_nodes(graph), include_body=include_body)


def render(graph: ResolvedGraph, fmt: str, include_body: bool = True, title=None, highlight=None) -> str:
    opts = EmitOptions(format=fmt, include_body=include_body, title=title, highlight=highlight)
    return emit(plan(graph, include_body), opts)


def suite(catalog: Catalog) -> list[tuple[str, ResolvedGraph]]:
    return map_suite(compile_catalog(catalog).graph)
