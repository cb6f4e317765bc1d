"""Compile catalogs of mathematical structures into layered relationship maps."""

from .graph import FullMap, SectionMap, TopLevelMap, compute_levels, map_suite, neighborhood, select_map, transitive_reduce
from .layout import RenderPlan, layout, size_nodes
from .model import Catalog, ExtensionRef, SectionDecl, StructureDef, catalog_lookup, catalog_stats
from .parser import ParseError, parse_catalog, print_catalog
from .semantic import CatalogError, ResolvedGraph, SemanticError, resolve

__version__ = "0.1.0"
