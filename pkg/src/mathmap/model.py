"""In-memory catalog model shared by every pipeline stage.

All values are frozen; positions are carried for diagnostics but excluded
from equality so that a printed-and-reparsed catalog compares equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional


class SourcePos(NamedTuple):
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


NO_POS = SourcePos(0, 0)


@dataclass(frozen=True)
class SectionDecl:
    id: str
    color: str
    merge_with: Optional[str] = None
    source_pos: SourcePos = field(default=NO_POS, compare=False, repr=False)


@dataclass(frozen=True)
class ExtensionRef:
    target: str
    label: Optional[str] = None
    keep: bool = False


@dataclass(frozen=True)
class StructureDef:
    name: str
    sections: tuple[str, ...]
    types: tuple[ExtensionRef, ...] = ()
    functions: tuple[str, ...] = ()
    relations: tuple[str, ...] = ()
    properties: tuple[str, ...] = ()
    wikipedia: str = ""
    representative: bool = False
    source_pos: SourcePos = field(default=NO_POS, compare=False, repr=False)

    @property
    def is_multi_section(self) -> bool:
        return len(self.sections) > 1


@dataclass(frozen=True)
class Catalog:
    sections: tuple[SectionDecl, ...] = ()
    structures: tuple[StructureDef, ...] = ()

    def section(self, section_id: str) -> Optional[SectionDecl]:
        for decl in self.sections:
            if decl.id == section_id:
                return decl
        return None


class CatalogStats(NamedTuple):
    section_count: int
    structure_count: int
    edge_count: int


def catalog_lookup(catalog: Catalog, name: str) -> Optional[StructureDef]:
    """Return the structure named exactly ``name``, or None.

    A name that is declared more than once does not resolve; duplicate
    declarations are an authoring error reported by the analyzer.
    """
    found = [s for s in catalog.structures if s.name == name]
    return found[0] if len(found) == 1 else None


def catalog_stats(catalog: Catalog) -> CatalogStats:
    return CatalogStats(
        section_count=len(catalog.sections),
        structure_count=len(catalog.structures),
        edge_count=sum(len(s.types) for s in catalog.structures),
    )
