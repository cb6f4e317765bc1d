"""Command-line entry point: ``mathmap {validate,render,query,stats}``.

Exit codes: 0 success, 1 catalog error (parse or semantic), 2 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import pipeline
from .emit import EXTENSIONS, FORMATS, EmitOptions, emit
from .graph import (
    FullMap,
    SectionMap,
    TopLevelMap,
    UnknownSectionError,
    UnknownStructureError,
    dangling_parents,
    map_suite,
    neighborhood,
    select_map,
)
from .model import catalog_stats
from .parser import ParseError, parse_catalog
from .semantic import CatalogError

EXIT_OK, EXIT_CATALOG, EXIT_IO = 0, 1, 2


@dataclass
class CliConfig:
    command: str
    input_path: Path
    out_dir: Optional[Path] = None
    formats: tuple[str, ...] = ("svg", "html")
    map: str = "suite"
    query_name: Optional[str] = None
    radius: int = 1
    outline: bool = False


class _Failure(Exception):
    def __init__(self, code: int, messages: list[str]):
        self.code = code
        self.messages = messages


def _err(*lines: str) -> None:
    for line in lines:
        print(line, file=sys.stderr)


def _load(config: CliConfig):
    path = config.input_path
    try:
        source = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _Failure(EXIT_IO, [f"error: cannot read {path}: {exc}"])
    try:
        catalog = parse_catalog(source)
    except ParseError as exc:
        raise _Failure(EXIT_CATALOG, [exc.format(str(path))])
    try:
        compiled = pipeline.compile_catalog(catalog)
    except CatalogError as exc:
        raise _Failure(EXIT_CATALOG, [e.format(str(path)) for e in exc.errors])
    _err(*(f"warning: {w}" for w in compiled.warnings))
    return catalog, compiled


def _ok_line(catalog) -> str:
    stats = catalog_stats(catalog)
    return (
        f"OK: {stats.structure_count} structures, {stats.edge_count} edges, "
        f"{stats.section_count} sections"
    )


def _validate(config: CliConfig) -> int:
    catalog, _ = _load(config)
    print(_ok_line(catalog))
    return EXIT_OK


def _stats(config: CliConfig) -> int:
    catalog, compiled = _load(config)
    print(_ok_line(catalog))
    if catalog.sections:
        print("sections:")
        for sec in catalog.sections:
            count = sum(sec.id in s.sections for s in catalog.structures)
            print(f"  {sec.id}\t{count}")
    levels = Counter(n.level for n in compiled.graph.nodes)
    if levels:
        print("levels:")
        for level in sorted(levels):
            print(f"  {level}\t{levels[level]}")
    return EXIT_OK


def _select(graph, selector: str):
    if selector == "suite":
        return map_suite(graph)
    if selector == "all":
        return [("all", select_map(graph, FullMap()))]
    if selector == "top":
        return [("top", select_map(graph, TopLevelMap()))]
    try:
        return [(selector, select_map(graph, SectionMap(selector)))]
    except UnknownSectionError:
        raise _Failure(EXIT_CATALOG, [f"error[UnknownSection]: no section named {selector!r}"])


def _write_atomic(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _render(config: CliConfig) -> int:
    _, compiled = _load(config)
    maps = _select(compiled.graph, config.map)
    include_body = not config.outline
    outputs = []
    for name, graph in maps:
        missing = dangling_parents(compiled.graph, graph)
        if missing and name != "all":
            parents = sorted({p for _, p in missing})
            _err(f"note: {name}: {len(missing)} extension(s) from outside the map ({', '.join(parents)})")
        plan = pipeline.plan(graph, include_body)
        for fmt in config.formats:
            text = emit(plan, EmitOptions(fmt, include_body, title=name))
            outputs.append((name, fmt, f"{name}.{EXTENSIONS[fmt]}", text))

    out_dir = config.out_dir
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for _, _, filename, text in outputs:
            _write_atomic(out_dir / filename, text)
    except OSError as exc:
        raise _Failure(EXIT_IO, [f"error: cannot write to {out_dir}: {exc}"])
    for name, fmt, filename, _ in outputs:
        print(f"{name}\t{fmt}\t{filename}")
    return EXIT_OK


def _query(config: CliConfig) -> int:
    _, compiled = _load(config)
    try:
        sub = neighborhood(compiled.graph, config.query_name, config.radius)
    except UnknownStructureError:
        raise _Failure(EXIT_CATALOG, [f"error[UnknownStructure]: no structure named {config.query_name!r}"])
    sys.stdout.write(
        pipeline.render(
            sub, "dot", include_body=not config.outline,
            title=f"{config.query_name} (radius {config.radius})",
            highlight=config.query_name,
        )
    )
    return EXIT_OK


COMMANDS = {"validate": _validate, "render": _render, "query": _query, "stats": _stats}


def run(config: CliConfig) -> int:
    try:
        return COMMANDS[config.command](config)
    except _Failure as failure:
        _err(*failure.messages)
        return failure.code


def _formats(value: str) -> tuple[str, ...]:
    items = tuple(dict.fromkeys(v.strip() for v in value.split(",") if v.strip()))
    bad = [v for v in items if v not in FORMATS]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"formats must be a non-empty subset of {','.join(FORMATS)}")
    return items


def _radius(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("radius must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mathmap", description="Compile a catalog of mathematical structures into relationship maps."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, default=None,
                        help="catalog file (default: the bundled seed catalog)")
    common.add_argument("--outline", action="store_true", help="name-only nodes")

    sub.add_parser("validate", parents=[common], help="parse and check a catalog")
    sub.add_parser("stats", parents=[common], help="print catalog statistics")
    render = sub.add_parser("render", parents=[common], help="write maps to files")
    render.add_argument("--out-dir", type=Path, default=Path("maps"))
    render.add_argument("--formats", type=_formats, default=("svg", "html"))
    render.add_argument("--map", default="suite", help="suite, all, top, or a section id")
    query = sub.add_parser("query", parents=[common], help="print a structure's neighborhood as DOT")
    query.add_argument("--name", required=True)
    query.add_argument("--radius", type=_radius, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = CliConfig(
        command=args.command,
        input_path=args.input or pipeline.seed_catalog_path(),
        out_dir=getattr(args, "out_dir", None),
        formats=getattr(args, "formats", ("svg", "html")),
        map=getattr(args, "map", "suite"),
        query_name=getattr(args, "name", None),
        radius=getattr(args, "radius", 1),
        outline=args.outline,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
