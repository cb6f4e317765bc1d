"""Graphviz DOT emitter with pinned positions from the plan."""

from __future__ import annotations

from ..layout import RenderPlan
from .options import EmitOptions, fmt

POINTS_PER_INCH = 72.0


def dot_quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def _label(box, opts: EmitOptions) -> str:
    if not opts.include_body or not box.body:
        return dot_quote(box.name)
    # \l left-justifies each line in graphviz; escape the text before adding it
    rows = [box.name] + [("" if line.header else "  ") + line.text for line in box.body]
    body = "".join(r.replace("\\", "\\\\").replace('"', '\\"') + "\\l" for r in rows)
    return f'"{body}"'


def emit_dot(plan: RenderPlan, opts: EmitOptions) -> str:
    lines = [f"digraph {dot_quote(opts.title or 'map')} {{"]
    if plan.nodes:
        lines.append(
            f'  graph [splines=line, outputorder=edgesfirst, bb="0,0,{fmt(plan.width)},{fmt(plan.height)}"];'
        )
        lines.append('  node [shape=box, style="rounded,filled", fontname="Helvetica"];')
        lines.append('  edge [fontname="Helvetica", fontsize=8];')
    for box in plan.nodes:
        attrs = [
            f"label={_label(box, opts)}",
            f'pos="{fmt(box.x)},{fmt(plan.height - box.y)}!"',
            "pin=true",
            f"width={fmt(box.width / POINTS_PER_INCH)}",
            f"height={fmt(box.height / POINTS_PER_INCH)}",
            "fixedsize=true",
            f"fontsize={fmt(12 * box.scale)}",
            f"fillcolor={dot_quote(':'.join(box.fill_stops))}",
            f"URL={dot_quote(box.wikipedia)}",
        ]
        if len(box.fill_stops) > 1:
            attrs.append("gradientangle=0")
        if opts.highlight == box.name:
            attrs.append("penwidth=3")
        lines.append(f"  {dot_quote(box.name)} [{', '.join(attrs)}];")
    for e in plan.edges:
        src, dst = plan.nodes[e.src].name, plan.nodes[e.dst].name
        attr = f" [label={dot_quote(e.label)}]" if e.label else ""
        lines.append(f"  {dot_quote(src)} -> {dot_quote(dst)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
