"""SVG emitter. This is the reference rendering; the HTML page embeds it."""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from ..layout import BODY_FONT, LABEL_FONT, LINE_HEIGHT, NAME_FONT, PAD, TITLE_HEIGHT, RenderPlan
from .options import EmitOptions, fmt

STROKE = "#333333"


def gradient_stops(colors) -> list[tuple[str, str]]:
    """Evenly spaced (offset, color) pairs in declaration order."""
    n = len(colors)
    return [(f"{round(100 * k / (n - 1), 2):g}%", c) for k, c in enumerate(colors)]


def _node(i: int, box, opts: EmitOptions) -> list[str]:
    s = box.scale
    fill = box.fill_stops[0] if len(box.fill_stops) == 1 else f"url(#grad-{i})"
    stroke_w = 3 if opts.highlight == box.name else 1
    out = [
        f"<a href={quoteattr(box.wikipedia)}>",
        f'<g class="node" id="node-{i}">',
        f'<title>{escape(box.name)}</title>',
        f'<rect x="{fmt(box.left)}" y="{fmt(box.top)}" width="{fmt(box.width)}" '
        f'height="{fmt(box.height)}" rx="{fmt(6 * s)}" fill="{fill}" stroke="{STROKE}" '
        f'stroke-width="{stroke_w}"/>',
    ]
    if opts.include_body and box.body:
        name_y = box.top + (PAD + TITLE_HEIGHT * 0.7) * s
    else:
        name_y = box.y + NAME_FONT * s * 0.35
    out.append(
        f'<text x="{fmt(box.x)}" y="{fmt(name_y)}" text-anchor="middle" '
        f'font-size="{fmt(NAME_FONT * s)}" font-weight="bold">{escape(box.name)}</text>'
    )
    if opts.include_body:
        x = box.left + PAD * s
        for k, line in enumerate(box.body):
            y = box.top + (PAD + TITLE_HEIGHT + LINE_HEIGHT * (k + 0.8)) * s
            weight = ' font-weight="bold"' if line.header else ""
            out.append(
                f'<text x="{fmt(x)}" y="{fmt(y)}" font-size="{fmt(BODY_FONT * s)}"{weight} '
                f'xml:space="preserve">{escape(line.text)}</text>'
            )
    out.append("</g>")
    out.append("</a>")
    return out


def svg_element(plan: RenderPlan, opts: EmitOptions) -> str:
    w, h = fmt(plan.width), fmt(plan.height)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}" font-family="Helvetica, Arial, sans-serif">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="8" '
        'markerHeight="8" orient="auto-start-reverse">'
        f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{STROKE}"/></marker>',
    ]
    for i, box in enumerate(plan.nodes):
        if len(box.fill_stops) < 2:
            continue
        lines.append(f'<linearGradient id="grad-{i}" x1="0%" y1="0%" x2="100%" y2="0%">')
        for offset, color in gradient_stops(box.fill_stops):
            lines.append(f'<stop offset="{offset}" stop-color="{color}"/>')
        lines.append("</linearGradient>")
    lines.append("</defs>")
    if opts.title:
        lines.append(f"<title>{escape(opts.title)}</title>")

    lines.append('<g class="edges">')
    for e in plan.edges:
        lines.append(
            f'<line x1="{fmt(e.start.x)}" y1="{fmt(e.start.y)}" x2="{fmt(e.end.x)}" '
            f'y2="{fmt(e.end.y)}" stroke="{STROKE}" stroke-width="1" marker-end="url(#arrow)"/>'
        )
        if e.label:
            lines.append(
                f'<text class="edge-label" x="{fmt(e.label_pos.x)}" y="{fmt(e.label_pos.y)}" '
                f'font-size="{fmt(LABEL_FONT)}" font-style="italic">{escape(e.label)}</text>'
            )
    lines.append("</g>")

    lines.append('<g class="nodes">')
    for i, box in enumerate(plan.nodes):
        lines.extend(_node(i, box, opts))
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines)


def emit_svg(plan: RenderPlan, opts: EmitOptions) -> str:
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + svg_element(plan, opts) + "\n"
