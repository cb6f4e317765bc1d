"""Self-contained HTML page: title, structure index, inline SVG map."""

from __future__ import annotations

from xml.sax.saxutils import escape

from ..layout import RenderPlan
from .options import EmitOptions
from .svg import svg_element

STYLE = """\
body { font-family: Helvetica, Arial, sans-serif; margin: 1.5em; color: #222; }
nav ol { columns: 4; font-size: 0.9em; }
nav a { color: #1a4f8b; text-decoration: none; }
main { overflow: auto; border-top: 1px solid #ccc; padding-top: 1em; }
svg a:hover rect { stroke-width: 2.5; }
"""


def emit_html(plan: RenderPlan, opts: EmitOptions) -> str:
    """Index entries link to ``#node-<i>``; node boxes link to their wikipedia page."""
    title = escape(opts.title or "Map of mathematical structures")
    index = [
        f'<li><a href="#node-{i}">{escape(box.name)}</a></li>'
        for i, box in sorted(enumerate(plan.nodes), key=lambda item: item[1].name)
    ]
    parts = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8"/>',
        f"<title>{title}</title>",
        f"<style>\n{STYLE}</style>",
        "</head>",
        "<body>",
        f"<h1>{title}</h1>",
        '<nav id="index">',
        "<ol>",
        *index,
        "</ol>",
        "</nav>",
        '<main id="map">',
        svg_element(plan, opts),
        "</main>",
        "</body>",
        "</html>",
    ]
    return "\n".join(parts) + "\n"
