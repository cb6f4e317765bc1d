"""TikZ emitter producing a compilable standalone LaTeX document."""

from __future__ import annotations

from ..layout import BODY_FONT, LABEL_FONT, NAME_FONT, PAD, RenderPlan
from .options import EmitOptions, fmt

# Order matters: backslash first so later replacements are not re-escaped.
LATEX_ESCAPES = (
    ("\\", r"\textbackslash{}"),
    ("&", r"\&"),
    ("%", r"\%"),
    ("$", r"\$"),
    ("#", r"\#"),
    ("_", r"\_"),
    ("{", r"\{"),
    ("}", r"\}"),
    ("~", r"\textasciitilde{}"),
    ("^", r"\textasciicircum{}"),
    ("<", r"\textless{}"),
    (">", r"\textgreater{}"),
)

URL_ESCAPES = (("\\", r"\\"), ("%", r"\%"), ("#", r"\#"), ("{", r"\{"), ("}", r"\}"))


def latex_escape(text: str) -> str:
    out = []
    table = dict(LATEX_ESCAPES)
    for ch in text:
        out.append(table.get(ch, ch))
    return "".join(out)


def url_escape(url: str) -> str:
    for raw, repl in URL_ESCAPES:
        url = url.replace(raw, repl)
    return url


def _font(size: float) -> str:
    return rf"\fontsize{{{fmt(size)}}}{{{fmt(size * 1.2)}}}\selectfont"


def emit_tikz(plan: RenderPlan, opts: EmitOptions) -> str:
    color_names: dict[str, str] = {}
    for box in plan.nodes:
        for c in box.fill_stops:
            color_names.setdefault(c, f"mapc{len(color_names)}")

    lines = [
        r"\documentclass[tikz,border=4pt]{standalone}",
        r"\usepackage[T1]{fontenc}",
        r"\usepackage{hyperref}",
    ]
    if opts.title:
        lines.append(rf"% {latex_escape(opts.title)}")
    lines.append(r"\begin{document}")
    for color, name in color_names.items():
        lines.append(rf"\definecolor{{{name}}}{{HTML}}{{{color.lstrip('#').upper()}}}")
    lines.append(
        r"\begin{tikzpicture}[x=1pt, y=1pt, "
        r"mapnode/.style={draw=black!80, rounded corners=3pt, align=left, anchor=center}]"
    )
    if plan.nodes:
        # fix the bounding box to the plan canvas
        lines.append(rf"\path[use as bounding box] (0,0) rectangle ({fmt(plan.width)},{fmt(-plan.height)});")

    for i, box in enumerate(plan.nodes):
        s = box.scale
        names = [color_names[c] for c in box.fill_stops]
        if len(names) == 1:
            fill = f"fill={names[0]}"
        else:
            fill = f"left color={names[0]}, right color={names[1]}"
            if len(names) > 2:
                lines.append(
                    f"% {latex_escape(box.name)}: {len(names)} section colors, "
                    f"only the first two are shaded"
                )
        inner = PAD * s
        style = [
            "mapnode",
            fill,
            f"inner sep={fmt(inner)}pt",
            f"text width={fmt(box.width - 2 * inner)}pt",
            f"minimum height={fmt(box.height)}pt",
        ]
        if opts.highlight == box.name:
            style.append("line width=1.5pt")
        title = rf"\href{{{url_escape(box.wikipedia)}}}{{{_font(NAME_FONT * s)}\textbf{{{latex_escape(box.name)}}}}}"
        text = [title]
        if opts.include_body:
            for line in box.body:
                t = latex_escape(line.text)
                t = rf"\textbf{{{t}}}" if line.header else rf"\hspace*{{0.6em}}{t}"
                text.append(rf"{{{_font(BODY_FONT * s)}{t}}}")
        content = r"\\ ".join(text)
        lines.append(
            rf"\node[{', '.join(style)}] (n{i}) at ({fmt(box.x)},{fmt(-box.y)}) {{{content}}};"
        )

    for e in plan.edges:
        draw = (
            rf"\draw[->, >=stealth] ({fmt(e.start.x)},{fmt(-e.start.y)}) -- "
            rf"({fmt(e.end.x)},{fmt(-e.end.y)})"
        )
        if e.label:
            draw += rf" node[midway, right, font={_font(LABEL_FONT)}\itshape] {{{latex_escape(e.label)}}}"
        lines.append(draw + ";")
    lines.append(r"\end{tikzpicture}")
    lines.append(r"\end{document}")
    return "\n".join(lines) + "\n"
