"""Serializers from a RenderPlan to text formats."""

from .dot import emit_dot
from .html import emit_html
from .options import EXTENSIONS, FORMATS, EmitOptions
from .svg import emit_svg
from .tikz import emit_tikz

EMITTERS = {"svg": emit_svg, "tikz": emit_tikz, "dot": emit_dot, "html": emit_html}


def emit(plan, opts: EmitOptions) -> str:
    return EMITTERS[opts.format](plan, opts)
