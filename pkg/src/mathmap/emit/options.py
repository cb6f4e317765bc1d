"""Options shared by the emitters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

FORMATS = ("svg", "tikz", "dot", "html")
EXTENSIONS = {"svg": "svg", "tikz": "tex", "dot": "dot", "html": "html"}


@dataclass(frozen=True)
class EmitOptions:
    format: str = "svg"
    include_body: bool = True
    title: Optional[str] = None
    highlight: Optional[str] = None  # structure name drawn with a heavier outline

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}; expected one of {', '.join(FORMATS)}")


def fmt(value: float) -> str:
    """Fixed two-decimal rendering used by every emitter."""
    return f"{value:.2f}"

