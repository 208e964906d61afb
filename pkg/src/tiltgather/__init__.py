"""Gathering particles in polyominoes under global tilt moves."""

from .geometry import Polyomino, classify, parse_grid, render_grid
from .dynamics import FT_BLOCK, FT_MERGE, S1_BLOCK, S1_MERGE, apply, step

__version__ = "0.1.0"

__all__ = [
    "Polyomino", "classify", "parse_grid", "render_grid",
    "FT_BLOCK", "FT_MERGE", "S1_BLOCK", "S1_MERGE", "apply", "step",
]
