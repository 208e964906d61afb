"""Transition semantics for the full tilt and single step models.

Public functions take and return pixel sets. The ``*_idx`` kernels work on
sorted tuples of pixel indices and are what the search code uses.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigurationNotInPolyomino, PixelOutsidePolyomino
from .geometry import AXIS, DIRS, OPPOSITE, Polyomino

DIRECTIONS = "UDLR"


@dataclass(frozen=True)
class ModelVariant:
    model: str = "FT"  # "FT" or "S1"
    merge: bool = True

    def __post_init__(self):
        if self.model not in ("FT", "S1"):
            raise ValueError(f"unknown model {self.model!r}")

    def __str__(self):
        return f"{self.model}-{'merge' if self.merge else 'block'}"


FT_MERGE = ModelVariant("FT", True)
FT_BLOCK = ModelVariant("FT", False)
S1_MERGE = ModelVariant("S1", True)
S1_BLOCK = ModelVariant("S1", False)


def variant(model="FT", merge=True) -> ModelVariant:
    return ModelVariant(model.upper(), merge)


def check_word(w: str) -> str:
    w = w.upper()
    for ch in w:
        if ch not in DIRS:
            raise ValueError(f"bad move letter {ch!r}")
    return w


# ---------------------------------------------------------------- index kernels


def _ft_block(P: Polyomino, conf, v):
    if AXIS[v] == "h":
        runs, seg_of = P.row_runs, P.row_of
    else:
        runs, seg_of = P.col_runs, P.col_of
    counts = {}
    for i in conf:
        s = seg_of[i]
        counts[s] = counts.get(s, 0) + 1
    out = []
    low = v in "LD"
    for s, c in counts.items():
        run = runs[s]
        out.extend(run[:c] if low else run[len(run) - c:])
    out.sort()
    return tuple(out)


def _s1_block(P: Polyomino, conf, v):
    # a particle stays iff it and everything between it and the wall is occupied
    horiz = AXIS[v] == "h"
    runs = P.row_runs if horiz else P.col_runs
    seg_of = P.row_of if horiz else P.col_of
    pos = P.seg_pos[0] if horiz else P.seg_pos[1]
    groups = {}
    for i in conf:
        groups.setdefault(seg_of[i], []).append(pos[i])
    out = []
    low = v in "LD"
    for s, ks in groups.items():
        run = runs[s]
        L = len(run)
        ks.sort(reverse=not low)
        packed = 0
        for k in ks:
            d = k if low else L - 1 - k
            if d == packed:
                out.append(run[k])
                packed += 1
            else:
                out.append(run[k - 1] if low else run[k + 1])
    out.sort()
    return tuple(out)


def step_idx(P: Polyomino, conf, v: str, m: ModelVariant = FT_MERGE):
    if m.merge:
        tab = (P.ft_table if m.model == "FT" else P.s1_table)[v]
        return tuple(sorted({tab[i] for i in conf}))
    if m.model == "FT":
        return _ft_block(P, conf, v)
    return _s1_block(P, conf, v)


def apply_idx(P: Polyomino, conf, w: str, m: ModelVariant = FT_MERGE):
    for v in w:
        conf = step_idx(P, conf, v, m)
    return conf


def to_idx(P: Polyomino, C):
    try:
        return tuple(sorted(P.index[p] for p in set(C)))
    except KeyError as e:
        raise ConfigurationNotInPolyomino(f"pixel {e.args[0]} not in polyomino") from None


def from_idx(P: Polyomino, conf) -> frozenset:
    return frozenset(P.pixels[i] for i in conf)


# ---------------------------------------------------------------- public API


def step(P: Polyomino, C, v: str, m: ModelVariant = FT_MERGE) -> frozenset:
    return from_idx(P, step_idx(P, to_idx(P, C), check_word(v), m))


def apply(P: Polyomino, C, w: str, m: ModelVariant = FT_MERGE) -> frozenset:
    """Apply the moves of w from left to right."""
    return from_idx(P, apply_idx(P, to_idx(P, C), check_word(w), m))


def singleton_move(P: Polyomino, p, v: str, model: str = "FT"):
    i = P.index.get(p)
    if i is None:
        raise PixelOutsidePolyomino(p)
    tab = P.ft_table if model == "FT" else P.s1_table
    return P.pixels[tab[v][i]]


def singleton_path(P: Polyomino, p, w: str, model: str = "FT"):
    for v in w:
        p = singleton_move(P, p, v, model)
    return p


def normalize(w: str) -> str:
    """Shorten a full-tilt word by dropping the first of two same-axis moves.

    Repeated moves are idempotent and of two opposite moves only the second
    matters, so the result has alternating axes and the same effect.
    """
    out = []
    for v in check_word(w):
        if out and AXIS[out[-1]] == AXIS[v]:
            out.pop()
        out.append(v)
    return "".join(out)


__all__ = [
    "DIRECTIONS", "DIRS", "OPPOSITE", "ModelVariant", "FT_MERGE", "FT_BLOCK", "S1_MERGE",
    "S1_BLOCK", "variant", "step", "apply", "singleton_move", "singleton_path", "normalize",
    "step_idx", "apply_idx", "to_idx", "from_idx",
]
