"""Brute-force configuration-space search.

Configurations are sorted tuples of pixel indices. Every search is a plain
BFS in letter order U, D, L, R, so results are reproducible.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .dynamics import FT_BLOCK, FT_MERGE, ModelVariant, apply_idx, check_word, step_idx, to_idx
from .errors import BudgetExceeded, CardinalityMismatch, NotARectangle, PixelOutsidePolyomino
from .geometry import DIRECTIONS, Polyomino, classify

DEFAULT_BUDGET = 2**22
DEFAULT_MAX_REPS = 10**5


@dataclass
class ReachGraph:
    P: Polyomino
    model: ModelVariant
    start: tuple
    visited: dict = field(default_factory=dict)  # conf -> (depth, parent, letter)
    order: list = field(default_factory=list)
    complete: bool = True

    def __len__(self):
        return len(self.visited)

    def word_to(self, conf) -> str:
        out = []
        while True:
            _, parent, a = self.visited[conf]
            if parent is None:
                break
            out.append(a)
            conf = parent
        return "".join(reversed(out))

    def depth(self, conf) -> int:
        return self.visited[conf][0]

    def configurations(self):
        P = self.P
        for conf in self.order:
            yield frozenset(P.pixels[i] for i in conf)


def _bfs(P: Polyomino, start, m: ModelVariant, budget: int,
         goal: Callable | None = None, letters: str = DIRECTIONS):
    g = ReachGraph(P, m, start)
    g.visited[start] = (0, None, None)
    g.order.append(start)
    if goal is not None and goal(start):
        return g, start
    todo = deque([start])
    while todo:
        c = todo.popleft()
        d = g.visited[c][0] + 1
        for a in letters:
            r = step_idx(P, c, a, m)
            if r in g.visited:
                continue
            g.visited[r] = (d, c, a)
            g.order.append(r)
            if goal is not None and goal(r):
                return g, r
            if len(g.visited) > budget:
                raise BudgetExceeded("configuration search", budget)
            todo.append(r)
    return g, None


def explore(P: Polyomino, C, m: ModelVariant = FT_BLOCK, budget: int = DEFAULT_BUDGET) -> ReachGraph:
    """Every configuration reachable from C, with BFS parents."""
    g, _ = _bfs(P, to_idx(P, C), m, budget)
    return g


def sgs_exact(P: Polyomino, C, budget: int = DEFAULT_BUDGET):
    """(length, word) of a shortest gathering sequence for C, or None."""
    start = to_idx(P, C)
    if not start:
        raise ValueError("empty configuration")
    g, hit = _bfs(P, start, FT_MERGE, budget, goal=lambda c: len(c) == 1)
    if hit is None:
        return None
    w = g.word_to(hit)
    return len(w), w


def occupancy(P: Polyomino, C, p, m: ModelVariant = FT_BLOCK, budget: int = DEFAULT_BUDGET,
              witness: bool = False):
    if p not in P.index:
        raise PixelOutsidePolyomino(p)
    t = P.index[p]
    g, hit = _bfs(P, to_idx(P, C), m, budget, goal=lambda c: t in c)
    if not witness:
        return hit is not None
    return None if hit is None else g.word_to(hit)


def shape_reconfiguration(P: Polyomino, C, C2, m: ModelVariant = FT_BLOCK,
                          budget: int = DEFAULT_BUDGET) -> Optional[str]:
    if not m.merge and len(set(C)) != len(set(C2)):
        raise CardinalityMismatch(f"{len(set(C))} particles cannot become {len(set(C2))}")
    target = to_idx(P, C2)
    g, hit = _bfs(P, to_idx(P, C), m, budget, goal=lambda c: c == target)
    return None if hit is None else g.word_to(hit)


def tilt_cover(P: Polyomino, C, S_target, m: ModelVariant = FT_BLOCK,
               budget: int = DEFAULT_BUDGET) -> Optional[str]:
    need = frozenset(to_idx(P, S_target))
    g, hit = _bfs(P, to_idx(P, C), m, budget, goal=lambda c: need.issubset(c))
    return None if hit is None else g.word_to(hit)


def tilt_cover_deterministic(P: Polyomino, C, S_target, cycle: str,
                             m: ModelVariant = FT_BLOCK,
                             max_reps: int = DEFAULT_MAX_REPS) -> Optional[int]:
    """Smallest ell with C . cycle^ell containing S_target; None once the orbit closes."""
    cycle = check_word(cycle)
    if not cycle:
        raise ValueError("empty cycle")
    need = frozenset(to_idx(P, S_target))
    c = to_idx(P, C)
    seen = set()
    for ell in range(max_reps + 1):
        if need.issubset(c):
            return ell
        if c in seen:
            return None
        seen.add(c)
        c = apply_idx(P, c, cycle, m)
    return None


def rectangle_census(P: Polyomino, C, budget: int = DEFAULT_BUDGET) -> int:
    if not classify(P)["rectangle"]:
        raise NotARectangle("census needs a rectangle")
    return len(explore(P, C, FT_BLOCK, budget))


def verify_word(P: Polyomino, C, w: str, m: ModelVariant = FT_MERGE):
    """Configuration reached from C by w, as a frozenset of pixels."""
    out = apply_idx(P, to_idx(P, C), check_word(w), m)
    return frozenset(P.pixels[i] for i in out)
