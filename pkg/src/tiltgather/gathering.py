"""Gathering algorithms for the full tilt and single step models."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .automata import (
    PairAutomaton,
    build_s1_automaton,
    build_tilt_automaton,
    greedy_merge,
    synchronizing_word,
)
from .dynamics import FT_MERGE, S1_MERGE, ModelVariant, apply_idx, normalize, to_idx
from .errors import BudgetExceeded, NotASimpleMaze, NotGatherable, PixelOutsidePolyomino
from .geometry import (
    DEFAULT_BUDGET,
    AXIS,
    Boundary,
    Polyomino,
    classify,
    materialize,
    pixel_count,
    project,
    side_index,
)
from . import oracle


@dataclass(frozen=True)
class GatherResult:
    sequence: str
    target: tuple
    model: ModelVariant = FT_MERGE

    def __len__(self):
        return len(self.sequence)


def _as_boundary(P) -> Boundary:
    return P.boundary if isinstance(P, Polyomino) else P


def _check_on(P: Polyomino, w: str, m: ModelVariant, C=None):
    conf = tuple(range(P.N)) if C is None else to_idx(P, C)
    out = apply_idx(P, conf, w, m)
    if len(out) != 1:
        raise AssertionError(f"word {w!r} leaves {len(out)} particles")
    return P.pixels[out[0]]


# ---------------------------------------------------------------- full gathering


@dataclass
class _Plan:
    word: list
    helper_rounds: int
    after_helpers: frozenset


def _algorithm1(boundary: Boundary):
    T = build_tilt_automaton(boundary)
    A = T.automaton
    pa = PairAutomaton(A)
    if not pa.mergeable_all():
        return T, None
    helpers = {i for i, p in enumerate(T.pixels) if p in T.helpers}
    w = ["D", "L"]
    X = set(range(A.n))
    rounds = 0
    while X & helpers:
        w += ["D", "L"]
        X = {A.run(q, "DL") for q in X}
        rounds += 1
        if rounds > A.n:
            raise AssertionError("helper elimination did not terminate")
    after = frozenset(T.pixels[q] for q in X)
    rest = greedy_merge(A, pa, X)
    return T, _Plan(w + rest, rounds, after)


def full_gathering(P, budget: int = DEFAULT_BUDGET) -> Optional[GatherResult]:
    """Gathering sequence for the whole polyomino built from its boundary, or None."""
    boundary = _as_boundary(P)
    if pixel_count(boundary) == 1:
        return GatherResult("", materialize(boundary).pixels[0], FT_MERGE)
    T, plan = _algorithm1(boundary)
    if plan is None:
        return None
    w = normalize("".join(plan.word))
    # check on the significant pixels, and on every pixel when affordable
    ends = set()
    for p in T.pixels:
        for v in w:
            p = project(boundary, p, v)
        ends.add(p)
    if len(ends) != 1:
        raise AssertionError("Algorithm 1 output does not gather the significant pixels")
    target = ends.pop()
    if isinstance(P, Polyomino):
        dense = P
    elif pixel_count(boundary) <= budget:
        dense = materialize(boundary, budget)
    else:
        dense = None
    if dense is not None and _check_on(dense, w, FT_MERGE) != target:
        raise AssertionError("Algorithm 1 output does not gather V")
    return GatherResult(w, target, FT_MERGE)


def helper_elimination(P):
    """(rounds, X) after the helper-removal loop of Algorithm 1."""
    T, plan = _algorithm1(_as_boundary(P))
    if plan is None:
        return None
    return plan.helper_rounds, plan.after_helpers


def is_gatherable(P) -> bool:
    T = build_tilt_automaton(_as_boundary(P))
    if T.n <= 1:
        return True
    return PairAutomaton(T.automaton).mergeable_all()


def gather_at_pixel(P, p, budget: int = DEFAULT_BUDGET) -> Optional[GatherResult]:
    boundary = _as_boundary(P)
    if not side_index(boundary).inside(p):
        raise PixelOutsidePolyomino(p)
    res = full_gathering(P, budget)
    if res is None:
        return None
    q = res.target
    # the single-particle orbit of q stays inside the significant pixels
    prev = {q: None}
    todo = deque([q])
    while todo:
        r = todo.popleft()
        if r == p:
            out = []
            while prev[r] is not None:
                r, a = prev[r]
                out.append(a)
            u = "".join(reversed(out))
            return GatherResult(normalize(res.sequence + u), p, FT_MERGE)
        for a in "UDLR":
            s = project(boundary, r, a)
            if s not in prev:
                prev[s] = (r, a)
                todo.append(s)
    return None


# ---------------------------------------------------------------- exact / parameterized


def subset_gathering_exact(P: Polyomino, C, budget: int = oracle.DEFAULT_BUDGET) -> Optional[GatherResult]:
    r = oracle.sgs_exact(P, C, budget)
    if r is None:
        return None
    w = r[1]
    return GatherResult(w, _check_on(P, w, FT_MERGE, C), FT_MERGE)


def alternating_words(length: int, letters: str = "DLRU"):
    """All words of the given length whose consecutive letters are perpendicular."""
    if length == 0:
        yield ""
        return

    def rec(prefix):
        if len(prefix) == length:
            yield prefix
            return
        for a in letters:
            if AXIS[a] != AXIS[prefix[-1]]:
                yield from rec(prefix + a)

    for a in letters:
        yield from rec(a)


def para_gathering(P: Polyomino, C, max_len: int) -> Optional[GatherResult]:
    """Try every alternating word up to max_len, shortest first."""
    start = to_idx(P, C)
    if len(start) == 1:
        return GatherResult("", P.pixels[start[0]], FT_MERGE)
    tabs = P.ft_table
    for length in range(1, max_len + 1):
        # depth-first over alternating words, sharing prefixes
        stack = [("", start)]
        while stack:
            w, conf = stack.pop()
            if len(w) == length:
                if len(conf) == 1:
                    return GatherResult(w, P.pixels[conf[0]], FT_MERGE)
                continue
            nxt = []
            for a in "DLRU":
                if w and AXIS[a] == AXIS[w[-1]]:
                    continue
                t = tabs[a]
                nxt.append((w + a, tuple(sorted({t[i] for i in conf}))))
            stack.extend(reversed(nxt))
    return None


# ---------------------------------------------------------------- simple mazes


def maze_main_segment(P: Polyomino):
    """The unique segment (length >= 2) whose two endpoints are corner pixels."""
    segs = [s for s in P.row_segments + P.col_segments
            if len(s.pixels) >= 2 and s.corner_endpoints == 2]
    return segs


def approx_simple_maze(P: Polyomino) -> GatherResult:
    cls = classify(P)
    if not (cls["simple"] and cls["maze"]) or P.N <= 1:
        raise NotASimpleMaze("input is not a simple maze with more than one pixel")
    if not is_gatherable(P):
        raise NotGatherable("maze is not gatherable")
    segs = maze_main_segment(P)
    if len(segs) != 1:
        raise AssertionError(f"expected one doubly cornered segment, found {len(segs)}")
    R = segs[0]
    on_R = {P.index[p] for p in R.pixels}
    tab = P.ft_table
    d = 0
    for c in P.corner_pixels:
        # BFS distance in the single-particle move graph
        s = P.index[c]
        dist = {s: 0}
        todo = deque([s])
        found = 0 if s in on_R else None
        while todo and found is None:
            i = todo.popleft()
            for a in "UDLR":
                j = tab[a][i]
                if j not in dist:
                    dist[j] = dist[i] + 1
                    if j in on_R:
                        found = dist[j]
                        break
                    todo.append(j)
        if found is None:
            raise NotGatherable(f"corner pixel {c} cannot reach the main segment")
        d = max(d, found)
    finals = "LR" if R.axis == "h" else "DU"
    tried = []
    for f in finals:
        w = "URDL" * d + f
        out = apply_idx(P, tuple(range(P.N)), w, FT_MERGE)
        tried.append(w)
        if len(out) == 1:
            return GatherResult(normalize(w), P.pixels[out[0]], FT_MERGE)
    raise AssertionError(f"no final move gathers: tried {tried}")


# ---------------------------------------------------------------- single step


def s1_gathering(P: Polyomino) -> GatherResult:
    T = build_s1_automaton(P)
    w = synchronizing_word(T.automaton)
    if w is None:
        raise NotGatherable("single step automaton is not synchronizing")
    w = "".join(w)
    return GatherResult(w, _check_on(P, w, S1_MERGE), S1_MERGE)
