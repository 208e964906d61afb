"""A family whose two-particle gathering cost grows with m.

The polyomino is the simulation layout of a Cerny-type automaton on
M = 2m + 1 states: letter 0 rotates the states, letter 1 fixes every state
except M - 2, which it sends to M - 1. Stepping every representative up once
gives the cycle V_p, on which RDLU advances the index by one.

Verification runs on the set R of pixels reachable from V_p:
  * the congruence generated by V_p is closed under all four moves,
  * every pixel of R gets a cyclic index with each move adding 0 or 1,
  * exactly one pixel moves the index differently from its class.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..automata import SemiAutomaton
from ..errors import VerificationFailed
from ..geometry import Polyomino, classify
from .simulation import gen_simulation

CYCLE = "RDLU"
SHIFTS = (0, 1)


def cerny_like(M: int) -> SemiAutomaton:
    d0 = tuple((q + 1) % M for q in range(M))
    d1 = tuple(M - 1 if q == M - 2 else q for q in range(M))
    return SemiAutomaton(M, ("0", "1"), {"0": d0, "1": d1})


@dataclass
class LowerBoundInstance:
    polyomino: Polyomino
    m: int
    cycle: list  # V_p, index i at position i
    classes: list = field(default_factory=list)
    idx: dict = field(default_factory=dict)
    divergences: list = field(default_factory=list)  # (pixel, letter, shift, class shift)
    report: dict = field(default_factory=dict)

    @property
    def M(self) -> int:
        return 2 * self.m + 1

    def configuration(self) -> frozenset:
        """The two-particle start {p_0, p_m}."""
        return frozenset({self.cycle[0], self.cycle[self.m]})


def gen_lower_bound(m: int, verify: bool = True) -> LowerBoundInstance:
    if m < 1:
        raise ValueError("m must be at least 1")
    M = 2 * m + 1
    sim = gen_simulation(cerny_like(M))
    P = sim.polyomino
    up = P.ft_table["U"]
    cycle = [P.pixels[up[P.index[sim.reps[q]]]] for q in range(M)]
    inst = LowerBoundInstance(P, m, cycle)
    if verify:
        verify_lower_bound(inst)
    return inst


# ---------------------------------------------------------------- census


def _reach(tab, start):
    R = set(start)
    todo = list(start)
    while todo:
        a = todo.pop()
        for v in "UDLR":
            b = tab[v][a]
            if b not in R:
                R.add(b)
                todo.append(b)
    return R


def _congruence(tab, R, seeds):
    """Smallest move-closed equivalence on R that identifies all seeds."""
    par = {p: p for p in R}

    def find(a):
        while par[a] != a:
            par[a] = par[par[a]]
            a = par[a]
        return a

    todo = [(seeds[0], s) for s in seeds[1:]]
    while todo:
        a, b = todo.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        par[ra] = rb
        todo.extend((tab[v][a], tab[v][b]) for v in "UDLR")
    out = {}
    for p in R:
        out.setdefault(find(p), []).append(p)
    return [sorted(c) for c in out.values()]


def _index_domains(tab, R, seeds, M):
    """Arc-consistent index domains, or None when no labelling exists."""
    dom = {p: set(range(M)) for p in R}
    for i, p in enumerate(seeds):
        dom[p] = {i}
    edges = [(a, tab[v][a]) for a in R for v in "UDLR"]
    changed = True
    while changed:
        changed = False
        for a, b in edges:
            nb = {(x + s) % M for x in dom[a] for s in SHIFTS} & dom[b]
            na = {(y - s) % M for y in dom[b] for s in SHIFTS} & dom[a]
            if not nb or not na:
                return None
            if nb != dom[b] or na != dom[a]:
                dom[a], dom[b] = na, nb
                changed = True
    return dom


def _divergences(tab, classes, idx, M):
    out = []
    for c in classes:
        for v in "UDLR":
            by = {}
            for a in c:
                by.setdefault((idx[tab[v][a]] - idx[a]) % M, []).append(a)
            if len(by) > 1:
                major = max(by, key=lambda s: (len(by[s]), -s))
                out += [(a, v, s, major) for s, xs in by.items() if s != major for a in xs]
    return out


def census(P: Polyomino, cycle, max_ambiguous: int = 12) -> dict:
    """Classes, index labelling and divergences on the pixels reachable from cycle.

    Pixels whose index the constraints leave open are tried exhaustively and the
    labelling with the fewest divergent pixels wins.
    """
    tab = P.ft_table
    seeds = [P.index[p] for p in cycle]
    M = len(seeds)
    R = _reach(tab, seeds)
    classes = _congruence(tab, R, seeds)
    dom = _index_domains(tab, R, seeds, M)
    res = {"reachable": len(R), "classes": classes, "idx": None, "divergences": None}
    if dom is None:
        return res
    open_ = sorted(p for p in R if len(dom[p]) > 1)
    if len(open_) > max_ambiguous:
        raise VerificationFailed("index labelling", f"{len(open_)} undetermined pixels")
    best = None
    for pick in itertools.product(*(sorted(dom[p]) for p in open_)):
        idx = {p: min(dom[p]) for p in R}
        idx.update(zip(open_, pick))
        if any((idx[tab[v][a]] - idx[a]) % M not in SHIFTS for a in R for v in "UDLR"):
            continue
        div = _divergences(tab, classes, idx, M)
        key = len({d[0] for d in div})
        if best is None or key < best[0]:
            best = (key, idx, div)
    if best is None:
        return res
    px = P.pixels
    res["idx"] = {px[a]: i for a, i in best[1].items()}
    res["divergences"] = [(px[a], v, s, t) for a, v, s, t in best[2]]
    res["classes"] = [[px[a] for a in c] for c in classes]
    res["ambiguous"] = [px[a] for a in open_]
    return res


def verify_lower_bound(inst: LowerBoundInstance) -> dict:
    P = inst.polyomino
    M = inst.M
    tab = P.ft_table
    for i, p in enumerate(inst.cycle):
        q = P.index[p]
        for a in CYCLE:
            q = tab[a][q]
        if P.pixels[q] != inst.cycle[(i + 1) % M]:
            raise VerificationFailed("cycle", f"p_{i} does not advance under {CYCLE}")
    c = census(P, inst.cycle)
    if c["idx"] is None:
        raise VerificationFailed("index labelling", "no labelling with shifts 0 and 1")
    div = c["divergences"]
    points = sorted({d[0] for d in div})
    if len(points) != 1:
        raise VerificationFailed("unique divergence", f"divergent pixels: {points}")
    inst.classes = c["classes"]
    inst.idx = c["idx"]
    inst.divergences = div
    cls = classify(P)
    inst.report = {
        "reachable": c["reachable"],
        "classes": len(c["classes"]),
        "congruence": True,
        "divergence_point": points[0],
        "divergence_letters": "".join(sorted({d[1] for d in div})),
        "simple": cls["simple"],
        "maze": cls["maze"],
    }
    return inst.report
