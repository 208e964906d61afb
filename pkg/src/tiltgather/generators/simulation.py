"""Polyominoes whose tilt dynamics on a set of representatives copy a binary automaton.

Letter 0 is simulated by URDL and letter 1 by DRUL. States sit on a diagonal
in a middle block; the top block routes the 0-transitions and the bottom
block the 1-transitions.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..automata import Acceptor, SemiAutomaton
from ..dynamics import FT_MERGE, apply_idx, check_word, singleton_path
from ..errors import InvalidAlphabet, NotRepresentativeClosed, VerificationFailed
from ..geometry import Polyomino, classify

ZERO = "URDL"
ONE = "DRUL"


@dataclass
class SimulationInstance:
    polyomino: Polyomino
    reps: dict  # state -> pixel
    source: object
    is_maze: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def semi(self) -> SemiAutomaton:
        return self.source.semi if isinstance(self.source, Acceptor) else self.source

    def rep_set(self) -> frozenset:
        return frozenset(self.reps.values())

    def state_of(self) -> dict:
        return {p: q for q, p in self.reps.items()}

    def encode(self, w) -> str:
        """Move word simulating the 0/1 word w."""
        return "".join(ZERO if str(a) == "0" else ONE for a in w)


def _binary_maps(A):
    semi = A.semi if isinstance(A, Acceptor) else A
    if set(semi.alphabet) != {"0", "1"}:
        raise InvalidAlphabet(f"alphabet must be {{0, 1}}, got {semi.alphabet}")
    return semi, list(semi.delta["0"]), list(semi.delta["1"])


def _layout_plain(d0, d1):
    K = len(d0)
    W = 6 * K
    xs = [2 * (K - 1 - i) for i in range(K)]
    row = [2 * (K - 1 - j) + 1 for j in range(K)]
    r = [2 * K + 4 * i for i in range(K)]
    rp = [2 * K + 2 + 4 * i for i in range(K)]
    V = set()
    # middle block; the top spacer row only reaches the last 0-column
    for y in range(2 * K + 1):
        if y % 2:
            w = W
        elif y < 2 * K:
            w = W - 1
        else:
            w = r[K - 1] + 1
        V.update((x, y) for x in range(w))
    holes = {(xs[j] - 1, row[j]) for j in range(K - 1)}
    for i in range(K):
        holes.add((r[i], row[d0[i]] - 1))
        holes.add((rp[i], row[d1[i]] + 1))
    for i in range(K):
        V.update((x, 2 * K + 1 + (K - 1 - i)) for x in range(xs[i], r[i] + 1))
        V.update((x, -1 - (K - 1 - i)) for x in range(xs[i], rp[i] + 1))
    V -= holes
    return V, [(xs[i], row[i]) for i in range(K)]


def _layout_maze(d0, d1):
    # line skeleton: state rows, one column per state and per transition
    K = len(d0)
    xs = [2 * (K - 1 - i) for i in range(K)]
    r = [2 * K + 4 * i for i in range(K)]
    rp = [2 * K + 2 + 4 * i for i in range(K)]
    E = rp[-1] + 2
    row = [2 * (K - 1 - j) for j in range(K)]
    top = [2 * K + 2 * (K - 1 - i) for i in range(K)]
    bot = [-2 - 2 * (K - 1 - i) for i in range(K)]
    V = set()
    for j in range(K):
        V.update((x, row[j]) for x in range(xs[j], E + 1))
    for i in range(K):
        V.update((x, top[i]) for x in range(xs[i] - 1, r[i] + 1))
        V.update((x, bot[i]) for x in range(xs[i] - 1, rp[i] + 1))
        V.update((xs[i], y) for y in range(bot[i], top[i] + 1))
        V.update((r[i], y) for y in range(row[d0[i]], top[i] + 2))
        V.update((rp[i], y) for y in range(bot[i] - 1, row[d1[i]] + 1))
    return V, [(xs[i], row[i]) for i in range(K)]


def gen_simulation(A, maze: bool = False, verify: bool = True) -> SimulationInstance:
    semi, d0, d1 = _binary_maps(A)
    V, reps = (_layout_maze if maze else _layout_plain)(d0, d1)
    P = Polyomino(V)
    inst = SimulationInstance(P, dict(enumerate(reps)), A, maze)
    inst.meta = {"states": semi.n, "corners": P.n}
    if verify:
        verify_simulation(inst)
    return inst


def verify_simulation(inst: SimulationInstance):
    P, reps = inst.polyomino, inst.reps
    semi = inst.semi
    for q, p in reps.items():
        for a, enc in (("0", ZERO), ("1", ONE)):
            got = singleton_path(P, p, enc)
            want = reps[semi.delta[a][q]]
            if got != want:
                raise VerificationFailed("simulation", f"state {q}, letter {a}: {got} != {want}")
    cls = classify(P)
    if inst.is_maze:
        if not cls["maze"]:
            raise VerificationFailed("maze", "layout does not classify as a maze")
        return
    n_expected = 12 * (2 * semi.n - 1)
    if P.n != n_expected:
        raise VerificationFailed("corner count", f"{P.n} != {n_expected}")
    end = apply_idx(P, tuple(range(P.N)), "RDRUL", FT_MERGE)
    rs = inst.rep_set()
    if any(P.pixels[i] not in rs for i in end):
        raise VerificationFailed("RDRUL", "some pixel does not reach a representative")


def canonicalize_cycle_word(inst: SimulationInstance, w: str) -> str:
    """Replace w by a word over {URDL, DRUL} with the same effect on representatives.

    Only representatives that w maps to representatives constrain the result.
    The search is a BFS over images of those representatives, bounded by |w| / 4.
    """
    w = check_word(w)
    P, reps = inst.polyomino, inst.reps
    state = inst.state_of()
    semi = inst.semi
    src, dst = [], []
    for q, p in reps.items():
        r = singleton_path(P, p, w)
        if r in state:
            src.append(q)
            dst.append(state[r])
    if not src:
        raise NotRepresentativeClosed("no representative returns to a representative")
    goal = tuple(dst)
    start = tuple(src)
    prev = {start: None}
    todo = deque([start])
    limit = len(w) // 4
    depth = {start: 0}
    while todo:
        cur = todo.popleft()
        if cur == goal:
            out = []
            while prev[cur] is not None:
                cur, a = prev[cur]
                out.append(ZERO if a == "0" else ONE)
            return "".join(reversed(out))
        if depth[cur] >= limit:
            continue
        for a in ("0", "1"):
            nxt = tuple(semi.delta[a][q] for q in cur)
            if nxt not in prev:
                prev[nxt] = (cur, a)
                depth[nxt] = depth[cur] + 1
                todo.append(nxt)
    raise NotRepresentativeClosed("the effect of w is not a product of simulated letters")
