"""Semi-automata, acceptors, tilt automata and synchronization search."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetExceeded, InvalidTallyShape
from .geometry import DIRECTIONS, Boundary, Polyomino, project, significant_pixels, sort_pixels

DEFAULT_SUBSET_BUDGET = 2**22


@dataclass(frozen=True)
class SemiAutomaton:
    """Deterministic complete automaton over states 0..n-1.

    delta maps each letter to a tuple t with t[q] = successor of q.
    """

    n: int
    alphabet: tuple
    delta: dict = field(hash=False, compare=True)
    labels: Optional[tuple] = field(default=None, hash=False, compare=False)

    def __post_init__(self):
        for a in self.alphabet:
            t = self.delta[a]
            if len(t) != self.n or any(not 0 <= q < self.n for q in t):
                raise ValueError(f"transition for {a!r} is not a total map on {self.n} states")

    def __hash__(self):
        return hash((self.n, self.alphabet, tuple(self.delta[a] for a in self.alphabet)))

    def run(self, q: int, w) -> int:
        for a in w:
            q = self.delta[a][q]
        return q

    def image(self, states, w) -> frozenset:
        return frozenset(self.run(q, w) for q in states)


@dataclass(frozen=True)
class Acceptor:
    semi: SemiAutomaton
    initial: int
    accepting: frozenset

    def __post_init__(self):
        if not 0 <= self.initial < self.semi.n:
            raise ValueError("initial state out of range")
        if any(not 0 <= q < self.semi.n for q in self.accepting):
            raise ValueError("accepting state out of range")

    @property
    def n(self):
        return self.semi.n

    @property
    def alphabet(self):
        return self.semi.alphabet

    @property
    def delta(self):
        return self.semi.delta

    def accepts(self, w) -> bool:
        return self.semi.run(self.initial, w) in self.accepting

    def shortest_accepted(self) -> Optional[str]:
        """BFS for a shortest accepted word (letters joined as a string)."""
        prev = {self.initial: None}
        todo = deque([self.initial])
        while todo:
            q = todo.popleft()
            if q in self.accepting:
                out = []
                while prev[q] is not None:
                    q, a = prev[q]
                    out.append(a)
                return "".join(reversed(out))
            for a in self.alphabet:
                r = self.delta[a][q]
                if r not in prev:
                    prev[r] = (q, a)
                    todo.append(r)
        return None


@dataclass(frozen=True)
class TallyAutomaton:
    """Unary acceptor whose states p_0..p_{rho-1} form one cycle."""

    rho: int
    initial: int
    accepting: frozenset

    def accepts_length(self, ell: int) -> bool:
        return (self.initial + ell) % self.rho in self.accepting

    def acceptor(self) -> Acceptor:
        t = tuple((j + 1) % self.rho for j in range(self.rho))
        return Acceptor(SemiAutomaton(self.rho, ("0",), {"0": t}), self.initial, self.accepting)


@dataclass(frozen=True)
class TiltAutomaton:
    automaton: SemiAutomaton
    pixels: tuple  # state -> pixel
    helpers: frozenset = frozenset()

    @property
    def n(self):
        return self.automaton.n

    def state_of(self, p) -> int:
        return self._index[p]

    @property
    def _index(self):
        return {p: i for i, p in enumerate(self.pixels)}


# ---------------------------------------------------------------- tilt automata


def build_tilt_automaton(boundary: Boundary) -> TiltAutomaton:
    """Full tilt automaton on the significant pixels."""
    sig = significant_pixels(boundary)
    states = tuple(sort_pixels(sig.all))
    index = {p: i for i, p in enumerate(states)}
    delta = {}
    for v in DIRECTIONS:
        row = []
        for p in states:
            q = project(boundary, p, v)
            if q not in index:
                raise AssertionError(f"significant pixels not closed: {p}.{v} = {q}")
            row.append(index[q])
        delta[v] = tuple(row)
    return TiltAutomaton(SemiAutomaton(len(states), tuple(DIRECTIONS), delta, states),
                         states, sig.helpers)


def build_s1_automaton(P: Polyomino) -> TiltAutomaton:
    delta = {v: tuple(P.s1_table[v]) for v in DIRECTIONS}
    return TiltAutomaton(SemiAutomaton(P.N, tuple(DIRECTIONS), delta, P.pixels), P.pixels)


def degrees(A: SemiAutomaton):
    indeg = [0] * A.n
    for a in A.alphabet:
        for q in A.delta[a]:
            indeg[q] += 1
    outdeg = [len(A.alphabet)] * A.n
    return indeg, outdeg


def is_eulerian(A: SemiAutomaton) -> bool:
    indeg, outdeg = degrees(A)
    return indeg == outdeg


# ---------------------------------------------------------------- pair automaton


class PairAutomaton:
    """Pairs {p, q} (p <= q; p == q are singletons) with a shortest-path forest.

    dist[p][q] is the length of a shortest word merging p and q, or -1.
    letter[p][q] is the first letter of such a word.
    """

    def __init__(self, A: SemiAutomaton):
        self.base = A
        n = A.n
        self.n = n
        dist = [[-1] * n for _ in range(n)]
        letter = [[None] * n for _ in range(n)]
        rev = {}
        for a in A.alphabet:
            t = A.delta[a]
            for p in range(n):
                tp = t[p]
                for q in range(p + 1, n):
                    tq = t[q]
                    img = (tp, tq) if tp <= tq else (tq, tp)
                    rev.setdefault(img, []).append((p, q, a))
        todo = deque()
        for p in range(n):
            dist[p][p] = 0
            todo.append((p, p))
        while todo:
            s = todo.popleft()
            d = dist[s[0]][s[1]]
            for p, q, a in rev.get(s, ()):
                if dist[p][q] < 0:
                    dist[p][q] = d + 1
                    letter[p][q] = a
                    todo.append((p, q))
        self.dist = dist
        self.letter = letter

    def state(self, p, q):
        return (p, q) if p <= q else (q, p)

    def states(self):
        for p in range(self.n):
            for q in range(p, self.n):
                yield (p, q)

    def distance(self, p, q) -> int:
        p, q = self.state(p, q)
        return self.dist[p][q]

    def step(self, pair, a):
        t = self.base.delta[a]
        return self.state(t[pair[0]], t[pair[1]])

    def merging_word(self, p, q) -> Optional[list]:
        p, q = self.state(p, q)
        if self.dist[p][q] < 0:
            return None
        out = []
        while p != q:
            a = self.letter[p][q]
            out.append(a)
            p, q = self.step((p, q), a)
        return out

    def mergeable_all(self) -> bool:
        return all(self.dist[p][q] >= 0 for p, q in self.states())


def pair_automaton(A: SemiAutomaton) -> PairAutomaton:
    return PairAutomaton(A)


def is_synchronizing(A: SemiAutomaton) -> bool:
    if A.n <= 1:
        return True
    return PairAutomaton(A).mergeable_all()


def greedy_merge(A: SemiAutomaton, pa: PairAutomaton, X) -> Optional[list]:
    """Merge the states of X pair by pair, cheapest pair first."""
    X = sorted(set(X))
    word = []
    while len(X) > 1:
        best = None
        for i, p in enumerate(X):
            row = pa.dist[p]
            for q in X[i + 1:]:
                d = row[q]
                if d < 0:
                    return None
                if best is None or d < best[0]:
                    best = (d, p, q)
        u = pa.merging_word(best[1], best[2])
        word.extend(u)
        X = sorted({A.run(q, u) for q in X})
    return word


def synchronizing_word(A: SemiAutomaton, pa: PairAutomaton | None = None) -> Optional[list]:
    if pa is None:
        pa = PairAutomaton(A)
    w = greedy_merge(A, pa, range(A.n))
    if w is not None:
        assert len(A.image(range(A.n), w)) == 1
    return w


# ---------------------------------------------------------------- subset search


class _Imager:
    """Image of a state subset (as bit mask) under a letter, via byte tables."""

    CH = 8

    def __init__(self, A: SemiAutomaton):
        self.A = A
        self.chunks = (A.n + self.CH - 1) // self.CH
        self.tables = {}
        for a in A.alphabet:
            t = A.delta[a]
            tabs = []
            for c in range(self.chunks):
                base = c * self.CH
                width = min(self.CH, A.n - base)
                tab = [0] * (1 << width)
                for m in range(1, 1 << width):
                    low = m & -m
                    b = low.bit_length() - 1
                    tab[m] = tab[m ^ low] | (1 << t[base + b])
                tabs.append(tab)
            self.tables[a] = tabs

    def image(self, mask: int, a) -> int:
        out = 0
        tabs = self.tables[a]
        c = 0
        mk = (1 << self.CH) - 1
        while mask:
            out |= tabs[c][mask & mk]
            mask >>= self.CH
            c += 1
        return out


def reset_threshold_exact(A: SemiAutomaton, S=None, budget: int = DEFAULT_SUBSET_BUDGET):
    """Shortest word collapsing S (default: all states) to one state.

    Returns (length, word) or None when S cannot be synchronized.
    """
    if S is None:
        S = range(A.n)
    S = set(S)
    if not S:
        raise ValueError("empty subset")
    start = 0
    for q in S:
        start |= 1 << q
    if len(S) == 1:
        return 0, []
    img = _Imager(A)
    parent = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for a in A.alphabet:
                r = img.image(m, a)
                if r in parent:
                    continue
                parent[r] = (m, a)
                if r & (r - 1) == 0:
                    word = []
                    while parent[r] is not None:
                        r, b = parent[r]
                        word.append(b)
                    word.reverse()
                    return len(word), word
                nxt.append(r)
                if len(parent) > budget:
                    raise BudgetExceeded("subset search", budget)
        frontier = nxt
    return None


def check_eulerian_bound(T, budget: int = DEFAULT_SUBSET_BUDGET) -> dict:
    """Compare synchronizing word lengths of a single-step automaton with Kari's bound."""
    A = T.automaton if isinstance(T, TiltAutomaton) else T
    n = A.n
    bound = (n - 2) * (n - 1) + 1 if n > 1 else 0
    w = synchronizing_word(A)
    rep = {
        "isEulerian": is_eulerian(A),
        "isSynchronizing": w is not None,
        "witnessLength": None if w is None else len(w),
        "kariBound": bound,
        "exactLength": None,
    }
    try:
        r = reset_threshold_exact(A, None, budget)
        rep["exactLength"] = None if r is None else r[0]
    except BudgetExceeded:
        pass
    if rep["exactLength"] is not None:
        rep["withinBound"] = rep["exactLength"] <= bound
    else:
        rep["withinBound"] = None
    return rep


# ---------------------------------------------------------------- tally automata


def tally_cycle(rho: int, accepting, initial: int = 0) -> TallyAutomaton:
    acc = frozenset(int(a) for a in accepting)
    if rho <= 1 or rho % 2 == 0:
        raise InvalidTallyShape(f"cycle length {rho} must be odd and > 1")
    if any(not 0 <= a < rho for a in acc) or not 0 <= initial < rho:
        raise InvalidTallyShape("state index out of range")
    if len(acc) == rho:
        raise InvalidTallyShape("all states accepting")
    if 0 in acc:
        raise InvalidTallyShape("p_0 must not be accepting")
    return TallyAutomaton(rho, initial, acc)


def tally_intersection_smallest(automata, bound: int | None = None) -> Optional[int]:
    """Smallest ell <= bound such that every automaton accepts 0^ell."""
    if not automata:
        raise ValueError("no automata")
    if bound is None:
        from math import lcm

        bound = lcm(*(a.rho for a in automata)) - 1
    if all(len(a.accepting) == 1 for a in automata):
        from sympy.ntheory.modular import solve_congruence

        # moduli need not be coprime, so use the general solver
        sol = solve_congruence(*(((next(iter(a.accepting)) - a.initial) % a.rho, a.rho)
                                 for a in automata))
        if sol is None:
            return None
        r = int(sol[0])
        return r if r <= bound else None
    for ell in range(bound + 1):
        if all(a.accepts_length(ell) for a in automata):
            return ell
    return None


# ---------------------------------------------------------------- text format


def automaton_to_text(A) -> str:
    semi = A.semi if isinstance(A, Acceptor) else A
    lines = [f"states: {semi.n}", "alphabet: " + ",".join(semi.alphabet)]
    if isinstance(A, Acceptor):
        lines.append(f"initial: {A.initial}")
        lines.append("accepting: " + ",".join(str(q) for q in sorted(A.accepting)))
    for q in range(semi.n):
        for a in semi.alphabet:
            lines.append(f"{q} {a} {semi.delta[a][q]}")
    return "\n".join(lines) + "\n"


def automaton_from_text(text: str):
    n = None
    alphabet = None
    initial = None
    accepting = None
    trans = {}
    for raw in text.splitlines():
        line = raw.split("#")[0].strip()
        if not line:
            continue
        if ":" in line:
            key, val = (s.strip() for s in line.split(":", 1))
            if key == "states":
                n = int(val)
            elif key == "alphabet":
                alphabet = tuple(s.strip() for s in val.split(",") if s.strip())
            elif key == "initial":
                initial = int(val)
            elif key == "accepting":
                accepting = frozenset(int(s) for s in val.split(",") if s.strip())
            else:
                raise ValueError(f"unknown header {key!r}")
            continue
        src, a, dst = line.split()
        trans[(int(src), a)] = int(dst)
    if n is None or alphabet is None:
        raise ValueError("missing 'states' or 'alphabet' header")
    delta = {}
    for a in alphabet:
        try:
            delta[a] = tuple(trans[(q, a)] for q in range(n))
        except KeyError as e:
            raise ValueError(f"missing transition {e.args[0]}") from None
    semi = SemiAutomaton(n, alphabet, delta)
    if initial is None and accepting is None:
        return semi
    return Acceptor(semi, initial or 0, accepting or frozenset())
