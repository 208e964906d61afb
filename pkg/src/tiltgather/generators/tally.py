"""Polyominoes whose RDLU dynamics run several unary cycles side by side.

Each tally automaton gets a thin staircase. One RDLU moves a particle one
step down the staircase; from the lowest step it runs left along a floor
row, climbs a return column and re-enters the staircase from the top.
Accepting representatives get a corridor that LDRDLD follows to the bottom
of a goal column shared by all strips.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from sympy import isprime

from ..automata import TallyAutomaton, tally_cycle
from ..dynamics import singleton_path
from ..errors import InvalidTallyShape, NotOddPrime, VerificationFailed
from ..geometry import Polyomino, classify

CYCLE = "RDLU"
EXIT = "LDRDLD"
COVER_CYCLE = "LURD"


@dataclass
class TallyInstance:
    polyomino: Polyomino
    C0: frozenset
    reps: list  # per automaton: state -> pixel
    accepting_reps: frozenset
    goal: list  # goal column, bottom pixel first
    automata: list
    as_maze: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def goal_bottom(self):
        return self.goal[0]


@dataclass
class TiltCoverInstance:
    polyomino: Polyomino
    C: frozenset
    target: frozenset
    cycle: str = COVER_CYCLE
    source: TallyInstance | None = None


# ---------------------------------------------------------------- one strip

# x of the return columns and of the shared goal column
_XR, _XG = -4, -2


def _strip(rho, accepting, y0):
    """Pixels and cycle order (state -> pixel) of one strip; also its height."""
    T = rho - 1
    V = set()
    for k in range(1, T + 2):
        # step k: column x = 2k over [2k-2, 2k+1] plus the connector to step k-1
        V.update((2 * k, y) for y in range(2 * k - 2, 2 * k + 2))
        V.add((2 * k - 1, 2 * k - 2))
    V.update((x, 0) for x in range(_XR, 3))
    V.update((_XR, y) for y in range(0, 2 * T + 4))
    V.update((x, 2 * T + 3) for x in range(_XR, 2 * T + 3))
    # state 0 sits on top of the return column, state j on step T + 1 - j
    order = [(_XR, 2 * T + 3)] + [(2 * k, 2 * k + 1) for k in range(T, 0, -1)]
    for j in accepting:
        k = T + 1 - j
        V.update((x, 2 * k + 1) for x in range(_XG, 2 * k))
    V = {(x, y + y0) for x, y in V}
    order = [(x, y + y0) for x, y in order]
    return V, order, 2 * T + 6


# ---------------------------------------------------------------- full layout


def _check_automata(automata):
    if not automata:
        raise InvalidTallyShape("no automata")
    out = []
    for A in automata:
        if not isinstance(A, TallyAutomaton):
            A = tally_cycle(*A)
        else:
            tally_cycle(A.rho, A.accepting, A.initial)
        out.append(A)
    return out


def _layout(automata, extra_goal=0):
    V = set()
    reps = []
    y0 = 0
    for A in automata:
        S, order, h = _strip(A.rho, A.accepting, y0)
        V |= S
        reps.append(dict(enumerate(order)))
        y0 += h
    goal = [(_XG, y) for y in range(-2, y0 + extra_goal)]
    V.update(goal)
    return V, reps, goal


def gen_tally(automata, maze: bool = False, verify: bool = True) -> TallyInstance:
    automata = _check_automata(automata)
    V, reps, goal = _layout(automata)
    P = Polyomino(V)
    C0 = frozenset(r[A.initial] for r, A in zip(reps, automata))
    acc = frozenset(r[j] for r, A in zip(reps, automata) for j in A.accepting)
    inst = TallyInstance(P, C0, reps, acc, goal, automata, maze)
    inst.meta = {"rho": [A.rho for A in automata], "pixels": P.N}
    if verify:
        verify_tally(inst)
    return inst


def verify_tally(inst: TallyInstance) -> dict:
    """Hard checks: cycle transport and accepting exits. Shape flags are recorded in meta."""
    P = inst.polyomino
    z = inst.goal_bottom
    for r, A in zip(inst.reps, inst.automata):
        for j in range(A.rho):
            got = singleton_path(P, r[j], CYCLE)
            if got != r[(j + 1) % A.rho]:
                raise VerificationFailed("tally cycle", f"state {j}: {r[j]} -> {got}")
            end = singleton_path(P, r[j], EXIT)
            if j in A.accepting and end != z:
                raise VerificationFailed("accepting exit", f"state {j} ends at {end}")
            if j not in A.accepting and end == z:
                raise VerificationFailed("rejecting exit", f"state {j} reaches the goal")
    cls = classify(P)
    checks = {
        "cycle": True,
        "accepting_exit": True,
        "rejecting_stays": True,
        "simple": cls["simple"],
        "maze": cls["maze"],
        "goal_degree_one": P.degree(z) == 1,
    }
    inst.meta["checks"] = checks
    return checks


def accepting_at(inst: TallyInstance, ell: int) -> bool:
    """Whether C0 . (RDLU)^ell lies inside the accepting representatives."""
    P = inst.polyomino
    return all(singleton_path(P, p, CYCLE * ell) in inst.accepting_reps for p in inst.C0)


def gathering_word(ell: int) -> str:
    return CYCLE * ell + EXIT


# ---------------------------------------------------------------- derived families


def gen_prime_tally(primes) -> list:
    ps = [int(p) for p in primes]
    if len(set(ps)) != len(ps):
        raise NotOddPrime("primes must be distinct")
    for p in ps:
        if p < 3 or not isprime(p):
            raise NotOddPrime(f"{p} is not an odd prime")
    return [tally_cycle(p, {p - 1}, 0) for p in ps]


def gen_tiltcover(automata, maze: bool = False) -> TiltCoverInstance:
    inst = gen_tally(automata, maze)
    V = frozenset(inst.polyomino.pixels)
    return TiltCoverInstance(inst.polyomino, V - inst.C0, V - inst.accepting_reps,
                             COVER_CYCLE, inst)


def gen_occupancy_variant(automata, k: int | None = None):
    """(P, C0, probe, goal configuration) with the goal column raised by k pixels.

    Meant for the blocking models: the probe is the k-th goal pixel from the top.
    """
    automata = _check_automata(automata)
    if k is None:
        k = len(automata)
    if k != len(automata):
        raise InvalidTallyShape("k must equal the number of automata")
    V, reps, goal = _layout(automata, extra_goal=k)
    P = Polyomino(V)
    C0 = frozenset(r[A.initial] for r, A in zip(reps, automata))
    probe = goal[-k]
    return P, C0, probe, frozenset(goal[-k:])
