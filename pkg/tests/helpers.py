"""Random instance generators shared by the test modules."""
import random

from tiltgather.geometry import Polyomino, classify

NBR = ((1, 0), (-1, 0), (0, 1), (0, -1))


def grow(rng: random.Random, n: int, thin: bool = False, tree: bool = False):
    """Random connected pixel set of size n grown from the origin."""
    V = {(0, 0)}
    frontier = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    tries = 0
    while len(V) < n and tries < 50 * n:
        tries += 1
        p = rng.choice(frontier)
        if p in V:
            continue
        x, y = p
        if tree and sum((x + dx, y + dy) in V for dx, dy in NBR) != 1:
            continue
        if thin and _makes_square(V, p):
            continue
        V.add(p)
        frontier.extend((x + dx, y + dy) for dx, dy in NBR)
    return V


def _makes_square(V, p):
    x, y = p
    for dx in (-1, 0):
        for dy in (-1, 0):
            sq = {(x + dx + a, y + dy + b) for a in (0, 1) for b in (0, 1)}
            if len(sq - V - {p}) == 0:
                return True
    return False


def random_polyomino(rng: random.Random, n_max: int, n_min: int = 1) -> Polyomino:
    return Polyomino(grow(rng, rng.randint(n_min, n_max)))


def random_maze(rng: random.Random, n_max: int, n_min: int = 2, tries: int = 500):
    """Random simple maze (thin tree whose corner pixels all have degree 1)."""
    for _ in range(tries):
        P = Polyomino(grow(rng, rng.randint(n_min, n_max), thin=True, tree=True))
        c = classify(P)
        if c["simple"] and c["maze"] and P.N > 1:
            return P
    raise RuntimeError("no maze found")


def random_configuration(rng: random.Random, P: Polyomino, k: int | None = None):
    if k is None:
        k = rng.randint(1, P.N)
    return frozenset(rng.sample(sorted(P.pixels), k))


def random_word(rng: random.Random, max_len: int) -> str:
    return "".join(rng.choice("UDLR") for _ in range(rng.randint(0, max_len)))
