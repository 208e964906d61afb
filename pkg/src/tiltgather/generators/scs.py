"""Gathering instances built from shortest common supersequence inputs.

Every word becomes a vertical path of symbol gadgets hanging below a
horizontal baseline. The deepest particle of a path climbs one gadget per
matching symbol.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..dynamics import singleton_path
from ..errors import EmptyWordList, VerificationFailed
from ..geometry import Polyomino, classify
from ._gadgets import MAX_BITS, gadget

ENCODE = {0: "RU", 1: "LU"}


@dataclass
class ScsInstance:
    polyomino: Polyomino
    starts: list  # deepest particle per word
    baseline: tuple  # (x_min, x_max, y)
    words: list
    bits: Optional[int] = None
    entries: list = field(default_factory=list)  # per word, entry pixel of each gadget
    meta: dict = field(default_factory=dict)

    @property
    def configuration(self) -> frozenset:
        return frozenset(self.starts)


def _norm_words(words, sigma=2):
    out = []
    for w in words:
        if isinstance(w, str):
            w = [int(c) for c in w]
        w = [int(a) for a in w]
        if not w:
            raise EmptyWordList("words must be nonempty")
        if any(not 0 <= a < sigma for a in w):
            raise ValueError(f"symbol out of range in {w}")
        out.append(w)
    if len(out) < 2:
        raise EmptyWordList("need at least two words")
    return out


# ---------------------------------------------------------------- binary alphabet


def _binary_path(w, x0):
    """Pixels of one path gadget with its first entry at (x0, 0); gadgets are 3 rows tall."""
    V = set()
    entries = []
    x, y = x0, 0
    for a in w:
        entries.append((x, y))
        if a == 0:
            V.update((x + d, y) for d in (-1, 0, 1, 2))
            up = x + 2
        else:
            V.update((x + d, y) for d in (-2, -1, 0, 1))
            up = x - 2
        # short stub below the rising column keeps the turn pixel off the corners
        V.update({(up, y - 1), (up, y + 1), (up, y + 2)})
        x, y = up, y + 3
    return V, entries, (x, y)


def gen_scs_binary(words, verify: bool = True) -> ScsInstance:
    words = _norm_words(words)
    V = set()
    starts, entries, tops = [], [], []
    x0 = 0
    for w in words:
        # the path drifts at most 2 columns per symbol either way
        x0 += 2 * len(w) + 3
        Vw, ent, top = _binary_path(w, x0)
        V |= Vw
        starts.append(ent[0])
        entries.append(ent)
        tops.append(top)
        x0 += 2 * len(w) + 3
    Y = 3 * max(len(w) for w in words) + 1
    for (x, y) in tops:
        V.update((x, yy) for yy in range(y, Y))
    xs = [x for x, _ in tops]
    lo, hi = min(xs) - 1, max(xs) + 1
    V.update((x, Y) for x in range(lo, hi + 1))
    inst = ScsInstance(Polyomino(V), starts, (lo, hi, Y), words, None, entries)
    if verify:
        verify_scs_binary(inst)
    return inst


def verify_scs_binary(inst: ScsInstance):
    P = inst.polyomino
    cls = classify(P)
    if not (cls["simple"] and cls["maze"]):
        raise VerificationFailed("simple maze", str(cls))
    lo, hi, Y = inst.baseline
    for w, ent in zip(inst.words, inst.entries):
        for i, a in enumerate(w):
            e = ent[i]
            nxt = ent[i + 1] if i + 1 < len(ent) else None
            row = [p for p in P.pixels if p[1] == e[1] and abs(p[0] - e[0]) <= 2]
            for p in row:
                good = singleton_path(P, p, ENCODE[a])
                bad = singleton_path(P, p, ENCODE[1 - a])
                if nxt is not None and good != nxt:
                    raise VerificationFailed("gadget advance", f"{p}: {good} != {nxt}")
                if nxt is None and good[1] != Y:
                    raise VerificationFailed("gadget advance", f"{p} does not reach the baseline")
                if bad[1] != e[1]:
                    raise VerificationFailed("gadget hold", f"{p} left its row via {ENCODE[1 - a]}")


# ---------------------------------------------------------------- larger alphabets

START = "DLUL"
RETURN = "URDR"
# start piece relative to the bottom of the first chimney; the particle sits at (4, 0)
_START_PIXELS = {(0, 0), (1, 0), (2, 0), (2, -1), (2, -2), (3, -2), (4, -2), (4, -1), (4, 0)}


def bit_width(sigma: int) -> int:
    if sigma < 2:
        raise ValueError("alphabet needs at least two symbols")
    return max(1, (sigma - 1).bit_length())


def choice_moves(bits) -> str:
    """Four moves per bit; the pair offered depends on the side the particle last slid to."""
    left = True
    out = []
    for b in bits:
        if left:
            out.append("URUL" if b else "DRUR")
        else:
            out.append("DLUL" if b else "ULUR")
        left = bool(b)
    return "".join(out)


def symbol_block(a: int, ell: int) -> str:
    bits = [(a >> (ell - 1 - i)) & 1 for i in range(ell)]
    return "UL" + choice_moves(bits) + RETURN


def _general_path(w, ell):
    """Pixels, start pixel, entries and top chimney column of one word, chimney base at (0, 0)."""
    V = set(_START_PIXELS)
    entries = []
    cx, y = 0, 1
    for a in w:
        pix, e, xc, yt, W, H = gadget(format(a, f"0{ell}b"))
        ox, oy = cx + 1, y + 1
        V.update((ox + x, oy + yy) for x, yy in pix)
        V.update((cx, yy) for yy in range(y - 1, oy + yt + 1))
        entries.append((ox + e[0], oy + e[1]))
        cx, y = ox + xc, oy + H
    return V, (4, 0), entries, cx, y


def gen_scs_general(words, sigma: int = 2, verify: bool = True) -> ScsInstance:
    """Instance for words over {0, ..., sigma - 1}; sigma is padded to a power of two.

    One symbol costs 6 + 4 * bits moves; see symbol_block for the encoding.
    """
    ell = bit_width(sigma)
    if ell > MAX_BITS:
        raise ValueError(f"at most {2 ** MAX_BITS} symbols are supported, got {sigma}")
    words = _norm_words(words, 2 ** ell)
    V = set()
    starts, entries, tops = [], [], []
    x0 = 0
    for w in words:
        Vw, s, ent, cx, top = _general_path(w, ell)
        lo = min(x for x, _ in Vw)
        dx = x0 - lo
        V |= {(x + dx, y) for x, y in Vw}
        starts.append((s[0] + dx, s[1]))
        entries.append([(x + dx, y) for x, y in ent])
        tops.append((cx + dx, top))
        x0 = max(x for x, _ in Vw) + dx + 3
    Y = max(y for _, y in tops) + 1
    for x, y in tops:
        V.update((x, yy) for yy in range(y - 1, Y))
    xs = [x for x, _ in tops]
    lo, hi = min(xs) - 1, max(xs) + 1
    V.update((x, Y) for x in range(lo, hi + 1))
    inst = ScsInstance(Polyomino(V), starts, (lo, hi, Y), words, ell, entries)
    inst.meta = {"sigma": 2 ** ell, "block": 6 + 4 * ell}
    if verify:
        verify_scs_general(inst)
    return inst


def verify_scs_general(inst: ScsInstance):
    """Start piece, then every symbol block from every entry: advance on a match, return otherwise."""
    P, ell = inst.polyomino, inst.bits
    if not classify(P)["simple"]:
        raise VerificationFailed("simple polyomino", "instance has holes")
    lo, hi, Y = inst.baseline
    goal = (hi, Y)
    for w, s, ent in zip(inst.words, inst.starts, inst.entries):
        got = singleton_path(P, s, START + RETURN)
        if got != ent[0]:
            raise VerificationFailed("start piece", f"{s} -> {got}, expected {ent[0]}")
        for i, a in enumerate(w):
            nxt = ent[i + 1] if i + 1 < len(ent) else goal
            for b in range(2 ** ell):
                got = singleton_path(P, ent[i], symbol_block(b, ell))
                want = nxt if b == a else ent[i]
                if got != want:
                    raise VerificationFailed("symbol gadget",
                                             f"symbol {a}, block {b}: {got} != {want}")


def scs_to_moves(sup, bits: Optional[int] = None) -> str:
    """Gathering word for the instance induced by a supersequence.

    Without bits this is the binary instance; otherwise the general one with that bit width.
    """
    sup = [int(c) for c in sup]
    if bits is None:
        return "".join(ENCODE[a] for a in sup) + "R"
    return START + RETURN + "".join(symbol_block(a, bits) for a in sup)


def shortest_supersequence(words, sigma: int = 2) -> str:
    """Exhaustive shortest common supersequence by BFS over position tuples.

    Ties are broken towards the smaller symbol, so the answer is deterministic.
    """
    words = _norm_words(words, sigma)
    start = tuple(0 for _ in words)
    goal = tuple(len(w) for w in words)
    prev = {start: None}
    layer = [start]
    while goal not in prev:
        nxt = []
        for pos in layer:
            for a in range(sigma):
                q = tuple(i + (i < len(w) and w[i] == a) for i, w in zip(pos, words))
                if q != pos and q not in prev:
                    prev[q] = (pos, a)
                    nxt.append(q)
        layer = nxt
    out = []
    q = goal
    while prev[q] is not None:
        q, a = prev[q]
        out.append(str(a))
    return "".join(reversed(out))
