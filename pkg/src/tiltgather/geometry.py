"""Polyominoes in dense (pixel set) and sparse (boundary) form.

Pixels are (x, y) tuples. U increases y, R increases x. Whenever a
deterministic order is needed pixels are sorted by (y, x).
"""
from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import (
    BudgetExceeded,
    DisconnectedPolyomino,
    EmptyPolyomino,
    IllegalCharacter,
    PixelOutsidePolyomino,
)

DIRS = {"U": (0, 1), "D": (0, -1), "L": (-1, 0), "R": (1, 0)}
OPPOSITE = {"U": "D", "D": "U", "L": "R", "R": "L"}
AXIS = {"U": "v", "D": "v", "L": "h", "R": "h"}
DIRECTIONS = "UDLR"

DEFAULT_BUDGET = 10**6


def pkey(p):
    return (p[1], p[0])


def sort_pixels(pixels):
    return sorted(pixels, key=pkey)


def perpendicular(v, w):
    return AXIS[v] != AXIS[w]


# ---------------------------------------------------------------- boundary


@dataclass(frozen=True)
class Boundary:
    """Outer loop first (counterclockwise), then holes (clockwise).

    Each loop is a tuple of corner vertices; convex[i][j] flags corner j of
    loop i as convex with respect to the polyomino interior.
    """

    loops: tuple
    convex: tuple

    @property
    def n(self) -> int:
        return sum(len(lp) for lp in self.loops)

    @property
    def n_c(self) -> int:
        return sum(sum(c) for c in self.convex)

    @property
    def n_r(self) -> int:
        return self.n - self.n_c

    @property
    def is_simple(self) -> bool:
        return len(self.loops) == 1

    def sides(self):
        """Yield (a, b) vertex pairs for every side, following loop order."""
        for lp in self.loops:
            for i in range(len(lp)):
                yield lp[i], lp[(i + 1) % len(lp)]

    def to_text(self) -> str:
        return "\n".join(";".join(f"{x},{y}" for x, y in lp) for lp in self.loops) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Boundary":
        loops = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            pts = []
            for tok in line.replace(" ", ";").split(";"):
                if tok:
                    x, y = tok.split(",")
                    pts.append((int(x), int(y)))
            loops.append(tuple(pts))
        return boundary_from_loops(loops)


def _turn(a, b, c):
    d1 = (b[0] - a[0], b[1] - a[1])
    d2 = (c[0] - b[0], c[1] - b[1])
    return d1[0] * d2[1] - d1[1] * d2[0]


def _area2(lp):
    s = 0
    for i in range(len(lp)):
        x0, y0 = lp[i]
        x1, y1 = lp[(i + 1) % len(lp)]
        s += x0 * y1 - x1 * y0
    return s


def _canon_loop(lp):
    """Drop collinear vertices and rotate to start at the (y, x)-least corner."""
    pts = list(lp)
    changed = True
    while changed and len(pts) > 4:
        changed = False
        for i in range(len(pts)):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if _turn(a, b, c) == 0:
                del pts[i]
                changed = True
                break
    k = min(range(len(pts)), key=lambda i: pkey(pts[i]))
    return tuple(pts[k:] + pts[:k])


def boundary_from_loops(loops) -> Boundary:
    """Normalize orientation and ordering of raw loops and set convexity flags."""
    loops = [_canon_loop(lp) for lp in loops]
    for lp in loops:
        if len(lp) < 4 or len(lp) % 2:
            raise ValueError(f"bad loop {lp}")
        for i in range(len(lp)):
            a, b = lp[i], lp[(i + 1) % len(lp)]
            if (a[0] == b[0]) == (a[1] == b[1]):
                raise ValueError(f"non-axis-parallel side {a}->{b}")
    areas = [_area2(lp) for lp in loops]
    outer = max(range(len(loops)), key=lambda i: abs(areas[i]))
    fixed = []
    for i, lp in enumerate(loops):
        want_ccw = i == outer
        if (areas[i] > 0) != want_ccw:
            lp = _canon_loop(lp[::-1])
        fixed.append(lp)
    holes = sorted((fixed[i] for i in range(len(fixed)) if i != outer), key=lambda lp: pkey(lp[0]))
    ordered = [fixed[outer]] + holes
    convex = tuple(
        tuple(_turn(lp[i - 1], lp[i], lp[(i + 1) % len(lp)]) > 0 for i in range(len(lp)))
        for lp in ordered
    )
    return Boundary(tuple(ordered), convex)


def extract_boundary(V) -> Boundary:
    """Trace the boundary of a nonempty pixel set, interior kept on the left."""
    V = set(V)
    if not V:
        raise EmptyPolyomino("empty pixel set")
    out = {}
    for x, y in V:
        if (x, y - 1) not in V:
            out.setdefault((x, y), []).append((x + 1, y))
        if (x + 1, y) not in V:
            out.setdefault((x + 1, y), []).append((x + 1, y + 1))
        if (x, y + 1) not in V:
            out.setdefault((x + 1, y + 1), []).append((x, y + 1))
        if (x - 1, y) not in V:
            out.setdefault((x, y + 1), []).append((x, y))
    used = set()
    loops = []
    for start in sorted(out, key=pkey):
        for nxt in out[start]:
            if (start, nxt) in used:
                continue
            verts = [start]
            a, b = start, nxt
            while True:
                used.add((a, b))
                cands = [c for c in out[b] if (b, c) not in used]
                if not cands:
                    break
                # at a pinch vertex prefer the left turn so diagonal pixels stay apart
                c = max(cands, key=lambda c: _turn(a, b, c))
                verts.append(b)
                a, b = b, c
            loops.append(verts)
    return boundary_from_loops(loops)


class _SideIndex:
    """Sorted wall coordinates per band, for ray shooting without pixels."""

    def __init__(self, b: Boundary):
        vert = []
        horiz = []
        for (x0, y0), (x1, y1) in b.sides():
            if x0 == x1:
                vert.append((x0, min(y0, y1), max(y0, y1)))
            else:
                horiz.append((y0, min(x0, x1), max(x0, x1)))
        self.ys, self.row_walls = self._bands(vert)
        self.xs, self.col_walls = self._bands(horiz)

    @staticmethod
    def _bands(sides):
        cuts = sorted({lo for _, lo, _ in sides} | {hi for _, _, hi in sides})
        walls = []
        for k in range(len(cuts) - 1):
            lo, hi = cuts[k], cuts[k + 1]
            walls.append(sorted(c for c, a, z in sides if a <= lo and hi <= z))
        return cuts, walls

    @staticmethod
    def _lookup(cuts, walls, t, s):
        k = bisect_right(cuts, t) - 1
        if k < 0 or k >= len(walls):
            return None, -1
        ws = walls[k]
        i = bisect_right(ws, s)
        if i % 2 == 0:
            return None, -1
        return ws, i

    def inside(self, p) -> bool:
        return self._lookup(self.ys, self.row_walls, p[1], p[0])[0] is not None

    def project(self, p, v):
        x, y = p
        if v in "LR":
            ws, i = self._lookup(self.ys, self.row_walls, y, x)
            if ws is None:
                raise PixelOutsidePolyomino(p)
            return (ws[i - 1], y) if v == "L" else (ws[i] - 1, y)
        ws, i = self._lookup(self.xs, self.col_walls, x, y)
        if ws is None:
            raise PixelOutsidePolyomino(p)
        return (x, ws[i - 1]) if v == "D" else (x, ws[i] - 1)


@lru_cache(maxsize=256)
def side_index(b: Boundary) -> _SideIndex:
    return _SideIndex(b)


def project(boundary: Boundary, p, v: str):
    """Full-tilt destination of a single particle, computed from the boundary."""
    return side_index(boundary).project(p, v)


def pixel_count(boundary: Boundary) -> int:
    return sum(_area2(lp) for lp in boundary.loops) // 2


def materialize(boundary: Boundary, budget: int = DEFAULT_BUDGET) -> "Polyomino":
    N = pixel_count(boundary)
    if N > budget:
        raise BudgetExceeded(f"pixel count {N}", budget)
    idx = side_index(boundary)
    V = []
    for k, walls in enumerate(idx.row_walls):
        for y in range(idx.ys[k], idx.ys[k + 1]):
            for a, b in zip(walls[::2], walls[1::2]):
                V.extend((x, y) for x in range(a, b))
    return Polyomino(V, boundary=boundary)


# ---------------------------------------------------------------- significant pixels


@dataclass(frozen=True)
class SignificantPixelSet:
    corners: frozenset
    helpers: frozenset

    @property
    def all(self) -> frozenset:
        return self.corners | self.helpers


def _quadrant_pixel(vertex, sx, sy):
    a, b = vertex
    return (a if sx > 0 else a - 1, b if sy > 0 else b - 1)


def significant_pixels(boundary: Boundary) -> SignificantPixelSet:
    corners = set()
    helpers = set()
    for lp, cv in zip(boundary.loops, boundary.convex):
        m = len(lp)
        for j in range(m):
            a, b, c = lp[j - 1], lp[j], lp[(j + 1) % m]
            din = (_sgn(b[0] - a[0]), _sgn(b[1] - a[1]))
            dout = (_sgn(c[0] - b[0]), _sgn(c[1] - b[1]))
            if cv[j]:
                corners.add(_quadrant_pixel(b, dout[0] - din[0], dout[1] - din[1]))
                continue
            # reflex: extend both incident sides into the interior
            left_in = (-din[1], din[0])
            p = _quadrant_pixel(b, din[0] + left_in[0], din[1] + left_in[1])
            helpers.add(project(boundary, p, _dname(din)))
            left_out = (-dout[1], dout[0])
            back = (-dout[0], -dout[1])
            p = _quadrant_pixel(b, back[0] + left_out[0], back[1] + left_out[1])
            helpers.add(project(boundary, p, _dname(back)))
    return SignificantPixelSet(frozenset(corners), frozenset(helpers - corners))


def _sgn(t):
    return (t > 0) - (t < 0)


def _dname(d):
    for k, v in DIRS.items():
        if v == d:
            return k
    raise ValueError(d)


# ---------------------------------------------------------------- dense form


@dataclass(frozen=True)
class Segment:
    axis: str
    pixels: tuple
    corner_endpoints: int = 0

    @property
    def endpoints(self):
        return self.pixels[0], self.pixels[-1]


class Polyomino:
    """Dense polyomino with precomputed move tables.

    Pixels get integer indices in (y, x) order; the dynamics and the oracle
    work on those indices.
    """

    def __init__(self, pixels, boundary: Boundary | None = None):
        pix = sort_pixels(set(pixels))
        if not pix:
            raise EmptyPolyomino("empty pixel set")
        self.pixels = tuple(pix)
        self.index = {p: i for i, p in enumerate(pix)}
        self.N = len(pix)
        self._check_connected()
        self._boundary = boundary

    def _check_connected(self):
        seen = {self.pixels[0]}
        todo = deque(seen)
        while todo:
            x, y = todo.popleft()
            for dx, dy in DIRS.values():
                q = (x + dx, y + dy)
                if q in self.index and q not in seen:
                    seen.add(q)
                    todo.append(q)
        if len(seen) != self.N:
            raise DisconnectedPolyomino(f"{self.N - len(seen)} pixels unreachable")

    def __contains__(self, p):
        return p in self.index

    def __len__(self):
        return self.N

    def __eq__(self, other):
        return isinstance(other, Polyomino) and self.pixels == other.pixels

    def __hash__(self):
        return hash(self.pixels)

    @property
    def V(self) -> frozenset:
        return frozenset(self.pixels)

    @cached_property
    def boundary(self) -> Boundary:
        if self._boundary is not None:
            return self._boundary
        return extract_boundary(self.pixels)

    @property
    def n(self):
        return self.boundary.n

    @property
    def n_c(self):
        return self.boundary.n_c

    def neighbors(self, p):
        x, y = p
        for dx, dy in DIRS.values():
            q = (x + dx, y + dy)
            if q in self.index:
                yield q

    def degree(self, p) -> int:
        return sum(1 for _ in self.neighbors(p))

    @cached_property
    def adjacency(self):
        return tuple(
            (p, q) for p in self.pixels for q in (
                (p[0] + 1, p[1]), (p[0], p[1] + 1)) if q in self.index
        )

    # segments -------------------------------------------------------
    @cached_property
    def _segments(self):
        rows, cols = [], []
        row_of = [0] * self.N
        col_of = [0] * self.N
        for i, (x, y) in enumerate(self.pixels):
            if (x - 1, y) not in self.index:
                run = []
                q = (x, y)
                while q in self.index:
                    row_of[self.index[q]] = len(rows)
                    run.append(self.index[q])
                    q = (q[0] + 1, q[1])
                rows.append(tuple(run))
        for x, y in sorted(self.pixels):
            if (x, y - 1) not in self.index:
                run = []
                q = (x, y)
                while q in self.index:
                    col_of[self.index[q]] = len(cols)
                    run.append(self.index[q])
                    q = (q[0], q[1] + 1)
                cols.append(tuple(run))
        return rows, cols, row_of, col_of

    @property
    def row_runs(self):
        """Row segments as index tuples, ordered left to right."""
        return self._segments[0]

    @property
    def col_runs(self):
        """Column segments as index tuples, ordered bottom to top."""
        return self._segments[1]

    @property
    def row_of(self):
        return self._segments[2]

    @property
    def col_of(self):
        return self._segments[3]

    @cached_property
    def seg_pos(self):
        """(row position, column position) of every pixel within its segments."""
        rpos = [0] * self.N
        cpos = [0] * self.N
        for run in self.row_runs:
            for k, i in enumerate(run):
                rpos[i] = k
        for run in self.col_runs:
            for k, i in enumerate(run):
                cpos[i] = k
        return rpos, cpos

    @cached_property
    def corner_pixels(self) -> frozenset:
        return significant_pixels(self.boundary).corners

    @cached_property
    def row_segments(self):
        return tuple(self._mk_segment("h", run) for run in self.row_runs)

    @cached_property
    def col_segments(self):
        return tuple(self._mk_segment("v", run) for run in self.col_runs)

    def _mk_segment(self, axis, run):
        pts = tuple(self.pixels[i] for i in run)
        ends = {pts[0], pts[-1]}
        return Segment(axis, pts, sum(1 for e in ends if e in self.corner_pixels))

    # move tables ----------------------------------------------------
    @cached_property
    def ft_table(self):
        """ft_table[v][i] = index of the full-tilt destination of pixel i."""
        tab = {}
        rows, cols, row_of, col_of = self._segments
        tab["L"] = [rows[row_of[i]][0] for i in range(self.N)]
        tab["R"] = [rows[row_of[i]][-1] for i in range(self.N)]
        tab["D"] = [cols[col_of[i]][0] for i in range(self.N)]
        tab["U"] = [cols[col_of[i]][-1] for i in range(self.N)]
        return tab

    @cached_property
    def s1_table(self):
        """s1_table[v][i] = index of the unit-step neighbour (or i if blocked)."""
        tab = {}
        for v, (dx, dy) in DIRS.items():
            col = []
            for i, (x, y) in enumerate(self.pixels):
                col.append(self.index.get((x + dx, y + dy), i))
            tab[v] = col
        return tab

    def translate(self, dx, dy) -> "Polyomino":
        return Polyomino((x + dx, y + dy) for x, y in self.pixels)


def polyomino_from_boundary(boundary: Boundary, budget: int = DEFAULT_BUDGET) -> Polyomino:
    return materialize(boundary, budget)


# ---------------------------------------------------------------- classification


def classify(P: Polyomino) -> dict:
    idx = P.index
    thin = not any(
        (x + 1, y) in idx and (x, y + 1) in idx and (x + 1, y + 1) in idx for x, y in P.pixels
    )
    maze = thin and all(P.degree(p) == 1 for p in P.corner_pixels) if P.N > 1 else thin
    xs = [x for x, _ in P.pixels]
    ys = [y for _, y in P.pixels]
    rect = (max(xs) - min(xs) + 1) * (max(ys) - min(ys) + 1) == P.N
    return {
        "simple": P.boundary.is_simple,
        "thin": thin,
        "maze": maze,
        "rectangle": rect,
    }


# ---------------------------------------------------------------- grid text

GRID_CHARS = {"#": (False, False), "o": (True, False), "X": (False, True), "@": (True, True)}
OUTSIDE_CHARS = {".", " "}


def parse_grid(text: str):
    """Parse the grid part of an instance file.

    Returns (Polyomino, configuration, targets). Anything after a line
    consisting of "---" is ignored here.
    """
    lines = []
    for line in text.splitlines():
        if line.strip() == "---":
            break
        lines.append(line.rstrip("\n"))
    while lines and not lines[-1].strip():
        lines.pop()
    while lines and not lines[0].strip():
        lines.pop(0)
    h = len(lines)
    V, C, T = [], set(), set()
    for r, line in enumerate(lines):
        y = h - 1 - r
        for x, ch in enumerate(line):
            if ch in OUTSIDE_CHARS:
                continue
            if ch not in GRID_CHARS:
                raise IllegalCharacter(r, x, ch)
            occ, tgt = GRID_CHARS[ch]
            V.append((x, y))
            if occ:
                C.add((x, y))
            if tgt:
                T.add((x, y))
    if not V:
        raise EmptyPolyomino("grid has no pixels")
    return Polyomino(V), frozenset(C), frozenset(T)


def render_grid(P: Polyomino, C=(), targets=()) -> str:
    C = set(C)
    T = set(targets)
    xs = [x for x, _ in P.pixels]
    ys = [y for _, y in P.pixels]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    out = []
    for y in range(y1, y0 - 1, -1):
        row = []
        for x in range(x0, x1 + 1):
            p = (x, y)
            if p not in P.index:
                row.append(".")
            elif p in C and p in T:
                row.append("@")
            elif p in C:
                row.append("o")
            elif p in T:
                row.append("X")
            else:
                row.append("#")
        out.append("".join(row).rstrip("."))
    return "\n".join(out) + "\n"


def parse_pixels(s: str):
    """Parse "x,y;x,y" into a list of pixels."""
    out = []
    for tok in s.split(";"):
        tok = tok.strip()
        if tok:
            a, b = tok.split(",")
            out.append((int(a), int(b)))
    return out


def format_pixels(ps) -> str:
    return ";".join(f"{x},{y}" for x, y in sort_pixels(ps))
