"""Symbol gadgets for the general-alphabet supersequence instances.

Key: the symbol's bits, most significant first. Value: (exit column, row of
the incoming chimney top, box rows from top to bottom). The entry is the
bottom-right box pixel. The incoming chimney runs in column -1 up to the
given row, the exit chimney leaves the box upwards in the given column.

Layouts were found offline by a SAT search over small boxes and are
checked again by verify_scs_general on every generated instance.
"""

GADGETS = {
    "0": (3, 1, "..##./.####/#####/.##.#"),
    "1": (0, 1, "#../###/##./.##"),
    "00": (5, 2, "...###/..##../#####./#####./.#####/.##.##"),
    "01": (0, 1, "##.#/####/####/..##"),
    "10": (3, 1, "##.#/####/###./.###"),
    "11": (0, 2, "##../.##./###./..##/.###"),
    "000": (1, 2, "##...../###..../..###../######./######./.######/.###.##"),
    "001": (0, 2, "#.###./#.####/######/.#####/#####./.#####/..#.##"),
    "010": (4, 1, "##.##.#/####..#/.######"),
    "011": (2, 1, "..####/.###../####.#/.#####"),
    "100": (4, 1, "##.##../##.###./######./.######"),
    "101": (0, 3, "#.#../###../.####/####./..##./.###./.####"),
    "110": (6, 3, "###.###/#####../..####./.#####./.######"),
    "111": (0, 3, "##.../.##../###../..##./.###./.####"),
}

MAX_BITS = 3


def gadget(bits: str):
    """(pixels, entry, exit column, chimney row, width, height) in box coordinates."""
    xc, yt, text = GADGETS[bits]
    rows = text.split("/")
    H, W = len(rows), len(rows[0])
    pix = {(x, H - 1 - i) for i, row in enumerate(rows) for x, ch in enumerate(row) if ch == "#"}
    return pix, (W - 1, 0), xc, yt, W, H
