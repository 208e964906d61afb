import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltgather import oracle
from tiltgather.dynamics import FT_BLOCK, FT_MERGE, S1_BLOCK, S1_MERGE, apply
from tiltgather.errors import BudgetExceeded, CardinalityMismatch, NotARectangle, PixelOutsidePolyomino
from tiltgather.geometry import Polyomino

import naive
from strategies import instances, polyominoes


def rect(w, h):
    return Polyomino({(x, y) for x in range(w) for y in range(h)})


SQ = rect(2, 2)
ROW4 = rect(4, 1)
L3 = Polyomino({(0, 0), (1, 0), (0, 1)})


def test_sgs_small():
    assert oracle.sgs_exact(SQ, SQ.V) == (2, "UL")
    assert oracle.sgs_exact(SQ, {(0, 0)}) == (0, "")
    assert oracle.sgs_exact(ROW4, ROW4.V) == (1, "L")
    with pytest.raises(ValueError):
        oracle.sgs_exact(SQ, set())


@settings(max_examples=150, deadline=None)
@given(instances(14, 0))
def test_sgs_matches_reference(inst):
    P, C, _ = inst
    got = oracle.sgs_exact(P, C)
    ref = naive.sgs(P.V, C)
    assert (got is None) == (ref is None)
    if got is not None:
        assert got[0] == ref
        assert len(apply(P, C, got[1])) == 1


@settings(max_examples=100, deadline=None)
@given(instances(12, 0))
def test_explore_matches_reference(inst):
    P, C, _ = inst
    g = oracle.explore(P, C, FT_BLOCK)
    ref = naive.reachable(P.V, C)
    assert set(g.configurations()) == ref
    for conf in list(g.visited)[:20]:
        c = frozenset(P.pixels[i] for i in conf)
        assert apply(P, C, g.word_to(conf), FT_BLOCK) == c


@settings(max_examples=60, deadline=None)
@given(instances(12, 0), st.sampled_from([FT_BLOCK, S1_BLOCK, FT_MERGE, S1_MERGE]))
def test_bfs_depth_is_shortest(inst, m):
    P, C, _ = inst
    g = oracle.explore(P, C, m)
    for conf in g.order[:30]:
        assert len(g.word_to(conf)) == g.depth(conf)


def test_occupancy():
    C = {(0, 0)}
    assert oracle.occupancy(L3, C, (0, 1))
    assert oracle.occupancy(L3, C, (1, 0), witness=True) == "R"
    assert oracle.occupancy(SQ, {(0, 0)}, (0, 0), witness=True) == ""
    with pytest.raises(PixelOutsidePolyomino):
        oracle.occupancy(SQ, C, (3, 3))


def test_occupancy_blocking_stack():
    # two particles in a row: the far cell is taken only by the leading one
    C = {(0, 0), (1, 0)}
    assert oracle.occupancy(ROW4, C, (2, 0), FT_BLOCK)
    assert not oracle.occupancy(ROW4, {(0, 0)}, (1, 0), FT_BLOCK)


def test_shape_reconfiguration():
    assert oracle.shape_reconfiguration(ROW4, {(0, 0), (1, 0)}, {(2, 0), (3, 0)}) == "R"
    assert oracle.shape_reconfiguration(ROW4, {(0, 0), (1, 0)}, {(0, 0), (3, 0)}) is None
    with pytest.raises(CardinalityMismatch):
        oracle.shape_reconfiguration(ROW4, {(0, 0)}, {(0, 0), (1, 0)})
    assert oracle.shape_reconfiguration(ROW4, {(0, 0), (1, 0)}, {(3, 0)}, FT_MERGE) == "R"


def test_tilt_cover():
    assert oracle.tilt_cover(SQ, {(0, 0), (1, 1)}, {(0, 1)}) == "U"
    assert oracle.tilt_cover(ROW4, {(1, 0)}, {(1, 0), (2, 0)}) is None


def test_tilt_cover_deterministic():
    assert oracle.tilt_cover_deterministic(SQ, {(0, 0)}, {(1, 1)}, "RU") == 1
    assert oracle.tilt_cover_deterministic(SQ, {(0, 0)}, {(0, 0)}, "RU") == 0
    assert oracle.tilt_cover_deterministic(SQ, {(0, 0)}, {(0, 1)}, "RU") is None
    with pytest.raises(ValueError):
        oracle.tilt_cover_deterministic(SQ, {(0, 0)}, {(0, 1)}, "")


def test_rectangle_census():
    assert oracle.rectangle_census(rect(1, 1), {(0, 0)}) == 1
    assert oracle.rectangle_census(SQ, {(0, 0)}) == 4
    with pytest.raises(NotARectangle):
        oracle.rectangle_census(L3, {(0, 0)})


def test_rectangle_census_bounded():
    rng = random.Random(9)
    worst = 0
    for w in range(1, 4):
        for h in range(1, 4):
            P = rect(w, h)
            for _ in range(30):
                C = {p for p in P.pixels if rng.random() < 0.5} or {P.pixels[0]}
                worst = max(worst, oracle.rectangle_census(P, C))
    assert worst <= 13


def test_budget():
    P = rect(5, 5)
    with pytest.raises(BudgetExceeded):
        oracle.explore(P, {(0, 0), (2, 2), (4, 1)}, FT_BLOCK, budget=3)


def test_verify_word():
    assert oracle.verify_word(SQ, SQ.V, "UL") == {(0, 1)}
    assert oracle.verify_word(SQ, SQ.V, "ul", FT_BLOCK) == SQ.V


@settings(max_examples=60, deadline=None)
@given(polyominoes(10))
def test_gathering_answers_agree(P):
    # a full gathering word exists iff every pair can be merged
    s = oracle.sgs_exact(P, P.V)
    pairs_ok = all(naive.sgs(P.V, {p, q}) is not None for p in P.pixels for q in P.pixels if p < q)
    assert (s is not None) == pairs_ok
