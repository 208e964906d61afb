import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltgather import oracle
from tiltgather.automata import (
    Acceptor,
    SemiAutomaton,
    reset_threshold_exact,
    tally_cycle,
    tally_intersection_smallest,
)
from tiltgather.dynamics import FT_BLOCK, FT_MERGE, S1_BLOCK, apply, singleton_move, singleton_path
from tiltgather.errors import (
    EmptyWordList,
    InvalidAlphabet,
    InvalidTallyShape,
    NotOddPrime,
    NotRepresentativeClosed,
)
from tiltgather.generators import lower_bound, scs, simulation, tally
from tiltgather.geometry import classify

import naive
from strategies import automata

A0 = Acceptor(SemiAutomaton(3, ("0", "1"), {"0": (1, 2, 2), "1": (0, 1, 2)}), 0, frozenset({1}))
EXAMPLE_PAIR = [tally_cycle(7, {1, 3, 4}, 3), tally_cycle(5, {2, 3}, 4)]
DISJOINT_PAIR = [tally_cycle(3, {1}), tally_cycle(3, {2})]


def bfs_moves(P, p, goal):
    dist = {p: 0}
    todo = [p]
    for a in todo:
        if a in goal:
            return dist[a]
        for v in "UDLR":
            b = singleton_move(P, a, v)
            if b not in dist:
                dist[b] = dist[a] + 1
                todo.append(b)
    return None


# ---------------------------------------------------------------- simulation


def test_small_acceptor_layout():
    I = simulation.gen_simulation(A0)
    assert I.polyomino.n == 60
    assert bfs_moves(I.polyomino, I.reps[0], {I.reps[1]}) == 4


@settings(max_examples=40, deadline=None)
@given(automata(1, 5))
def test_simulation_copies_transitions(A):
    I = simulation.gen_simulation(A)
    P = I.polyomino
    assert P.n == 12 * (2 * A.n - 1)
    for q, p in I.reps.items():
        assert singleton_path(P, p, simulation.ZERO) == I.reps[A.delta["0"][q]]
        assert singleton_path(P, p, simulation.ONE) == I.reps[A.delta["1"][q]]


@settings(max_examples=25, deadline=None)
@given(automata(1, 4))
def test_maze_layout_copies_transitions(A):
    I = simulation.gen_simulation(A, maze=True)
    assert classify(I.polyomino)["maze"]
    for q, p in I.reps.items():
        assert singleton_path(I.polyomino, p, I.encode("01")) == I.reps[A.run(q, "01")]


def test_simulation_rejects_other_alphabets():
    A = SemiAutomaton(2, ("a", "b"), {"a": (0, 1), "b": (1, 0)})
    with pytest.raises(InvalidAlphabet):
        simulation.gen_simulation(A)


def test_subset_threshold_times_four():
    rng = random.Random(11)
    for n in (2, 3, 4):
        A = SemiAutomaton(n, ("0", "1"), {a: tuple(rng.randrange(n) for _ in range(n))
                                          for a in "01"})
        I = simulation.gen_simulation(A)
        S = list(range(n))
        rt = reset_threshold_exact(A, S)
        s = oracle.sgs_exact(I.polyomino, [I.reps[q] for q in S])
        assert (rt is None) == (s is None)
        if rt is not None:
            assert s[0] == 4 * rt[0]


def test_canonicalize_cycle_word():
    A = A0.semi
    I = simulation.gen_simulation(A)
    w = I.encode("0110")
    u = simulation.canonicalize_cycle_word(I, w)
    assert len(u) <= len(w) and len(u) % 4 == 0
    for q, p in I.reps.items():
        assert singleton_path(I.polyomino, p, u) == singleton_path(I.polyomino, p, w)
    assert simulation.canonicalize_cycle_word(I, "") == ""


def test_canonicalize_rejects_foreign_word():
    I = simulation.gen_simulation(A0.semi)
    with pytest.raises(NotRepresentativeClosed):
        simulation.canonicalize_cycle_word(I, "UUUU")


# ---------------------------------------------------------------- tally


def test_example_pair_instance():
    I = tally.gen_tally(EXAMPLE_PAIR)
    assert tally_intersection_smallest(EXAMPLE_PAIR) == 8
    w = tally.gathering_word(8)
    assert w == "RDLU" * 8 + "LDRDLD"
    assert apply(I.polyomino, I.C0, w, FT_MERGE) == {I.goal_bottom}
    assert [ell for ell in range(20) if tally.accepting_at(I, ell)] == [8, 14, 19]
    s = oracle.sgs_exact(I.polyomino, I.C0)
    assert s[0] <= len(w)


def test_tally_shape_flags():
    checks = tally.verify_tally(tally.gen_tally(EXAMPLE_PAIR))
    assert checks["cycle"] and checks["accepting_exit"] and checks["goal_degree_one"]
    assert not checks["simple"]


def test_tally_disjoint_pair_never_accepts():
    I = tally.gen_tally(DISJOINT_PAIR)
    assert not any(tally.accepting_at(I, ell) for ell in range(12))


@pytest.mark.parametrize("primes,ell", [([3], 2), ([3, 5], 14), ([3, 5, 7], 104)])
def test_prime_tally(primes, ell):
    autos = tally.gen_prime_tally(primes)
    assert tally_intersection_smallest(autos) == ell
    I = tally.gen_tally(autos)
    assert [k for k in range(ell + 1) if tally.accepting_at(I, k)] == [ell]


@pytest.mark.parametrize("bad", [[2], [9], [3, 3], [1]])
def test_prime_tally_rejects(bad):
    with pytest.raises(NotOddPrime):
        tally.gen_prime_tally(bad)


def test_tally_rejects_bad_shape():
    with pytest.raises(InvalidTallyShape):
        tally.gen_tally([])
    with pytest.raises(InvalidTallyShape):
        tally.gen_tally([(4, {1}, 0)])


@pytest.mark.parametrize("model", [FT_BLOCK, S1_BLOCK])
def test_tiltcover_example_pair(model):
    I = tally.gen_tiltcover(EXAMPLE_PAIR)
    assert oracle.tilt_cover_deterministic(I.polyomino, I.C, I.target, I.cycle, model) == 8


def test_tiltcover_disjoint_pair():
    I = tally.gen_tiltcover(DISJOINT_PAIR)
    assert oracle.tilt_cover_deterministic(I.polyomino, I.C, I.target, I.cycle, FT_BLOCK) is None


def test_occupancy_variant():
    P, C0, probe, goal = tally.gen_occupancy_variant(EXAMPLE_PAIR)
    assert probe in goal and len(goal) == 2 and len(C0) == 2
    assert oracle.occupancy(P, C0, probe, FT_BLOCK)
    with pytest.raises(InvalidTallyShape):
        tally.gen_occupancy_variant(EXAMPLE_PAIR, k=1)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.data())
def test_tally_cycle_transport(rho, data):
    acc = data.draw(st.sets(st.integers(1, rho - 1), min_size=1, max_size=rho - 2))
    A = tally_cycle(rho, acc, data.draw(st.integers(0, rho - 1)))
    I = tally.gen_tally([A])
    r = I.reps[0]
    for j in range(rho):
        assert singleton_path(I.polyomino, r[j], tally.CYCLE) == r[(j + 1) % rho]
        assert (singleton_path(I.polyomino, r[j], tally.EXIT) == I.goal_bottom) == (j in acc)


# ---------------------------------------------------------------- supersequences


@pytest.mark.parametrize("words,k,sgs", [
    (["0", "0"], 1, 3),
    (["0", "1"], 2, 5),
    (["01", "10"], 3, 7),
    (["10", "001", "01", "111"], 5, 11),
])
def test_binary_supersequence_instances(words, k, sgs):
    I = scs.gen_scs_binary(words)
    assert naive.scs_length(I.words) == k
    assert oracle.sgs_exact(I.polyomino, I.configuration)[0] == sgs == 2 * k + 1
    sup = scs.shortest_supersequence(words)
    assert len(sup) == k
    w = scs.scs_to_moves(sup)
    assert len(apply(I.polyomino, I.configuration, w)) == 1


@settings(max_examples=30, deadline=None)
@given(st.lists(st.text("01", min_size=1, max_size=3), min_size=2, max_size=3))
def test_binary_supersequence_word_gathers(words):
    I = scs.gen_scs_binary(words)
    sup = scs.shortest_supersequence(words)
    assert len(sup) == naive.scs_length(I.words)
    assert len(apply(I.polyomino, I.configuration, scs.scs_to_moves(sup))) == 1


def test_symbol_blocks():
    assert scs.symbol_block(5, 3) == "UL" + "URUL" + "DRUR" + "DLUL" + "URDR"
    assert scs.symbol_block(0, 1) == "ULDRURURDR"
    assert all(len(scs.symbol_block(a, 2)) == 14 for a in range(4))
    assert scs.bit_width(2) == 1 and scs.bit_width(5) == 3 and scs.bit_width(8) == 3


@pytest.mark.parametrize("words,sigma", [
    ([[0], [1]], 2), ([[0, 1], [1, 1, 0]], 2), ([[2, 3], [1]], 4), ([[5, 0], [7, 3]], 8),
])
def test_general_supersequence_instances(words, sigma):
    I = scs.gen_scs_general(words, sigma)
    ell = I.bits
    assert I.meta["block"] == 6 + 4 * ell
    sup = scs.shortest_supersequence(words, 2 ** ell)
    w = scs.scs_to_moves(sup, ell)
    assert len(w) == 8 + len(sup) * I.meta["block"]
    lo, hi, Y = I.baseline
    assert apply(I.polyomino, I.configuration, w) == {(hi, Y)}


def test_general_supersequence_oracle_values():
    # the gadget layouts make the designed word an upper bound, not the optimum
    I = scs.gen_scs_general([[0], [1]])
    s = oracle.sgs_exact(I.polyomino, I.configuration)[0]
    assert s == 16 and len(scs.scs_to_moves("01", 1)) == 28


def test_general_supersequence_limits():
    with pytest.raises(ValueError):
        scs.gen_scs_general([[0], [1]], 9)
    with pytest.raises(ValueError):
        scs.gen_scs_general([[0], [2]], 2)
    with pytest.raises(EmptyWordList):
        scs.gen_scs_general([[0]], 2)


def test_supersequence_tie_break():
    assert scs.shortest_supersequence(["01", "10"]) == "010"
    assert scs.shortest_supersequence([[2], [1]], 3) == "12"


# ---------------------------------------------------------------- two-particle family


@pytest.mark.parametrize("m,sgs", [(1, 7), (2, 35), (3, 79)])
def test_lower_bound_family(m, sgs):
    I = lower_bound.gen_lower_bound(m)
    assert oracle.sgs_exact(I.polyomino, I.configuration())[0] == sgs
    rep = I.report
    assert rep["congruence"] and rep["divergence_letters"] == "LR"
    assert rep["divergence_point"] == (12 * m, 1)


def test_lower_bound_cycle_and_index():
    I = lower_bound.gen_lower_bound(2)
    assert [I.idx[p] for p in I.cycle] == list(range(I.M))
    for i, p in enumerate(I.cycle):
        assert singleton_path(I.polyomino, p, "RDLU") == I.cycle[(i + 1) % I.M]


def test_lower_bound_rejects_zero():
    with pytest.raises(ValueError):
        lower_bound.gen_lower_bound(0)
