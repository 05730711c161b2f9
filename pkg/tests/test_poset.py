import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gridshell.errors import CapExceeded, EmptyInterval, NotGraded
from gridshell.poset import (
    FinitePoset,
    SimplicialComplex,
    barycentric_above,
    covers_down,
    covers_up,
    down_dag,
    interval,
    leq,
    maximal_chains,
    order_complex,
    product,
    states_in_band,
)
from gridshell.states import GridState, bigrading, enumerate_generators

SIGMA_ID = (0, 1)
SIGMA_SW = (1, 0)


def small_states(G, max_u=1):
    for g in enumerate_generators(G):
        for k in itertools.product(range(max_u + 1), repeat=G.n):
            if sum(k) <= max_u:
                yield GridState(g, k)


def test_covers_unknot(unknot2):
    x = GridState.bare(SIGMA_ID)
    lows = sorted(c.lower for c in covers_down(unknot2, x))
    assert lows == sorted([GridState(SIGMA_SW, (1, 0)), GridState(SIGMA_SW, (0, 1))])
    assert covers_down(unknot2, GridState.bare(SIGMA_SW)) == []
    assert x in [c.upper for c in covers_up(unknot2, GridState(SIGMA_SW, (1, 0)))]
    assert covers_up(unknot2, GridState.bare(SIGMA_SW)) == []


def test_cover_duality(corpus):
    for name in ("unknot-2", "unknot-3"):
        G = corpus[name]
        states = list(small_states(G, 2))
        for z in states:
            for c in covers_up(G, z):
                assert c in covers_down(G, c.upper)
            for c in covers_down(G, z):
                assert c in covers_up(G, c.lower)


def test_covers_bigrading(corpus):
    for G in corpus.values():
        if G.n > 5:
            continue
        for x in small_states(G, 1):
            bx = bigrading(G, x)
            for c in covers_down(G, x):
                by = bigrading(G, c.lower)
                assert (by.maslov, by.alexander) == (bx.maslov - 1, bx.alexander)


def test_leq_basics(corpus):
    G = corpus["trefoil-5a"]
    x = GridState.bare((2, 0, 4, 1, 3))
    assert leq(G, x, x)
    other = next(GridState.bare(g) for g in enumerate_generators(G) if bigrading(G, GridState.bare(g)).alexander != bigrading(G, x).alexander)
    assert not leq(G, other, x) and not leq(G, x, other)


def test_intervals_unknot(unknot2):
    x = GridState.bare(SIGMA_ID)
    I = interval(unknot2, x, x)
    assert I.elements == (x,) and I.covers == ()
    y = GridState(SIGMA_SW, (1, 0))
    I = interval(unknot2, y, x)
    assert len(I.elements) == 2 and len(I.covers) == 1
    with pytest.raises(EmptyInterval):
        interval(unknot2, x, y)


def chain_count_by_matrix(I) -> int:
    idx = {z: i for i, z in enumerate(I.elements)}
    A = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for c in I.covers:
        A[idx[c.lower], idx[c.upper]] = 1
    P = np.linalg.matrix_power(A, I.length - 1)
    return int(P[idx[I.bottom], idx[I.top]])


def test_chain_counts(corpus):
    G = corpus["trefoil-5a"]
    seen = {2: 0, 3: 0}
    for g in enumerate_generators(G)[:30]:
        x = GridState.bare(g)
        dag = down_dag(G, x, 3)
        for y in dag:
            I = interval(G, y, x)
            chains = maximal_chains(I)
            assert len(chains) == chain_count_by_matrix(I)
            if I.length in seen:
                assert len(chains) == I.length - 1  # 1 chain at length 2, 2 at length 3
                seen[I.length] += 1
            for ch in chains:
                assert ch[0] == y and ch[-1] == x and len(ch) == I.length
    assert seen[2] and seen[3]


def test_chain_cap(corpus):
    G = corpus["trefoil-5a"]
    x = GridState.bare((2, 0, 4, 1, 3))
    dag = down_dag(G, x, 3)
    y = next(z for z in sorted(dag) if bigrading(G, x).maslov - bigrading(G, z).maslov == 3)
    I = interval(G, y, x)
    with pytest.raises(CapExceeded):
        maximal_chains(I, cap=3)
    with pytest.raises(CapExceeded):
        maximal_chains(I, budget=1)


def test_barycentric_above(corpus):
    G = corpus["trefoil-5a"]
    x = GridState.bare((2, 0, 4, 1, 3))
    dag = down_dag(G, x, 2)
    for y in dag:
        I = interval(G, y, x)
        B = barycentric_above(I)
        ends = frozenset((y, x))
        gap = bigrading(G, x).maslov - bigrading(G, y).maslov
        if gap == 1:
            assert B.elements == (ends,)
        if gap == 2:
            (z1, z2) = [z for z in I.elements if z not in ends]
            assert set(B.elements) == {ends, ends | {z1}, ends | {z2}}
            assert set(B.covers) == {(ends, ends | {z1}), (ends, ends | {z2})}
        if gap >= 1:
            assert B.chain_length() == gap


def test_finite_poset_grading():
    with pytest.raises(NotGraded):
        FinitePoset("ab", [("a", "b")], {"a": 0, "b": 2})
    P = FinitePoset("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    assert P.leq("a", "d") and not P.leq("b", "c")
    assert P.minimal() == ["a"] and P.maximal() == ["d"]
    assert sorted(P.maximal_chains()) == [("a", "b", "d"), ("a", "c", "d")]


def chain_poset(k, tag):
    elems = [f"{tag}{i}" for i in range(k)]
    return FinitePoset(elems, list(zip(elems, elems[1:])), {e: i for i, e in enumerate(elems)})


def test_product_examples():
    P = chain_poset(3, "p")
    one = chain_poset(1, "q")
    PQ = product(P, one)
    assert len(PQ) == 3 and len(PQ.covers) == 2
    D = product(chain_poset(2, "a"), chain_poset(2, "b"))
    assert len(D) == 4 and len(D.covers) == 4
    assert len(D.maximal_chains()) == 2  # the diamond


def test_order_complex_examples():
    assert order_complex(chain_poset(1, "p")).facets == (frozenset({"p0"}),)
    D = FinitePoset("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    S = order_complex(D)
    assert set(S.facets) == {frozenset("abd"), frozenset("acd")}
    assert S.f_vector() == [4, 5, 2]
    assert S.euler_characteristic() == 1


@st.composite
def layered_posets(draw, tag):
    sizes = draw(st.lists(st.integers(1, 2), min_size=1, max_size=3))
    levels = [[f"{tag}{k}.{i}" for i in range(s)] for k, s in enumerate(sizes)]
    covers = []
    for lo, hi in zip(levels, levels[1:]):
        for b in hi:
            # every element above the bottom level covers at least one element
            picks = draw(st.lists(st.sampled_from(lo), min_size=1, max_size=len(lo), unique=True))
            covers += [(a, b) for a in picks]
    elems = [e for lvl in levels for e in lvl]
    return FinitePoset(elems, covers, {e: k for k, lvl in enumerate(levels) for e in lvl})


@settings(max_examples=60, deadline=None)
@given(layered_posets("p"), layered_posets("q"))
def test_product_order_and_euler(P, Q):
    PQ = product(P, Q)
    assert len(PQ) == len(P) * len(Q)
    for (p1, q1), (p2, q2) in itertools.product(PQ.elements, repeat=2):
        assert PQ.leq((p1, q1), (p2, q2)) == (P.leq(p1, p2) and Q.leq(q1, q2))
    chi = lambda X: order_complex(X).euler_characteristic()
    assert chi(PQ) == chi(P) * chi(Q)


def test_states_in_band(unknot2):
    got = states_in_band(unknot2, -1, -2)
    assert sorted(got) == sorted(
        [GridState(SIGMA_ID, (0, 0)), GridState(SIGMA_SW, (1, 0)), GridState(SIGMA_SW, (0, 1))]
    )
    assert states_in_band(unknot2, 3, -2) == []


def test_simplicial_complex_keeps_maximal_faces():
    S = SimplicialComplex([{1, 2, 3}, {1, 2}, {4}])
    assert set(S.facets) == {frozenset({1, 2, 3}), frozenset({4})}
    assert not S.is_pure() and S.dim == 2
