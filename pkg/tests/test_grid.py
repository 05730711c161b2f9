import pytest
from hypothesis import given, strategies as st

from conftest import knot_grids
from gridshell.errors import (
    BadCharacter,
    IndexTooSmall,
    MultiComponent,
    NonSquare,
    NotPermutation,
    SharedCell,
)
from gridshell.grid import GridDiagram, derive_numbering, parse_grid, recut, serialize


def test_parse_minimal_unknot():
    G = parse_grid("XO\nOX")
    assert G.n == 2
    assert G.x_cells == {(0, 1), (1, 0)}
    assert G.o_cells == {(0, 0), (1, 1)}


@pytest.mark.parametrize(
    "text, exc",
    [
        ("XX\nOO\n", NotPermutation),
        ("XO.\nOX\n..\n", NonSquare),
        ("XO\nOY\n", BadCharacter),
        ("X\n", IndexTooSmall),
        ("XO\nXO\n", NotPermutation),
    ],
)
def test_parse_rejects(text, exc):
    with pytest.raises(exc):
        parse_grid(text)


def test_shared_cell_and_two_components():
    with pytest.raises(SharedCell):
        GridDiagram(2, (0, 1), (0, 1))
    # two unknotted 2x2 blocks on the diagonal
    with pytest.raises(MultiComponent):
        parse_grid("..XO\n..OX\nXO..\nOX..\n")
    with pytest.raises(IndexTooSmall):
        GridDiagram(1, (0,), (0,))


def test_corpus_parses(corpus):
    assert corpus["trefoil-5a"].n == 5
    assert corpus["trefoil-5a"] != corpus["trefoil-5b"]
    assert corpus["figure8-7"].n == 7


def test_numbering_unknot(unknot2):
    num = unknot2.numbering
    # X_1 in column 0 at row 1; O_1 in that row sits in column 1, so X_2 is in column 1
    assert num.x_index == (1, 2)
    assert num.o_index == (2, 1)


def _check_numbering(G):
    num = derive_numbering(G)
    assert sorted(num.x_index) == sorted(num.o_index) == list(range(1, G.n + 1))
    assert num.x_index[0] == 1
    for c in range(G.n):
        i = num.x_index[c]
        # O_i shares a row with X_i
        assert num.o_index[G.o_row_to_col[G.x_col_to_row[c]]] == i
    for c in range(G.n):
        # X_{i+1} shares a column with O_i
        assert num.x_index[c] == num.o_index[c] % G.n + 1


def test_numbering_corpus(corpus):
    for G in corpus.values():
        _check_numbering(G)


@given(knot_grids(2, 7))
def test_numbering_rules(G):
    _check_numbering(G)


@given(knot_grids(2, 7))
def test_serialize_round_trip(G):
    assert parse_grid(serialize(G)) == G


def test_recut_unknot(unknot2):
    assert recut(unknot2, 0, 0) == unknot2
    assert serialize(recut(unknot2, 1, 0)) == "OX\nXO\n"


@given(knot_grids(2, 6), st.integers(0, 10), st.integers(0, 10))
def test_recut_inverse(G, a, b):
    n = G.n
    a, b = a % n, b % n
    assert recut(recut(G, a, b), n - a, n - b) == G
