from __future__ import annotations

import pytest
from hypothesis import strategies as st

from gridshell.corpus import CORPUS_NAMES, corpus_text
from gridshell.grid import GridDiagram, parse_grid


@pytest.fixture(scope="session")
def corpus() -> dict[str, GridDiagram]:
    return {name: parse_grid(corpus_text(name)) for name in CORPUS_NAMES}


@pytest.fixture(scope="session")
def unknot2() -> GridDiagram:
    return parse_grid("XO\nOX\n")


@st.composite
def knot_grids(draw, min_n: int = 2, max_n: int = 5) -> GridDiagram:
    """Knot grids built by walking the knot: X_k at (p_k, r_k), O_k at (p_{k+1}, r_k)."""
    n = draw(st.integers(min_n, max_n))
    cols = draw(st.permutations(range(n)))
    rows = draw(st.permutations(range(n)))
    xs = [0] * n
    os_ = [0] * n
    for k in range(n):
        xs[cols[k]] = rows[k]
        os_[cols[(k + 1) % n]] = rows[k]
    return GridDiagram(n, tuple(xs), tuple(os_))


@st.composite
def grids_with_generator(draw, min_n: int = 2, max_n: int = 5):
    G = draw(knot_grids(min_n, max_n))
    gen = tuple(draw(st.permutations(range(G.n))))
    return G, gen
