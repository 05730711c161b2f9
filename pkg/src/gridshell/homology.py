"""Chain complexes over F2 and bigraded homology of grid complexes.

Matrices are kept column-sparse as Python ints used as bitsets: bit ``i``
of a column is set when the image contains basis element ``i`` of the
target degree.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .domains import moves_from
from .errors import CapExceeded, NotAComplex
from .grid import GridDiagram
from .states import DEFAULT_INDEX_CAP, alexander, enumerate_generators, maslov

__all__ = [
    "ChainComplexF2",
    "BigradedDims",
    "rank_f2",
    "homology",
    "tilde_complexes",
    "tilde_homology",
    "minus_homology_truncated",
    "total_rank",
    "dims_to_rows",
]

BigradedDims = dict  # (maslov, alexander) -> dimension


def _as_bitmask(col) -> int:
    if isinstance(col, (int, np.integer)):
        return int(col)
    mask = 0
    for i in col:
        mask ^= 1 << int(i)
    return mask


def rank_f2(mat) -> int:
    """Rank over F2.

    ``mat`` is either a dense 2-d array (rows x columns) or a sequence of
    columns, each an int bitmask or an iterable of row indices.
    """
    if isinstance(mat, np.ndarray):
        cols = [_as_bitmask(np.flatnonzero(mat[:, j] % 2)) for j in range(mat.shape[1])]
    else:
        cols = [_as_bitmask(c) for c in mat]
    pivots: dict[int, int] = {}
    rank = 0
    for v in cols:
        while v:
            low = v & -v
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                rank += 1
                break
            v ^= p
    return rank


@dataclass
class ChainComplexF2:
    """A complex in one Alexander sector.

    ``basis[M]`` lists the generators of degree ``M``; ``diff[M][j]`` is the
    bitmask (over ``basis[M - 1]``) of the boundary of ``basis[M][j]``.
    """

    basis: dict[int, list] = field(default_factory=dict)
    diff: dict[int, list[int]] = field(default_factory=dict)
    alexander: int | None = None

    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def dim(self, m: int) -> int:
        return len(self.basis.get(m, ()))

    def boundary_squared_is_zero(self) -> bool:
        for m, cols in self.diff.items():
            below = self.diff.get(m - 1)
            if not below:
                continue
            for v in cols:
                acc = 0
                while v:
                    low = v & -v
                    acc ^= below[low.bit_length() - 1]
                    v ^= low
                if acc:
                    return False
        return True

    def is_empty(self) -> bool:
        return not any(self.basis.values())


def homology(C: ChainComplexF2, check: bool = True) -> BigradedDims:
    """dim H_M = dim C_M - rank d_M - rank d_{M+1}, keyed by (M, A)."""
    if check and not C.boundary_squared_is_zero():
        raise NotAComplex("boundary map does not square to zero")
    ranks = {m: rank_f2(cols) for m, cols in C.diff.items()}
    out = {}
    for m in C.degrees():
        d = C.dim(m) - ranks.get(m, 0) - ranks.get(m + 1, 0)
        if d:
            out[(m, C.alexander)] = d
    return out


def tilde_complexes(G: GridDiagram, cap: int = DEFAULT_INDEX_CAP) -> list[ChainComplexF2]:
    """The U_i = 0 complexes, one per Alexander grading, on all n! generators."""
    gens = enumerate_generators(G, cap)
    sectors: dict[int, dict[int, list]] = defaultdict(lambda: defaultdict(list))
    for g in gens:
        sectors[alexander(G, g)][maslov(G, g)].append(g)
    out = []
    for a in sorted(sectors):
        basis = {m: sectors[a][m] for m in sorted(sectors[a])}
        index = {m: {g: i for i, g in enumerate(b)} for m, b in basis.items()}
        diff = {}
        for m, b in basis.items():
            below = index.get(m - 1, {})
            cols = []
            for g in b:
                v = 0
                for mv in moves_from(G, g):
                    if mv.x_free and mv.o_free:
                        v ^= 1 << below[mv.target]
                cols.append(v)
            diff[m] = cols
        out.append(ChainComplexF2(basis, diff, a))
    return out


def tilde_homology(G: GridDiagram, cap: int = DEFAULT_INDEX_CAP) -> BigradedDims:
    out = {}
    for C in tilde_complexes(G, cap):
        out.update(homology(C))
    return out


def minus_homology_truncated(G: GridDiagram, a: int, m_floor: int) -> tuple[BigradedDims, int]:
    """Homology of the Alexander-``a`` sector truncated below ``m_floor``.

    Chains of degree below the floor form a subcomplex, so the band is a
    quotient complex; its homology agrees with the full complex in degrees
    ``M >= m_floor + 1`` (the returned ``valid_above``).  Only those degrees
    are reported.
    """
    from .poset import gt_chain_complex

    if G.n > DEFAULT_INDEX_CAP:
        raise CapExceeded(f"grid index {G.n} exceeds cap {DEFAULT_INDEX_CAP}")
    C = gt_chain_complex(G, a, m_floor)
    valid_above = m_floor + 1
    dims = {k: v for k, v in homology(C).items() if k[0] >= valid_above}
    return dims, valid_above


def minus_sectors(G: GridDiagram, m_floor: int) -> list[int]:
    """Alexander gradings that have at least one state with M >= m_floor."""
    out = set()
    for g in enumerate_generators(G):
        m, a = maslov(G, g), alexander(G, g)
        s = 0
        while m - 2 * s >= m_floor:
            out.add(a - s)
            s += 1
    return sorted(out, reverse=True)


def total_rank(dims: BigradedDims) -> int:
    return sum(dims.values())


def dims_to_rows(dims: BigradedDims) -> list[list[int]]:
    """``[[M, A, dim], ...]`` sorted by A descending then M descending."""
    return [[m, a, d] for (m, a), d in sorted(dims.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))]


def dims_from_rows(rows: Iterable[Sequence[int]]) -> BigradedDims:
    return {(int(m), int(a)): int(d) for m, a, d in rows}
