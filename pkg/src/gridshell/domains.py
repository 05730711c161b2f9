"""Domains (integer 2-chains on the grid torus) and empty rectangles.

Multiplicities are stored as an ``n x n`` integer array indexed
``mult[column, row]``.  A domain from generator ``x`` to generator ``y`` is
characterised by its corner sums: at every lattice point ``p``,
``UR + LL - UL - LR`` (the four cells around ``p``) equals
``[p in x] - [p in y]``.  A rectangle therefore has its bottom-left and
top-right corners on the initial generator.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import InternalContradiction, NotPositive
from .grid import GridDiagram
from .states import GridState, maslov

__all__ = [
    "Rectangle",
    "Domain",
    "MarkingCount",
    "Move",
    "rectangles_from",
    "moves_from",
    "rectangle_domain",
    "zero_domain",
    "marking_counts",
    "solve_domain",
    "maslov_index",
    "is_positive",
    "decompose",
    "boundary_consistent",
]


class Rectangle(NamedTuple):
    """Cyclic rectangle given by its bottom-left lattice corner and size."""

    col_start: int
    row_start: int
    width: int
    height: int

    def cells(self, n: int) -> list[tuple[int, int]]:
        return [
            ((self.col_start + dc) % n, (self.row_start + dr) % n)
            for dc in range(self.width)
            for dr in range(self.height)
        ]

    def contains_cell(self, n: int, c: int, r: int) -> bool:
        return (c - self.col_start) % n < self.width and (r - self.row_start) % n < self.height

    def columns(self, n: int) -> list[int]:
        return [(self.col_start + dc) % n for dc in range(self.width)]


@dataclass(eq=False)
class Domain:
    source: tuple[int, ...]
    target: tuple[int, ...]
    mult: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.source)

    def __eq__(self, other):
        if not isinstance(other, Domain):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and np.array_equal(self.mult, other.mult)
        )

    def __add__(self, other: "Domain") -> "Domain":
        if self.target != other.source:
            raise ValueError("domains do not compose")
        return Domain(self.source, other.target, self.mult + other.mult)

    def __sub__(self, other: "Domain") -> "Domain":
        """``D - R`` where ``R`` starts where ``D`` starts; the result starts at ``R``'s end."""
        if self.source != other.source:
            raise ValueError("domains do not share a source")
        return Domain(other.target, self.target, self.mult - other.mult)

    def __neg__(self) -> "Domain":
        return Domain(self.target, self.source, -self.mult)

    def is_zero(self) -> bool:
        return not self.mult.any()


class MarkingCount(NamedTuple):
    """Multiplicities at the markings, both vectors indexed by label - 1."""

    o_counts: tuple[int, ...]
    x_counts: tuple[int, ...]


class Move(NamedTuple):
    """An empty rectangle out of a generator, with marking bookkeeping."""

    rect: Rectangle
    target: tuple[int, ...]
    o_counts: tuple[int, ...]
    x_free: bool
    o_free: bool


def zero_domain(gen) -> Domain:
    gen = tuple(gen)
    return Domain(gen, gen, np.zeros((len(gen), len(gen)), dtype=np.int64))


def _swap(gen, i, j):
    out = list(gen)
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def rectangle_domain(source, rect: Rectangle) -> Domain:
    source = tuple(source)
    n = len(source)
    mult = np.zeros((n, n), dtype=np.int64)
    for c, r in rect.cells(n):
        mult[c, r] = 1
    j = (rect.col_start + rect.width) % n
    return Domain(source, _swap(source, rect.col_start, j), mult)


def rectangles_from(G: GridDiagram, gen) -> tuple[tuple[Rectangle, tuple[int, ...]], ...]:
    """All empty rectangles starting at ``gen``, in (bottom-left column, top-right column) order.

    Markings are ignored here; see :func:`moves_from` for marking counts.
    """
    return _rectangles(G.n, tuple(gen))


@lru_cache(maxsize=1 << 16)
def _rectangles(n: int, gen: tuple[int, ...]) -> tuple[tuple[Rectangle, tuple[int, ...]], ...]:
    """Empty rectangles out of ``gen`` on an index-``n`` torus.

    Each ordered pair of columns gives exactly one candidate on the torus:
    bottom-left at ``(i, gen[i])`` and top-right at ``(j, gen[j])``.
    """
    out = []
    for i in range(n):
        a = gen[i]
        for j in range(n):
            if j == i:
                continue
            w = (j - i) % n
            h = (gen[j] - a) % n
            empty = True
            for dc in range(1, w):
                c = (i + dc) % n
                if 0 < (gen[c] - a) % n < h:
                    empty = False
                    break
            if empty:
                out.append((Rectangle(i, a, w, h), _swap(gen, i, j)))
    return tuple(out)


def marking_counts(G: GridDiagram, D: Domain) -> MarkingCount:
    num = G.numbering
    o = [0] * G.n
    x = [0] * G.n
    for c in range(G.n):
        o[num.o_index[c] - 1] += int(D.mult[c, G.o_col_to_row[c]])
        x[num.x_index[c] - 1] += int(D.mult[c, G.x_col_to_row[c]])
    return MarkingCount(tuple(o), tuple(x))


@lru_cache(maxsize=1 << 17)
def moves_from(G: GridDiagram, gen: tuple[int, ...]) -> tuple[Move, ...]:
    n = G.n
    num = G.numbering
    out = []
    for rect, target in _rectangles(n, gen):
        o = [0] * n
        x_free = True
        for c in rect.columns(n):
            if (G.o_col_to_row[c] - rect.row_start) % n < rect.height:
                o[num.o_index[c] - 1] += 1
            if (G.x_col_to_row[c] - rect.row_start) % n < rect.height:
                x_free = False
        out.append(Move(rect, target, tuple(o), x_free, not any(o)))
    return tuple(out)


def boundary_consistent(D: Domain) -> bool:
    """Check the corner-sum condition that makes ``D`` a domain from source to target."""
    n = D.n
    m = D.mult
    src = set(enumerate(D.source))
    tgt = set(enumerate(D.target))
    for i in range(n):
        for j in range(n):
            corner = m[i, j] + m[i - 1, j - 1] - m[i - 1, j] - m[i, j - 1]
            if corner != ((i, j) in src) - ((i, j) in tgt):
                return False
    return True


def _base_domain(x: tuple[int, ...], y: tuple[int, ...]) -> Domain:
    """Some domain from x to y, built from column transpositions (selection sort)."""
    n = len(x)
    u = list(x)
    mult = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        if u[j] == y[j]:
            continue
        k = u.index(y[j], j + 1)
        lo, hi = sorted((u[j], u[k]))
        sign = 1 if u[j] < u[k] else -1
        mult[j:k, lo:hi] += sign
        u[j], u[k] = u[k], u[j]
    return Domain(tuple(x), tuple(y), mult)


def solve_domain(G: GridDiagram, x: GridState, y: GridState) -> Domain | None:
    """The unique domain from x to y with no X multiplicity and O multiplicities l - k, if any."""
    n = G.n
    D = _base_domain(x.gen, y.gen)
    num = G.numbering
    # unknowns: row-annulus coefficients ("r", i) and column-annulus coefficients ("c", j)
    adj: dict[tuple[str, int], list[tuple[tuple[str, int], int]]] = {}
    edges = []
    for c in range(n):
        r = G.x_col_to_row[c]
        edges.append((c, r, -int(D.mult[c, r])))
        r = G.o_col_to_row[c]
        label = num.o_index[c]
        edges.append((c, r, y.u_exp[label - 1] - x.u_exp[label - 1] - int(D.mult[c, r])))
    for c, r, rhs in edges:
        adj.setdefault(("r", r), []).append((("c", c), rhs))
        adj.setdefault(("c", c), []).append((("r", r), rhs))
    value = {("r", 0): 0}
    queue = deque([("r", 0)])
    while queue:
        v = queue.popleft()
        for w, rhs in adj[v]:
            if w not in value:
                value[w] = rhs - value[v]
                queue.append(w)
    for c, r, rhs in edges:
        if value[("r", r)] + value[("c", c)] != rhs:
            return None
    rows = np.array([value[("r", r)] for r in range(n)], dtype=np.int64)
    cols = np.array([value[("c", c)] for c in range(n)], dtype=np.int64)
    mult = D.mult + cols[:, None] + rows[None, :]
    return Domain(x.gen, y.gen, mult)


def maslov_index(G: GridDiagram, D: Domain, o_counts=None) -> int:
    if o_counts is None:
        o_counts = marking_counts(G, D).o_counts
    return maslov(G, D.source) - maslov(G, D.target) + 2 * sum(o_counts)


def is_positive(D: Domain) -> bool:
    return bool((D.mult >= 0).all())


def _first_rectangle(D: Domain) -> tuple[Rectangle, tuple[int, ...]]:
    """An empty rectangle out of ``D.source`` contained in ``D``.

    For a source point whose top-right cell has positive multiplicity, take
    the smallest rectangle inside ``D`` with that point as bottom-left corner
    and another source point as top-right corner; minimality forces it to be
    empty.  When only the bottom-left cell is positive the same search runs
    with the roles of the two corners exchanged (the picture rotated 180
    degrees).
    """
    n = D.n
    x = D.source
    m = D.mult
    pos = {(c, r) for c in range(n) for r in range(n) if m[c, r] > 0}

    def inside(rect):
        return all(cell in pos for cell in rect.cells(n))

    for i in range(n):
        a = x[i]
        if (i, a) in pos:
            # point is the bottom-left corner
            cands = []
            for j in range(n):
                if j == i:
                    continue
                rect = Rectangle(i, a, (j - i) % n, (x[j] - a) % n)
                if inside(rect):
                    cands.append(rect)
        elif ((i - 1) % n, (a - 1) % n) in pos:
            # rotated case: point is the top-right corner
            cands = []
            for j in range(n):
                if j == i:
                    continue
                rect = Rectangle(j, x[j], (i - j) % n, (a - x[j]) % n)
                if inside(rect):
                    cands.append(rect)
        else:
            continue
        if not cands:
            raise InternalContradiction(f"no rectangle inside domain at source point {(i, a)}")
        rect = min(cands, key=lambda R: (R.width * R.height, R))
        for dc in range(1, rect.width):
            c = (rect.col_start + dc) % n
            if 0 < (x[c] - rect.row_start) % n < rect.height:
                raise InternalContradiction(f"minimal rectangle {rect} is not empty")
        j = (rect.col_start + rect.width) % n
        return rect, _swap(x, rect.col_start, j)
    raise InternalContradiction("non-zero positive domain with no multiplicity at its source")


def decompose(G: GridDiagram, D: Domain) -> list[tuple[Rectangle, tuple[int, ...]]]:
    """Write a positive domain as a sum of empty rectangles through intermediate generators.

    Returns ``[(R_1, u_1), ..., (R_k, u_k)]`` with ``R_i`` running from
    ``u_{i-1}`` to ``u_i``, ``u_0 = D.source`` and ``u_k = D.target``.
    """
    if not is_positive(D):
        raise NotPositive("decompose needs a positive domain")
    out = []
    rest = D
    while not rest.is_zero():
        rect, nxt = _first_rectangle(rest)
        rest = rest - rectangle_domain(rest.source, rect)
        if not is_positive(rest):
            raise InternalContradiction("rectangle removal left negative multiplicity")
        out.append((rect, nxt))
    if rest.source != D.target:
        raise InternalContradiction("decomposition ended at the wrong generator")
    return out
