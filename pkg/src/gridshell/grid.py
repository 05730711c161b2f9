"""Grid diagrams on the n x n torus.

Cells are addressed as ``(column, row)`` with rows increasing upward.  The
marking in cell ``(c, r)`` sits at the planar point ``(c + 1/2, r + 1/2)``;
the torus is cut along ``x = 0`` and ``y = 0``.  The text format lists rows
top to bottom, so line ``k`` of an index-``n`` file is row ``n - 1 - k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import (
    BadCharacter,
    IndexTooSmall,
    MultiComponent,
    NonSquare,
    NotPermutation,
    SharedCell,
)

__all__ = [
    "GridDiagram",
    "MarkingNumbering",
    "parse_grid",
    "serialize",
    "derive_numbering",
    "recut",
]


def _is_permutation(seq, n):
    return len(seq) == n and sorted(seq) == list(range(n))


@dataclass(frozen=True)
class GridDiagram:
    n: int
    x_col_to_row: tuple[int, ...]
    o_col_to_row: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x_col_to_row", tuple(self.x_col_to_row))
        object.__setattr__(self, "o_col_to_row", tuple(self.o_col_to_row))
        n = self.n
        if n < 2:
            raise IndexTooSmall(f"grid index must be at least 2, got {n}")
        if not _is_permutation(self.x_col_to_row, n):
            raise NotPermutation("X markings do not form a permutation")
        if not _is_permutation(self.o_col_to_row, n):
            raise NotPermutation("O markings do not form a permutation")
        for c in range(n):
            if self.x_col_to_row[c] == self.o_col_to_row[c]:
                raise SharedCell(f"column {c}: X and O share row {self.x_col_to_row[c]}")
        if len(self.component_columns()) != 1:
            raise MultiComponent(
                f"diagram has {len(self.component_columns())} components; only knots are supported"
            )

    @cached_property
    def x_row_to_col(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for c, r in enumerate(self.x_col_to_row):
            inv[r] = c
        return tuple(inv)

    @cached_property
    def o_row_to_col(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for c, r in enumerate(self.o_col_to_row):
            inv[r] = c
        return tuple(inv)

    @cached_property
    def x_cells(self) -> frozenset[tuple[int, int]]:
        return frozenset(enumerate(self.x_col_to_row))

    @cached_property
    def o_cells(self) -> frozenset[tuple[int, int]]:
        return frozenset(enumerate(self.o_col_to_row))

    def component_columns(self) -> list[list[int]]:
        """Columns grouped by link component, following X -> O (row) -> X (column)."""
        seen = set()
        comps = []
        # avoid cached_property here: called from __post_init__ before validation ends
        o_row_to_col = {r: c for c, r in enumerate(self.o_col_to_row)}
        for start in range(self.n):
            if start in seen:
                continue
            comp = []
            c = start
            while c not in seen:
                seen.add(c)
                comp.append(c)
                c = o_row_to_col[self.x_col_to_row[c]]
            comps.append(comp)
        return comps

    @cached_property
    def numbering(self) -> "MarkingNumbering":
        return derive_numbering(self)

    def __str__(self):
        return serialize(self)


class MarkingNumbering(NamedTuple):
    """Labels 1..n per column; X_i, O_i share a row and O_i, X_{i+1} share a column."""

    x_index: tuple[int, ...]
    o_index: tuple[int, ...]


def parse_grid(text: str) -> GridDiagram:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln.rstrip("\r") for ln in lines]
    n = len(lines)
    if n < 2:
        raise IndexTooSmall(f"grid index must be at least 2, got {n}")
    for k, ln in enumerate(lines):
        if len(ln) != n:
            raise NonSquare(f"line {k + 1} has {len(ln)} characters, expected {n}")
        for ch in ln:
            if ch not in ".XO":
                raise BadCharacter(f"line {k + 1}: unexpected character {ch!r}")

    x_col = [[] for _ in range(n)]
    o_col = [[] for _ in range(n)]
    x_rows = [0] * n
    o_rows = [0] * n
    for k, ln in enumerate(lines):
        r = n - 1 - k
        for c, ch in enumerate(ln):
            if ch == "X":
                x_col[c].append(r)
                x_rows[r] += 1
            elif ch == "O":
                o_col[c].append(r)
                o_rows[r] += 1
    for c in range(n):
        if len(x_col[c]) != 1 or len(o_col[c]) != 1:
            raise NotPermutation(f"column {c} has {len(x_col[c])} X and {len(o_col[c])} O markings")
    for r in range(n):
        if x_rows[r] != 1 or o_rows[r] != 1:
            raise NotPermutation(f"row {r} has {x_rows[r]} X and {o_rows[r]} O markings")
    return GridDiagram(n, tuple(col[0] for col in x_col), tuple(col[0] for col in o_col))


def serialize(G: GridDiagram) -> str:
    rows = []
    for r in range(G.n - 1, -1, -1):
        chars = ["."] * G.n
        chars[G.x_row_to_col[r]] = "X"
        chars[G.o_row_to_col[r]] = "O"
        rows.append("".join(chars))
    return "\n".join(rows) + "\n"


def derive_numbering(G: GridDiagram) -> MarkingNumbering:
    """Number the markings, giving label 1 to the X in column 0."""
    n = G.n
    x_index = [0] * n
    o_index = [0] * n
    c = 0
    for label in range(1, n + 1):
        x_index[c] = label
        oc = G.o_row_to_col[G.x_col_to_row[c]]
        o_index[oc] = label
        c = oc
    return MarkingNumbering(tuple(x_index), tuple(o_index))


def recut(G: GridDiagram, row_shift: int, col_shift: int) -> GridDiagram:
    """Shift rows and columns cyclically: cell (c, r) moves to (c + col_shift, r + row_shift)."""
    n = G.n
    x = [0] * n
    o = [0] * n
    for c in range(n):
        nc = (c + col_shift) % n
        x[nc] = (G.x_col_to_row[c] + row_shift) % n
        o[nc] = (G.o_col_to_row[c] + row_shift) % n
    return GridDiagram(n, tuple(x), tuple(o))


def recut_generator(gen: tuple[int, ...], row_shift: int, col_shift: int) -> tuple[int, ...]:
    """Image of a generator under :func:`recut` with the same shifts."""
    n = len(gen)
    out = [0] * n
    for j, r in enumerate(gen):
        out[(j + col_shift) % n] = (r + row_shift) % n
    return tuple(out)
