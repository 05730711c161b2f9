"""Edge labels for cover relations and EL-shellability checks.

A cover is labelled by the triple ``(s, i, t)`` of its rectangle relative
to a vertical cut line ``l`` that sits at a half-integer x-coordinate:
``s`` says whether the rectangle misses ``l``, ``i`` counts beta circles
from ``l`` to the rectangle's left edge (going left when ``s == 0``, right
when ``s == 1``, inclusive of that edge) and ``t`` is the width.  Triples
compare lexicographically, and chains are labelled bottom to top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .domains import Rectangle
from .grid import GridDiagram
from .poset import DEFAULT_CHAIN_BUDGET, FinitePoset, Interval, maximal_chains
from .states import state_str

__all__ = [
    "CutLine",
    "LabelTriple",
    "ELReport",
    "default_line",
    "all_lines",
    "label",
    "chain_labeling",
    "verify_el",
    "shelling_order",
    "verify_bjorner",
    "classify_thin",
    "hexagon_beta_counts",
    "replay_labeling",
]


class CutLine(NamedTuple):
    position: Fraction

    @classmethod
    def at(cls, position) -> "CutLine":
        pos = Fraction(position)
        if pos.denominator != 2:
            raise ValueError(f"cut line must sit at a half-integer, got {position}")
        return cls(pos)

    def column(self, n: int) -> int:
        """The column whose interior the line passes through."""
        return math.floor(self.position) % n


def default_line(n: int) -> CutLine:
    return CutLine.at(Fraction(2 * n - 1, 2))


def all_lines(n: int) -> list[CutLine]:
    return [CutLine.at(Fraction(2 * c + 1, 2)) for c in range(n)]


class LabelTriple(NamedTuple):
    s: int
    i: int
    t: int


def label(G: GridDiagram, l: CutLine, rect: Rectangle) -> LabelTriple:
    n = G.n
    cl = l.column(n)
    if (cl - rect.col_start) % n < rect.width:
        return LabelTriple(0, (cl - rect.col_start) % n + 1, rect.width)
    return LabelTriple(1, (rect.col_start - cl) % n, rect.width)


def chain_labeling(G: GridDiagram, l: CutLine, chain: Sequence, I: Interval) -> tuple[LabelTriple, ...]:
    rect_of = I.rect_of
    return tuple(label(G, l, rect_of[(a, b)]) for a, b in zip(chain, chain[1:]))


def replay_labeling(G: GridDiagram, l: CutLine, I: Interval, labels: Sequence[LabelTriple]) -> tuple | None:
    """Rebuild a chain from its bottom element and labels; None if some step has no match."""
    path = [I.bottom]
    up = I.up
    for lab in labels:
        nxt = [c.upper for c in up[path[-1]] if label(G, l, c.rect) == lab]
        if len(nxt) != 1:
            return None
        path.append(nxt[0])
    return tuple(path)


def _weakly_increasing(seq) -> bool:
    return all(a <= b for a, b in zip(seq, seq[1:]))


def _strictly_increasing(seq) -> bool:
    return all(a < b for a, b in zip(seq, seq[1:]))


@dataclass
class ELReport:
    interval_id: str
    chain_count: int
    labelings: list[tuple[LabelTriple, ...]] = field(repr=False)
    weak_increasing: list[int]
    strict_increasing: list[int]
    lexmin: int
    labels_distinct: bool

    @property
    def lexmin_is_increasing(self) -> bool:
        return self.lexmin in self.weak_increasing

    @property
    def increasing_is_lexmin(self) -> bool:
        return all(k == self.lexmin for k in self.weak_increasing)

    @property
    def verdict_el_weak(self) -> bool:
        return self.weak_increasing == [self.lexmin]

    @property
    def verdict_el_strict(self) -> bool:
        return self.strict_increasing == [self.lexmin]


def interval_id(I: Interval) -> str:
    return f"[{state_str(I.bottom)},{state_str(I.top)}]"


def verify_el(
    G: GridDiagram,
    l: CutLine,
    I: Interval,
    chains: Sequence | None = None,
    budget: int = DEFAULT_CHAIN_BUDGET,
) -> ELReport:
    if chains is None:
        chains = maximal_chains(I, cap=max(I.length, 1), budget=budget)
    labelings = [chain_labeling(G, l, ch, I) for ch in chains]
    lexmin = min(range(len(chains)), key=lambda k: labelings[k])
    return ELReport(
        interval_id(I),
        len(chains),
        labelings,
        [k for k, lab in enumerate(labelings) if _weakly_increasing(lab)],
        [k for k, lab in enumerate(labelings) if _strictly_increasing(lab)],
        lexmin,
        len(set(labelings)) == len(labelings),
    )


def shelling_order(chains: Sequence, labelings: Sequence) -> list:
    """Maximal chains sorted by labeling (ties, which should not occur, by the chain itself)."""
    order = sorted(range(len(chains)), key=lambda k: (labelings[k], chains[k]))
    return [chains[k] for k in order]


def verify_bjorner(facets: Sequence) -> bool:
    """Shelling condition on an ordered list of facets (chains or vertex sets).

    For every ``i < j`` there must be ``k < j`` and ``v`` in facet ``j`` with
    ``F_i & F_j <= F_k & F_j == F_j - {v}``.
    """
    fs = [frozenset(f) for f in facets]
    for j in range(1, len(fs)):
        mj = fs[j]
        # v such that F_j - {v} is cut out by some earlier facet
        ridges = {v for v in mj if any(fs[k] & mj == mj - {v} for k in range(j))}
        for i in range(j):
            meet = fs[i] & mj
            if not any(meet <= mj - {v} for v in ridges):
                return False
    return True


def classify_thin(P: FinitePoset) -> str:
    """'Thin', 'Subthin' or 'Neither', counting maximal chains over each submaximal chain.

    A poset whose maximal chains differ in length is not graded and is 'Neither'.
    """
    chains = [frozenset(c) for c in P.maximal_chains()]
    if len({len(c) for c in chains}) > 1:
        return "Neither"
    counts: dict[frozenset, int] = {}
    for c in chains:
        for v in c:
            sub = c - {v}
            counts[sub] = counts.get(sub, 0) + 1
    if all(k == 2 for k in counts.values()):
        return "Thin"
    if all(k <= 2 for k in counts.values()):
        return "Subthin"
    return "Neither"


def hexagon_beta_counts(G: GridDiagram, l: CutLine, I: Interval, chains, labelings) -> list[int]:
    """Beta-circle support sizes of R1 + R2 at every decreasing consecutive pair of covers."""
    n = G.n
    rect_of = I.rect_of
    out = []
    for ch, lab in zip(chains, labelings):
        for k in range(len(lab) - 1):
            if lab[k] <= lab[k + 1]:
                continue
            m = np.zeros((n, n), dtype=np.int64)
            for a, b in ((ch[k], ch[k + 1]), (ch[k + 1], ch[k + 2])):
                for c, r in rect_of[(a, b)].cells(n):
                    m[c, r] += 1
            circles = sum(1 for c in range(n) if (m[c - 1] != m[c]).any())
            out.append(circles)
    return out
