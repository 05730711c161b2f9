"""The grid poset of grid states plus generic finite-poset machinery.

The grid poset is infinite, so it is only ever explored locally: covers of a
single state, bounded breadth-first search, closed intervals, and
Maslov-truncated bands.  ``y <= x`` holds when a positive domain runs from
``x`` to ``y``; covers are empty rectangles that avoid every X.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, NamedTuple

from .domains import Rectangle, moves_from
from .errors import CapExceeded, EmptyInterval, NotGraded
from .grid import GridDiagram
from .homology import ChainComplexF2
from .states import GridState, alexander, bigrading, enumerate_generators, maslov

__all__ = [
    "CoverRelation",
    "Interval",
    "FinitePoset",
    "SimplicialComplex",
    "covers_down",
    "covers_up",
    "leq",
    "down_dag",
    "interval",
    "interval_from_dag",
    "dag_ups",
    "maximal_chains",
    "barycentric_above",
    "product",
    "order_complex",
    "gt_chain_complex",
    "states_in_band",
    "DEFAULT_INTERVAL_CAP",
    "DEFAULT_CHAIN_BUDGET",
]

DEFAULT_INTERVAL_CAP = 7
DEFAULT_CHAIN_BUDGET = 10**6


class CoverRelation(NamedTuple):
    upper: GridState
    lower: GridState
    rect: Rectangle


def covers_down(G: GridDiagram, x: GridState) -> list[CoverRelation]:
    out = []
    for mv in moves_from(G, x.gen):
        if not mv.x_free:
            continue
        k = tuple(a + b for a, b in zip(x.u_exp, mv.o_counts))
        out.append(CoverRelation(x, GridState(mv.target, k), mv.rect))
    return out


def covers_up(G: GridDiagram, z: GridState) -> list[CoverRelation]:
    """States covering ``z``: scan generators one transposition away from ``z.gen``."""
    n = G.n
    out = []
    for i, j in itertools.combinations(range(n), 2):
        w = list(z.gen)
        w[i], w[j] = w[j], w[i]
        w = tuple(w)
        for mv in moves_from(G, w):
            if mv.target != z.gen or not mv.x_free:
                continue
            k = tuple(a - b for a, b in zip(z.u_exp, mv.o_counts))
            if min(k) < 0:
                continue
            out.append(CoverRelation(GridState(w, k), z, mv.rect))
    out.sort()
    return out


def _dominated(k, bound) -> bool:
    return all(a <= b for a, b in zip(k, bound))


def down_dag(
    G: GridDiagram, x: GridState, depth: int, bound: tuple[int, ...] | None = None
) -> dict[GridState, list[CoverRelation]]:
    """Everything reachable from ``x`` by at most ``depth`` downward covers.

    Maps each reached state to its downward covers (empty for the last
    level).  ``bound`` prunes states whose exponents exceed it somewhere.
    """
    dag: dict[GridState, list[CoverRelation]] = {}
    level = [x]
    for step in range(depth + 1):
        nxt = {}
        for z in level:
            if step == depth:
                dag[z] = []
                continue
            covs = covers_down(G, z)
            if bound is not None:
                covs = [c for c in covs if _dominated(c.lower.u_exp, bound)]
            dag[z] = covs
            for c in covs:
                nxt[c.lower] = None
        level = sorted(nxt)
    return dag


def leq(G: GridDiagram, y: GridState, x: GridState) -> bool:
    """``y <= x`` by graded breadth-first search downward from ``x``."""
    by, bx = bigrading(G, y), bigrading(G, x)
    if by.alexander != bx.alexander:
        return False
    gap = bx.maslov - by.maslov
    if gap < 0 or not _dominated(x.u_exp, y.u_exp):
        return False
    level = {x}
    for _ in range(gap):
        nxt = set()
        for z in level:
            for c in covers_down(G, z):
                if _dominated(c.lower.u_exp, y.u_exp):
                    nxt.add(c.lower)
        level = nxt
        if not level:
            return False
    return y in level


@dataclass
class Interval:
    """A closed interval ``[bottom, top]`` with its cover relations."""

    bottom: GridState
    top: GridState
    elements: tuple[GridState, ...]
    covers: tuple[CoverRelation, ...]
    grading: dict[GridState, int] = field(repr=False)

    @property
    def length(self) -> int:
        """Number of elements on a maximal chain."""
        return self.grading[self.top] - self.grading[self.bottom] + 1

    @cached_property
    def up(self) -> dict[GridState, list[CoverRelation]]:
        out = {z: [] for z in self.elements}
        for c in self.covers:
            out[c.lower].append(c)
        return out

    @cached_property
    def rect_of(self) -> dict[tuple[GridState, GridState], Rectangle]:
        return {(c.lower, c.upper): c.rect for c in self.covers}

    def as_poset(self) -> "FinitePoset":
        return FinitePoset(
            self.elements, [(c.lower, c.upper) for c in self.covers], dict(self.grading)
        )


def dag_ups(dag: dict[GridState, list[CoverRelation]]) -> dict[GridState, list[CoverRelation]]:
    """Reverse adjacency of a downward dag."""
    ups: dict[GridState, list[CoverRelation]] = {}
    for covs in dag.values():
        for c in covs:
            ups.setdefault(c.lower, []).append(c)
    return ups


def interval_from_dag(
    G: GridDiagram,
    dag: dict[GridState, list[CoverRelation]],
    y: GridState,
    x: GridState,
    ups: dict[GridState, list[CoverRelation]] | None = None,
) -> Interval:
    """Cut ``[y, x]`` out of a downward dag rooted at ``x`` that reaches ``y``."""
    if ups is None:
        ups = dag_ups(dag)
    if y not in dag:
        raise EmptyInterval(f"{y} is not below {x}")
    elements = {y}
    covers = []
    stack = [y]
    while stack:
        z = stack.pop()
        for c in ups.get(z, ()):
            covers.append(c)
            if c.upper not in elements:
                elements.add(c.upper)
                stack.append(c.upper)
    grading = {z: bigrading(G, z).maslov for z in elements}
    return Interval(y, x, tuple(sorted(elements)), tuple(sorted(covers)), grading)


def interval(G: GridDiagram, y: GridState, x: GridState) -> Interval:
    by, bx = bigrading(G, y), bigrading(G, x)
    gap = bx.maslov - by.maslov
    if by.alexander != bx.alexander or gap < 0 or not _dominated(x.u_exp, y.u_exp):
        raise EmptyInterval(f"{y} is not below {x}")
    dag = down_dag(G, x, gap, bound=y.u_exp)
    if y not in dag:
        raise EmptyInterval(f"{y} is not below {x}")
    return interval_from_dag(G, dag, y, x)


def maximal_chains(
    I: Interval, cap: int = DEFAULT_INTERVAL_CAP, budget: int = DEFAULT_CHAIN_BUDGET
) -> list[tuple[GridState, ...]]:
    """All maximal chains of ``I``, each listed bottom to top."""
    if I.length > cap:
        raise CapExceeded(f"interval length {I.length} exceeds cap {cap}")
    up = I.up
    out = []

    def walk(path):
        z = path[-1]
        if z == I.top:
            out.append(tuple(path))
            if len(out) > budget:
                raise CapExceeded(f"more than {budget} maximal chains")
            return
        for c in up[z]:
            path.append(c.upper)
            walk(path)
            path.pop()

    walk([I.bottom])
    return out


class FinitePoset:
    """A finite poset given by its cover relations ``(lower, upper)``."""

    def __init__(self, elements: Iterable[Hashable], covers: Iterable[tuple], grading=None):
        self.elements = tuple(elements)
        self.covers = tuple(dict.fromkeys(covers))
        self.grading = grading
        self._up = {e: [] for e in self.elements}
        self._down = {e: [] for e in self.elements}
        for a, b in self.covers:
            self._up[a].append(b)
            self._down[b].append(a)
        if grading is not None:
            for a, b in self.covers:
                if grading[b] != grading[a] + 1:
                    raise NotGraded(f"cover {a} < {b} does not raise the grading by one")

    def __len__(self):
        return len(self.elements)

    def upper_covers(self, e):
        return self._up[e]

    @cached_property
    def _above(self) -> dict:
        """Strict up-sets."""
        out = {}
        for e in reversed(self._topological()):
            s = set()
            for b in self._up[e]:
                s.add(b)
                s |= out[b]
            out[e] = s
        return out

    def _topological(self) -> list:
        indeg = {e: len(self._down[e]) for e in self.elements}
        order = [e for e in self.elements if indeg[e] == 0]
        i = 0
        while i < len(order):
            for b in self._up[order[i]]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    order.append(b)
            i += 1
        if len(order) != len(self.elements):
            raise ValueError("cover relation has a cycle")
        return order

    def leq(self, a, b) -> bool:
        return a == b or b in self._above[a]

    def minimal(self) -> list:
        return [e for e in self.elements if not self._down[e]]

    def maximal(self) -> list:
        return [e for e in self.elements if not self._up[e]]

    def maximal_chains(self, budget: int = DEFAULT_CHAIN_BUDGET) -> list[tuple]:
        """Saturated chains from a minimal to a maximal element, bottom first."""
        out = []

        def walk(path):
            ups = self._up[path[-1]]
            if not ups:
                out.append(tuple(path))
                if len(out) > budget:
                    raise CapExceeded(f"more than {budget} maximal chains")
                return
            for b in ups:
                path.append(b)
                walk(path)
                path.pop()

        for m in self.minimal():
            walk([m])
        return out

    def chain_length(self) -> int | None:
        """Common length of all maximal chains, or None if the poset is not graded."""
        lengths = {len(c) for c in self.maximal_chains()}
        return lengths.pop() if len(lengths) == 1 else None


def barycentric_above(I: Interval | FinitePoset, bottom=None, top=None) -> FinitePoset:
    """Chains of the interval containing both endpoints, ordered by inclusion.

    Graded by chain cardinality; the covers add exactly one element.
    """
    if isinstance(I, Interval):
        chains = [c for c in maximal_chains(I, cap=10**9)]
        bottom, top = I.bottom, I.top
    else:
        chains = I.maximal_chains()
    ends = frozenset((bottom, top))
    elems = set()
    for ch in chains:
        inner = [z for z in ch if z not in ends]
        for r in range(len(inner) + 1):
            for sub in itertools.combinations(inner, r):
                elems.add(ends | frozenset(sub))
    ordered = sorted(elems, key=lambda c: (len(c), sorted(c)))
    covers = [(d - {z}, d) for d in ordered for z in sorted(d - ends)]
    return FinitePoset(ordered, covers, {c: len(c) for c in ordered})


def product(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    elems = [(p, q) for p in P.elements for q in Q.elements]
    covers = [((a, q), (b, q)) for a, b in P.covers for q in Q.elements]
    covers += [((p, a), (p, b)) for p in P.elements for a, b in Q.covers]
    grading = None
    if P.grading is not None and Q.grading is not None:
        grading = {(p, q): P.grading[p] + Q.grading[q] for p, q in elems}
    return FinitePoset(elems, covers, grading)


class SimplicialComplex:
    """A simplicial complex stored by its facets."""

    def __init__(self, facets: Iterable[Iterable[Hashable]], vertices: Iterable | None = None):
        fs = {frozenset(f) for f in facets}
        maximal = [f for f in fs if not any(f < g for g in fs)]
        self.facets = tuple(sorted(maximal, key=lambda f: (len(f), sorted(map(repr, f)))))
        vs = set().union(*self.facets) if self.facets else set()
        if vertices is not None:
            vs |= set(vertices)
        self.vertices = frozenset(vs)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def faces(self) -> set[frozenset]:
        """All non-empty faces."""
        out = set()
        for f in self.facets:
            items = list(f)
            for r in range(1, len(items) + 1):
                out.update(frozenset(s) for s in itertools.combinations(items, r))
        return out

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dim + 1)
        for face in self.faces():
            counts[len(face) - 1] += 1
        return counts

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.f_vector()))

    def __len__(self):
        return len(self.facets)


def order_complex(P: FinitePoset) -> SimplicialComplex:
    return SimplicialComplex(P.maximal_chains(), vertices=P.elements)


def _compositions(total: int, parts: int):
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def states_in_band(G: GridDiagram, a: int, m_min: int) -> list[GridState]:
    """Grid states with Alexander grading ``a`` and Maslov grading at least ``m_min``."""
    out = []
    for g in enumerate_generators(G):
        s = alexander(G, g) - a
        if s < 0 or maslov(G, g) - 2 * s < m_min:
            continue
        out.extend(GridState(g, k) for k in _compositions(s, G.n))
    out.sort()
    return out


def gt_chain_complex(G: GridDiagram, alexander: int, m_min: int) -> ChainComplexF2:
    """The poset complex restricted to one Alexander grading, truncated below ``m_min``."""
    basis: dict[int, list] = {}
    for z in states_in_band(G, alexander, m_min):
        basis.setdefault(bigrading(G, z).maslov, []).append(z)
    basis = {m: basis[m] for m in sorted(basis)}
    index = {m: {z: i for i, z in enumerate(b)} for m, b in basis.items()}
    diff = {}
    for m, b in basis.items():
        below = index.get(m - 1)
        cols = []
        for z in b:
            v = 0
            if below is not None:
                for c in covers_down(G, z):
                    v ^= 1 << below[c.lower]
            cols.append(v)
        diff[m] = cols
    return ChainComplexF2(basis, diff, alexander)
