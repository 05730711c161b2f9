"""Morphism spaces of the flow category and their ball/sphere certificates.

``Mor(x, y)`` is the order complex of the chains of ``[y, x]`` that contain
both endpoints.  Certification follows Danaraj-Klee: a shellable
pseudomanifold is a sphere when every ridge lies in two facets and a ball
when some ridge lies in only one.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CapExceeded, EmptyInterval, NotPure
from .grid import GridDiagram
from .poset import (
    FinitePoset,
    Interval,
    SimplicialComplex,
    barycentric_above,
    interval,
    maximal_chains,
    order_complex,
    product,
)
from .shelling import CutLine, chain_labeling, default_line, shelling_order
from .states import GridState, bigrading, state_str

__all__ = [
    "MorSpace",
    "BallCertificate",
    "CompositionReport",
    "DEFAULT_GAP_CAP",
    "DEFAULT_SHELL_BUDGET",
    "mor_complex",
    "mor_from_interval",
    "boundary_complex",
    "find_shelling",
    "certify",
    "verify_composition",
    "composition_report",
    "check_compositions",
    "chain_string",
    "facet_lines",
]

DEFAULT_GAP_CAP = 4
DEFAULT_SHELL_BUDGET = 200_000


@dataclass
class MorSpace:
    x: GridState
    y: GridState
    poset: FinitePoset = field(repr=False)
    complex: SimplicialComplex = field(repr=False)
    dim: int
    seed: list = field(default=None, repr=False)


def chain_string(G: GridDiagram, chain) -> str:
    """Vertices of a morphism space are chains; render them bottom to top."""
    return "<".join(state_str(z) for z in sorted(chain, key=lambda z: (bigrading(G, z).maslov, z)))


def _seed_order(G: GridDiagram, I: Interval, facets, l: CutLine) -> list:
    """A shelling order of Mor(x, y) built from the EL shelling of ``[y, x]``.

    Maximal chains come in labeling order.  Each flag of a chain ``m`` is the
    order in which its inner elements get inserted, and those orders are
    sorted by inversion count (a linear extension of the weak order), where
    the inner elements whose removal lands in an earlier chain rank above the
    rest.  With that ranking every descent of an insertion order, and the
    final insertion when it is such an element, is a ridge shared with an
    earlier flag, which is what the shelling condition asks for.
    """
    chains = maximal_chains(I, cap=I.length)
    labs = [chain_labeling(G, l, ch, I) for ch in chains]
    order = [frozenset(ch) for ch in shelling_order(chains, labs)]
    rank = {ch: k for k, ch in enumerate(order)}
    pos = {z: k for ch in chains for k, z in enumerate(ch)}
    shared: dict[frozenset, set] = {}
    for k, m in enumerate(order):
        shared[m] = {v for v in m if any(m - {v} <= order[j] for j in range(k))}

    def key(flag):
        steps = sorted(flag, key=len)
        top = steps[-1]
        ins = [(next(iter(b - a)) in shared[top], pos[next(iter(b - a))]) for a, b in zip(steps, steps[1:])]
        inversions = sum(1 for i in range(len(ins)) for j in range(i + 1, len(ins)) if ins[i] > ins[j])
        return (rank[top], inversions, ins)

    return sorted(facets, key=key)


def mor_from_interval(G: GridDiagram, I: Interval, l: CutLine | None = None) -> MorSpace:
    P = barycentric_above(I)
    S = order_complex(P)
    l = l if l is not None else default_line(G.n)
    seed = _seed_order(G, I, S.facets, l)
    return MorSpace(I.top, I.bottom, P, S, I.length - 2, seed)


def mor_complex(G: GridDiagram, y: GridState, x: GridState, gap_cap: int = DEFAULT_GAP_CAP) -> MorSpace:
    gap = bigrading(G, x).maslov - bigrading(G, y).maslov
    if gap < 1:
        raise EmptyInterval("morphism spaces need y strictly below x")
    if gap > gap_cap:
        raise CapExceeded(f"Maslov gap {gap} exceeds cap {gap_cap}")
    return mor_from_interval(G, interval(G, y, x))


def _ridge_counts(S: SimplicialComplex) -> dict[frozenset, int]:
    counts: dict[frozenset, int] = {}
    for f in S.facets:
        for v in f:
            r = f - {v}
            counts[r] = counts.get(r, 0) + 1
    return counts


def boundary_complex(S: SimplicialComplex) -> SimplicialComplex:
    """Ridges lying in exactly one facet."""
    if not S.is_pure():
        raise NotPure("boundary is only defined for pure complexes")
    return SimplicialComplex([r for r, k in _ridge_counts(S).items() if k == 1])


class _BudgetExhausted(Exception):
    pass


def find_shelling(facets: Sequence, budget: int = DEFAULT_SHELL_BUDGET) -> list | None:
    """Search for a shelling order, trying facets in the given order first.

    Depth-first with backtracking; returns the order, None if none exists,
    and raises CapExceeded when more than ``budget`` placements were tried.
    """
    facets = [frozenset(f) for f in facets]
    if not facets:
        return []
    index = {}
    for f in facets:
        for v in f:
            index.setdefault(v, len(index))
    masks = []
    for f in facets:
        m = 0
        for v in f:
            m |= 1 << index[v]
        masks.append(m)
    nf = len(masks)
    ridge_owners: dict[int, list[int]] = {}
    vert_owners: dict[int, list[int]] = {}
    for k, m in enumerate(masks):
        v = m
        while v:
            low = v & -v
            ridge_owners.setdefault(m ^ low, []).append(k)
            vert_owners.setdefault(low, []).append(k)
            v ^= low
    chosen = [False] * nf
    order: list[int] = []
    tried = 0

    def valid(k):
        m = masks[k]
        free = 0
        v = m
        while v:
            low = v & -v
            if any(chosen[o] for o in ridge_owners[m ^ low] if o != k):
                free |= low
            v ^= low
        if not free:
            return False
        v = m
        while v:
            low = v & -v
            for o in vert_owners[low]:
                if chosen[o] and not (free & ~masks[o]):
                    return False
            v ^= low
        return True

    def extend():
        nonlocal tried
        if len(order) == nf:
            return True
        for k in range(nf):
            if chosen[k] or not valid(k):
                continue
            tried += 1
            if tried > budget:
                raise _BudgetExhausted
            chosen[k] = True
            order.append(k)
            if extend():
                return True
            order.pop()
            chosen[k] = False
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, nf + 100))
    try:
        for first in range(nf):
            chosen[first] = True
            order.append(first)
            if extend():
                return [facets[k] for k in order]
            order.pop()
            chosen[first] = False
        return None
    except _BudgetExhausted:
        raise CapExceeded(f"shelling search exceeded {budget} steps") from None
    finally:
        sys.setrecursionlimit(limit)


@dataclass
class BallCertificate:
    verdict: str  # "Ball", "Sphere", "Neither" or "Unknown"
    dim: int
    pure: bool
    shelled: bool
    pseudomanifold: bool
    euler_characteristic: int
    f_vector: list[int]
    boundary_facets: int
    boundary_euler_characteristic: int
    seeded: bool = False  # the seed order itself was a shelling
    shelling: list | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "dim": self.dim,
            "pure": self.pure,
            "shelled": self.shelled,
            "pseudomanifold": self.pseudomanifold,
            "euler_characteristic": self.euler_characteristic,
            "f_vector": self.f_vector,
            "boundary_facets": self.boundary_facets,
            "boundary_euler_characteristic": self.boundary_euler_characteristic,
            "seeded": self.seeded,
        }


def certify(S: SimplicialComplex, seed: Sequence | None = None, budget: int = DEFAULT_SHELL_BUDGET) -> BallCertificate:
    pure = S.is_pure()
    counts = _ridge_counts(S)
    pseudo = all(k <= 2 for k in counts.values())
    chi = S.euler_characteristic()
    fvec = S.f_vector()
    if pure:
        bd = boundary_complex(S)
        bd_facets = [f for f in bd.facets if f]
        bd_chi = SimplicialComplex(bd_facets).euler_characteristic() if bd_facets else 0
    else:
        bd_facets, bd_chi = [], 0
    shelling = None
    unknown = False
    if pure:
        try:
            shelling = find_shelling(seed if seed is not None else S.facets, budget)
        except CapExceeded:
            unknown = True
    shelled = shelling is not None
    d = S.dim
    if unknown:
        verdict = "Unknown"
    elif pure and shelled and pseudo and any(k == 1 for k in counts.values()) and chi == 1:
        verdict = "Ball"
    elif pure and shelled and all(k == 2 for k in counts.values()) and chi == 1 + (-1) ** d:
        verdict = "Sphere"
    else:
        verdict = "Neither"
    seeded = shelled and seed is not None and shelling == [frozenset(f) for f in seed]
    return BallCertificate(verdict, d, pure, shelled, pseudo, chi, fvec, len(bd_facets), bd_chi, seeded, shelling)


@dataclass
class CompositionReport:
    isomorphism: bool
    injective: bool
    into_boundary: bool
    image_facets: int


class _Target:
    """Mor(x, z) data shared by every middle object y."""

    def __init__(self, I_zx: Interval):
        self.I = I_zx
        self.R = barycentric_above(I_zx)
        self.boundary = set(boundary_complex(order_complex(self.R)).facets)


def _report(t: _Target, y: GridState) -> tuple[CompositionReport, list[frozenset]]:
    I_zx = t.I
    P = barycentric_above(_subinterval(I_zx, y, I_zx.top))
    Q = barycentric_above(_subinterval(I_zx, I_zx.bottom, y))
    target = {c for c in t.R.elements if y in c}
    PQ = product(P, Q)
    image = {pq: pq[0] | pq[1] for pq in PQ.elements}
    values = set(image.values())
    bijective = len(values) == len(image) and values == target
    order_ok = all(
        PQ.leq(a, b) == (image[a] <= image[b]) for a in PQ.elements for b in PQ.elements
    )
    img_facets = [frozenset(image[v] for v in f) for f in order_complex(PQ).facets]
    injective = len(set(img_facets)) == len(img_facets)
    into_boundary = all(f in t.boundary or any(f <= b for b in t.boundary) for f in img_facets)
    return CompositionReport(bijective and order_ok, injective, into_boundary, len(img_facets)), img_facets


def composition_report(
    G: GridDiagram, z: GridState, y: GridState, x: GridState, I_zx: Interval | None = None
) -> CompositionReport:
    """Check the composition map Mor(x, y) x Mor(y, z) -> Mor(x, z) for one middle object."""
    if I_zx is None:
        I_zx = interval(G, z, x)
    return _report(_Target(I_zx), y)[0]


def verify_composition(G: GridDiagram, z: GridState, y: GridState, x: GridState, I_zx: Interval | None = None) -> bool:
    """Isomorphism, injectivity and boundary embedding for one triple, plus boundary coverage of Mor(x, z)."""
    if I_zx is None:
        I_zx = interval(G, z, x)
    t = _Target(I_zx)
    rep = _report(t, y)[0]
    return rep.isomorphism and rep.injective and rep.into_boundary and _covered(t)


def _covered(t: _Target) -> bool:
    ends = frozenset((t.I.bottom, t.I.top))
    return all(ends not in f and any(len(v) == 3 for v in f) for f in t.boundary)


@dataclass
class CompositionSummary:
    triples: int
    failures: list[str]
    covered: bool
    partition: bool

    @property
    def ok(self) -> bool:
        return not self.failures and self.covered and self.partition


def check_compositions(I_zx: Interval) -> CompositionSummary:
    """All middle objects of one interval, plus coverage and a facet partition of the boundary.

    The images of the composition maps over all middle objects must tile the
    boundary of Mor(x, z): every boundary facet appears exactly once.
    """
    t = _Target(I_zx)
    failures = []
    seen: dict[frozenset, int] = {}
    middles = [y for y in I_zx.elements if y not in (I_zx.bottom, I_zx.top)]
    for y in middles:
        rep, facets = _report(t, y)
        if not (rep.isomorphism and rep.injective and rep.into_boundary):
            failures.append(state_str(y))
        for f in facets:
            seen[f] = seen.get(f, 0) + 1
    partition = set(seen) == t.boundary and all(k == 1 for k in seen.values())
    return CompositionSummary(len(middles), failures, _covered(t), partition)


def _subinterval(I: Interval, lo: GridState, hi: GridState) -> Interval:
    up = I.up
    elems = {lo}
    stack = [lo]
    covers = []
    below_hi = _down_closure(I, hi)
    while stack:
        a = stack.pop()
        for c in up[a]:
            if c.upper in below_hi:
                covers.append(c)
                if c.upper not in elems:
                    elems.add(c.upper)
                    stack.append(c.upper)
    return Interval(lo, hi, tuple(sorted(elems)), tuple(sorted(covers)), {e: I.grading[e] for e in elems})


def _down_closure(I: Interval, hi: GridState) -> set:
    down: dict[GridState, list] = {}
    for c in I.covers:
        down.setdefault(c.upper, []).append(c.lower)
    seen = {hi}
    stack = [hi]
    while stack:
        a = stack.pop()
        for b in down.get(a, ()):
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def facet_lines(G: GridDiagram, S: SimplicialComplex) -> list[str]:
    """Facet-list export: one facet per line, vertices as canonical chain strings."""
    lines = []
    for f in S.facets:
        verts = sorted(chain_string(G, v) for v in f)
        lines.append(" | ".join(verts))
    return sorted(lines)
