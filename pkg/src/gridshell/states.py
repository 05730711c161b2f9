"""Generators, grid states and their Maslov/Alexander gradings.

A generator is a permutation ``sigma`` stored as a tuple; its points are the
lattice points ``(j, sigma[j])``.  Gradings are evaluated in exact integer
arithmetic by doubling every coordinate, which puts markings at odd and
generator points at even coordinates.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .errors import CapExceeded
from .grid import GridDiagram

__all__ = [
    "GridState",
    "Bigrading",
    "DEFAULT_INDEX_CAP",
    "enumerate_generators",
    "j_pairing",
    "maslov",
    "alexander",
    "bigrading",
    "state_str",
]

DEFAULT_INDEX_CAP = 8


class GridState(NamedTuple):
    """A generator decorated with U-exponents, indexed by O-label (``u_exp[i-1]`` for U_i)."""

    gen: tuple[int, ...]
    u_exp: tuple[int, ...]

    @classmethod
    def bare(cls, gen):
        gen = tuple(gen)
        return cls(gen, (0,) * len(gen))

    def times_u(self, label: int, power: int = 1) -> "GridState":
        k = list(self.u_exp)
        k[label - 1] += power
        return GridState(self.gen, tuple(k))


class Bigrading(NamedTuple):
    maslov: int
    alexander: int


def state_str(x: GridState) -> str:
    """Canonical text form, e.g. ``1.0.2/0.1.0``."""
    return ".".join(map(str, x.gen)) + "/" + ".".join(map(str, x.u_exp))


def enumerate_generators(G: GridDiagram, cap: int = DEFAULT_INDEX_CAP) -> list[tuple[int, ...]]:
    if G.n > cap:
        raise CapExceeded(f"grid index {G.n} exceeds generator cap {cap}")
    return list(itertools.permutations(range(G.n)))


def _j(p, q) -> Fraction:
    return Fraction(1, 2) if (p[0] - q[0]) * (p[1] - q[1]) > 0 else Fraction(0)


def j_pairing(a: Mapping | Iterable, b: Mapping | Iterable) -> Fraction:
    """Bilinear J on formal sums of planar points.

    A formal sum is a mapping ``point -> coefficient`` or an iterable of
    points (each with coefficient 1).
    """
    a = a if isinstance(a, Mapping) else {p: 1 for p in a}
    b = b if isinstance(b, Mapping) else {q: 1 for q in b}
    total = Fraction(0)
    for p, cp in a.items():
        for q, cq in b.items():
            if cp and cq:
                total += Fraction(cp) * Fraction(cq) * _j(p, q)
    return total


def _pairs(a, b) -> int:
    """Number of ordered pairs (p, q) with (p1-q1)(p2-q2) > 0; J = this / 2."""
    return sum(1 for p in a for q in b if (p[0] - q[0]) * (p[1] - q[1]) > 0)


@lru_cache(maxsize=64)
def _marking_points(G: GridDiagram):
    xs = [(2 * c + 1, 2 * r + 1) for c, r in enumerate(G.x_col_to_row)]
    os = [(2 * c + 1, 2 * r + 1) for c, r in enumerate(G.o_col_to_row)]
    return xs, os, _pairs(xs, xs), _pairs(os, os)


@lru_cache(maxsize=1 << 17)
def _gen_gradings(G: GridDiagram, gen: tuple[int, ...]) -> Bigrading:
    xs, os, pxx, poo = _marking_points(G)
    pts = [(2 * j, 2 * r) for j, r in enumerate(gen)]
    pgg = _pairs(pts, pts)
    pgo = _pairs(pts, os)
    pgx = _pairs(pts, xs)
    # 2M = P(x,x) - 2 P(x,O) + P(O,O) + 2
    m2 = pgg - 2 * pgo + poo + 2
    # 4A = 2 P(x,X) - 2 P(x,O) - P(X,X) + P(O,O) - 2(n-1)
    a4 = 2 * pgx - 2 * pgo - pxx + poo - 2 * (G.n - 1)
    if m2 % 2 or a4 % 4:
        raise ArithmeticError(f"non-integral grading for {gen}: 2M={m2}, 4A={a4}")
    return Bigrading(m2 // 2, a4 // 4)


def maslov(G: GridDiagram, gen) -> int:
    return _gen_gradings(G, tuple(gen)).maslov


def alexander(G: GridDiagram, gen) -> int:
    return _gen_gradings(G, tuple(gen)).alexander


def bigrading(G: GridDiagram, x: GridState) -> Bigrading:
    m, a = _gen_gradings(G, x.gen)
    s = sum(x.u_exp)
    return Bigrading(m - 2 * s, a - s)


def maslov_fraction(G: GridDiagram, gen) -> Fraction:
    """M evaluated straight from the J formula in rational arithmetic (slow reference)."""
    pts = {(j, r): 1 for j, r in enumerate(gen)}
    os = {(Fraction(2 * c + 1, 2), Fraction(2 * r + 1, 2)): 1 for c, r in enumerate(G.o_col_to_row)}
    diff = _sub(pts, os)
    return j_pairing(diff, diff) + 1


def alexander_fraction(G: GridDiagram, gen) -> Fraction:
    """A evaluated straight from the J formula in rational arithmetic (slow reference)."""
    pts = {(j, r): 1 for j, r in enumerate(gen)}
    xs = {(Fraction(2 * c + 1, 2), Fraction(2 * r + 1, 2)): 1 for c, r in enumerate(G.x_col_to_row)}
    os = {(Fraction(2 * c + 1, 2), Fraction(2 * r + 1, 2)): 1 for c, r in enumerate(G.o_col_to_row)}
    half = Fraction(1, 2)
    left = _sub(pts, _add(_scale(xs, half), _scale(os, half)))
    return j_pairing(left, _sub(xs, os)) - Fraction(G.n - 1, 2)


def _add(a, b):
    out = dict(a)
    for p, c in b.items():
        out[p] = out.get(p, 0) + c
    return out


def _scale(a, k):
    return {p: k * c for p, c in a.items()}


def _sub(a, b):
    return _add(a, _scale(b, -1))
