"""Maximum doubled area over one point per cell, for cell triples.

Area is affine in each vertex when the other two are fixed, so its absolute
value is convex on the product of the three closed cells and the maximum is
reached at a triple of cell vertices. Enumerating those (27 for triangle
cells, 8 for segments) is exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numba
import numpy as np

from .geometry import Grid, GridCell, IntPoint, doubled_area

# Dense tables up to this many cells: C(702, 3) int32 entries is about 230 MB.
EAGER_CELL_LIMIT = 700


@dataclass(frozen=True)
class TripleValue:
    max_doubled_area: int
    argmax_vertices: tuple[IntPoint, IntPoint, IntPoint]


def max_cell_triple(a: GridCell, b: GridCell, c: GridCell) -> TripleValue:
    best = -1
    arg = None
    for p, q, r in itertools.product(a.vertices, b.vertices, c.vertices):
        v = doubled_area(p, q, r)
        if v > best:
            best, arg = v, (p, q, r)
    return TripleValue(best, arg)


def triple_rank(a: int, b: int, c: int) -> int:
    """Position of the sorted multiset a <= b <= c in the packed table."""
    return comb(c + 2, 3) + comb(b + 1, 2) + a


def triple_count(n: int) -> int:
    return comb(n + 2, 3)


@numba.njit(cache=True, inline="always")
def _rank(a, b, c):
    return c * (c + 1) * (c + 2) // 6 + b * (b + 1) // 2 + a


@numba.njit(cache=True)
def _vertex_max(verts, a, b, c):
    k = verts.shape[1]
    best = 0
    for i in range(k):
        px = verts[a, i, 0]
        py = verts[a, i, 1]
        for j in range(k):
            qx = verts[b, j, 0] - px
            qy = verts[b, j, 1] - py
            for m in range(k):
                v = qx * (verts[c, m, 1] - py) - qy * (verts[c, m, 0] - px)
                if v < 0:
                    v = -v
                if v > best:
                    best = v
    return best


@numba.njit(cache=True)
def _fill_table(verts, out):
    n = verts.shape[0]
    for c in range(n):
        for b in range(c + 1):
            base = _rank(0, b, c)
            for a in range(b + 1):
                out[base + a] = _vertex_max(verts, a, b, c)


class TripleCache:
    """Triple values for one grid, keyed by sorted cell-id multisets.

    Grids with at most ``EAGER_CELL_LIMIT`` cells get a dense int32 table
    built up front; larger grids are computed on demand and memoized.
    """

    def __init__(self, grid: Grid, eager: bool | None = None):
        P = grid.P
        if P * P >= 2**31:
            raise ValueError(f"P={P}: doubled areas overflow int32")
        self.grid = grid
        self.n = len(grid)
        self.verts = grid.vertex_array
        self.computed = 0
        if eager is None:
            eager = self.n <= EAGER_CELL_LIMIT
        if eager:
            self.table = np.empty(triple_count(self.n), dtype=np.int32)
            _fill_table(self.verts, self.table)
            self.computed = len(self.table)
        else:
            self.table = np.empty(0, dtype=np.int32)
            self._lazy = lru_cache(maxsize=None)(self._compute)

    @property
    def eager(self) -> bool:
        return len(self.table) > 0

    def _compute(self, a: int, b: int, c: int) -> int:
        self.computed += 1
        return int(_vertex_max(self.verts, a, b, c))

    def key(self, a: int, b: int, c: int) -> tuple[int, int, int]:
        for x in (a, b, c):
            if not 0 <= x < self.n:
                raise IndexError(f"cell id {x} out of range [0, {self.n})")
        return tuple(sorted((int(a), int(b), int(c))))

    def get(self, a: int, b: int, c: int) -> int:
        a, b, c = self.key(a, b, c)
        if self.eager:
            return int(self.table[_rank(a, b, c)])
        return self._lazy(a, b, c)

    __call__ = get


def triple_cache_get(cache: TripleCache, key) -> int:
    return cache.get(*key)
