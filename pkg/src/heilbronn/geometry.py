"""Integer model of the subdivided reference triangle.

The reference triangle has corners (0, 0), (P, 0), (0, P). Every lattice
point, cell vertex and area below is an exact integer; areas are carried
doubled so no division ever happens.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

# Doubled areas are at most P**2 and are stored in 32-bit tables.
MAX_P = 46340


class Variant(str, enum.Enum):
    INTERIOR = "interior"
    PERIMETER = "perimeter"


class Orientation(str, enum.Enum):
    UP = "up"
    DOWN = "down"
    SEGMENT = "segment"


class IntPoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class GridCell:
    id: int
    vertices: tuple[IntPoint, ...]
    orientation: Orientation


def doubled_area(p, q, r) -> int:
    """Twice the area of triangle pqr, as an exact non-negative integer."""
    return abs((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def in_triangle(point, P: int) -> bool:
    x, y = point
    return x >= 0 and y >= 0 and x + y <= P


def _interior_cells(P: int) -> list[GridCell]:
    cells: list[GridCell] = []
    for j in range(P):
        for i in range(P - j):
            cells.append(GridCell(
                len(cells),
                (IntPoint(i, j), IntPoint(i + 1, j), IntPoint(i, j + 1)),
                Orientation.UP,
            ))
            if i + j <= P - 2:
                cells.append(GridCell(
                    len(cells),
                    (IntPoint(i + 1, j), IntPoint(i, j + 1), IntPoint(i + 1, j + 1)),
                    Orientation.DOWN,
                ))
    return cells


def _perimeter_cells(P: int) -> list[GridCell]:
    # Walk the boundary counter-clockwise from the origin so consecutive
    # segments share an endpoint.
    corners = [(0, 0), (P, 0), (0, P)]
    cells: list[GridCell] = []
    for k in range(3):
        (x0, y0), (x1, y1) = corners[k], corners[(k + 1) % 3]
        dx, dy = (x1 - x0) // P, (y1 - y0) // P
        for t in range(P):
            a = IntPoint(x0 + t * dx, y0 + t * dy)
            b = IntPoint(x0 + (t + 1) * dx, y0 + (t + 1) * dy)
            cells.append(GridCell(len(cells), (a, b), Orientation.SEGMENT))
    return cells


@dataclass(frozen=True)
class GridSpec:
    P: int
    variant: Variant = Variant.INTERIOR

    def __post_init__(self):
        if not isinstance(self.P, (int, np.integer)) or isinstance(self.P, bool):
            raise TypeError(f"P must be an integer, got {self.P!r}")
        if self.P < 1:
            raise ValueError(f"P must be >= 1, got {self.P}")
        if self.P > MAX_P:
            raise ValueError(f"P={self.P} would overflow 32-bit doubled areas")
        object.__setattr__(self, "variant", Variant(self.variant))

    @property
    def cell_count(self) -> int:
        return self.P * self.P if self.variant is Variant.INTERIOR else 3 * self.P


class Grid:
    """The cells of one subdivision, plus its lattice symmetries."""

    def __init__(self, spec: GridSpec):
        self.spec = spec
        self.P = spec.P
        self.variant = spec.variant
        if spec.variant is Variant.INTERIOR:
            self.cells = _interior_cells(spec.P)
        else:
            self.cells = _perimeter_cells(spec.P)
        assert len(self.cells) == spec.cell_count

    def __len__(self) -> int:
        return len(self.cells)

    def __getitem__(self, i: int) -> GridCell:
        return self.cells[i]

    def __iter__(self):
        return iter(self.cells)

    @cached_property
    def vertex_array(self) -> np.ndarray:
        """Cell vertices as an int64 array of shape (cells, k, 2)."""
        return np.array([c.vertices for c in self.cells], dtype=np.int64)

    @cached_property
    def _vertex_key_index(self) -> dict[frozenset, int]:
        return {frozenset(c.vertices): c.id for c in self.cells}

    def cell_with_vertices(self, vertices) -> GridCell:
        return self.cells[self._vertex_key_index[frozenset(map(IntPoint._make, vertices))]]

    def up(self, i: int, j: int) -> GridCell:
        return self.cell_with_vertices([(i, j), (i + 1, j), (i, j + 1)])

    def down(self, i: int, j: int) -> GridCell:
        return self.cell_with_vertices([(i + 1, j), (i, j + 1), (i + 1, j + 1)])

    @cached_property
    def symmetries(self) -> np.ndarray:
        """Cell permutations for the 6 lattice symmetries of the triangle.

        Row 0 is the identity. Generated by the swap (x, y) -> (y, x) and the
        rotation (x, y) -> (y, P - x - y).
        """
        maps = self.point_maps(self.P)
        perms = np.empty((6, len(self.cells)), dtype=np.int64)
        for s, f in enumerate(maps):
            for c in self.cells:
                perms[s, c.id] = self.cell_with_vertices([f(v) for v in c.vertices]).id
        return perms

    @staticmethod
    def point_maps(P: int):
        """The 6 symmetries as functions on points (work for any number type)."""
        rot = lambda p: (p[1], P - p[0] - p[1])
        swap = lambda p: (p[1], p[0])
        maps = [lambda p: p, rot, lambda p: rot(rot(p))]
        return maps + [lambda p, f=f: swap(f(p)) for f in maps]


def build_grid(spec: GridSpec) -> list[GridCell]:
    return Grid(spec).cells
