"""Exact minimum-area certificates for explicit point configurations.

Points live in the triangle (0, 0), (1, 0), (0, 1). That triangle has area
1/2, so the absolute cross product of a triple is already its area relative
to a unit-area triangle.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from pathlib import Path

# Published values used only for comparison output; no coordinates ship.
KNOWN_CONSTANTS = {
    6: ("optimal", Fraction(1, 8)),
    7: ("conjectured", Fraction(7, 72)),
}


class ConfigError(ValueError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class RationalConfig:
    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pts = tuple((Fraction(x), Fraction(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 3:
            raise ConfigError(f"need at least 3 points, got {len(pts)}")
        for i, (x, y) in enumerate(pts):
            if x < 0 or y < 0 or x + y > 1:
                raise ConfigError(f"point {i} ({x}, {y}) lies outside the triangle", index=i)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class LowerBoundCertificate:
    min_area: Fraction
    argmin_triple: tuple[int, int, int]
    all_triple_areas: dict[tuple[int, int, int], Fraction] | None = None


def normalized_area(p, q, r) -> Fraction:
    return abs((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def min_area(config: RationalConfig, keep_all: bool = False) -> LowerBoundCertificate:
    pts = config.points
    areas = {}
    best = None
    arg = None
    for t in itertools.combinations(range(len(pts)), 3):
        a = normalized_area(*(pts[i] for i in t))
        if keep_all:
            areas[t] = a
        if best is None or a < best:
            best, arg = a, t
    return LowerBoundCertificate(best, arg, areas if keep_all else None)


def scale_to_grid(config_or_area, P: int) -> int:
    """Largest grid value k with k / P**2 <= the configuration's min area."""
    if isinstance(config_or_area, RationalConfig):
        area = min_area(config_or_area).min_area
    else:
        area = Fraction(config_or_area)
    return floor(area * P * P)


def _parse_coord(s, where: str) -> Fraction:
    if not isinstance(s, str):
        raise ConfigError(f"{where}: coordinates must be strings like \"3/8\", got {s!r}")
    text = s.strip()
    if any(ch in text for ch in ".eE"):
        raise ConfigError(f"{where}: decimal literal {s!r} rejected; write it as num/den")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: cannot parse {s!r}: {exc}") from None


def parse_config(data) -> RationalConfig:
    """Build a config from decoded JSON: a list of ["num/den", "num/den"] pairs."""
    if not isinstance(data, list):
        raise ConfigError("config must be a JSON array of [x, y] pairs")
    points = []
    for i, pair in enumerate(data):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"point {i}: expected [x, y], got {pair!r}", index=i)
        points.append((_parse_coord(pair[0], f"point {i} x"),
                       _parse_coord(pair[1], f"point {i} y")))
    return RationalConfig(tuple(points))


def load_config(path) -> RationalConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from None
    return parse_config(data)


def dump_config(config: RationalConfig) -> str:
    return json.dumps([[str(x), str(y)] for x, y in config.points])
