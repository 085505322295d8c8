"""The player's farm map: a small rectangular grid of tiles.

Grids are immutable values; every mutation returns a new grid. The palette
indices are part of the wire format and must never be renumbered.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterator

from .errors import InvariantViolation, NoLake, OutOfBounds

MAX_GRID_DIM = 64

# Initial nutrient level of land tiles; also the level above which runoff starts.
LAND_NUTRIENT_BASELINE = 0.6


class TileKind(IntEnum):
    """Tile palette. Indices are a wire contract, stable across versions."""

    LAND_EMPTY = 0
    WATER = 1
    WATER_BLOOM = 2
    HOUSE = 3
    CORN_FIELD = 4
    DAIRY_FARM = 5


BUILDING_KINDS = frozenset({TileKind.HOUSE, TileKind.CORN_FIELD, TileKind.DAIRY_FARM})
WATER_KINDS = frozenset({TileKind.WATER, TileKind.WATER_BLOOM})


@dataclass(frozen=True)
class TileGrid:
    """Row-major rectangle of tiles, at most 64x64."""

    width: int
    height: int
    tiles: tuple[TileKind, ...]

    def __post_init__(self):
        for dim in (self.width, self.height):
            if type(dim) is not int or not 1 <= dim <= MAX_GRID_DIM:
                raise InvariantViolation(
                    f"grid dimensions must be integers in 1..{MAX_GRID_DIM}, got "
                    f"{self.width}x{self.height}"
                )
        if len(self.tiles) != self.width * self.height:
            raise InvariantViolation(
                f"expected {self.width * self.height} tiles, got {len(self.tiles)}"
            )
        if any(not isinstance(t, TileKind) for t in self.tiles):
            raise InvariantViolation("tiles must all be TileKind values")

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def tile(self, x: int, y: int) -> TileKind:
        if not self.in_bounds(x, y):
            raise OutOfBounds(f"({x}, {y}) outside {self.width}x{self.height} grid")
        return self.tiles[y * self.width + x]

    def with_tile(self, x: int, y: int, kind: TileKind) -> "TileGrid":
        if not self.in_bounds(x, y):
            raise OutOfBounds(f"({x}, {y}) outside {self.width}x{self.height} grid")
        i = y * self.width + x
        return TileGrid(self.width, self.height, self.tiles[:i] + (kind,) + self.tiles[i + 1 :])

    def cells(self) -> Iterator[tuple[int, int, TileKind]]:
        for i, kind in enumerate(self.tiles):
            yield i % self.width, i // self.width, kind

    @cached_property
    def water_cells(self) -> tuple[tuple[int, int], ...]:
        return tuple((x, y) for x, y, k in self.cells() if k in WATER_KINDS)

    def count(self, kind: TileKind) -> int:
        return sum(1 for t in self.tiles if t is kind)


def uniform_grid(width: int, height: int, kind: TileKind = TileKind.LAND_EMPTY) -> TileGrid:
    return TileGrid(width, height, (kind,) * (width * height))


def nearest_water(grid: TileGrid, x: int, y: int) -> tuple[int, int]:
    """Closest water cell by Chebyshev distance; ties go to smallest (y, x)."""
    if not grid.water_cells:
        raise NoLake("grid has no water cells")
    best = min(grid.water_cells, key=lambda c: (max(abs(c[0] - x), abs(c[1] - y)), c[1], c[0]))
    return best


def runoff_direction(grid: TileGrid, x: int, y: int) -> tuple[int, int]:
    """Diagonal step from (x, y) toward the nearest lake.

    Runoff always moves diagonally, so an axis with zero displacement is
    promoted to +1. Raises NoLake when the grid has no water at all.
    """
    if not grid.in_bounds(x, y):
        raise OutOfBounds(f"({x}, {y}) outside {grid.width}x{grid.height} grid")
    wx, wy = nearest_water(grid, x, y)
    sx = 1 if wx >= x else -1
    sy = 1 if wy >= y else -1
    return sx, sy
