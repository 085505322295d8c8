from __future__ import annotations

import pytest

from lakeland_live.errors import (
    IllegalPlacement,
    InvariantViolation,
    NoLake,
    OutOfBounds,
)
from lakeland_live.events import EventKind, Build, CellRef, GameEvent, apply_grid_event
from lakeland_live.grid import TileGrid, TileKind, runoff_direction, uniform_grid

L, W, B = TileKind.LAND_EMPTY, TileKind.WATER, TileKind.WATER_BLOOM
HOUSE, CORN = TileKind.HOUSE, TileKind.CORN_FIELD


def grid_from_rows(rows):
    height = len(rows)
    width = len(rows[0])
    return TileGrid(width, height, tuple(k for row in rows for k in row))


def ev(kind, payload, seq=2):
    return GameEvent("testsession", seq, 0, kind, payload)


class TestTileGrid:
    def test_round_trips_cell_coordinates(self):
        g = grid_from_rows([[L, W], [CORN, L]])
        assert g.tile(1, 0) is W
        assert g.tile(0, 1) is CORN

    def test_rejects_bad_dimensions(self):
        with pytest.raises(InvariantViolation):
            TileGrid(0, 1, ())
        with pytest.raises(InvariantViolation):
            TileGrid(65, 1, (L,) * 65)

    def test_rejects_length_mismatch(self):
        with pytest.raises(InvariantViolation):
            TileGrid(2, 2, (L, L, L))

    def test_with_tile_is_persistent(self):
        g = uniform_grid(2, 2)
        g2 = g.with_tile(1, 1, HOUSE)
        assert g.tile(1, 1) is L
        assert g2.tile(1, 1) is HOUSE

    def test_out_of_bounds_access(self):
        g = uniform_grid(2, 2)
        with pytest.raises(OutOfBounds):
            g.tile(2, 0)


class TestApplyGridEvent:
    def test_build_sets_single_cell(self):
        g = uniform_grid(2, 2)
        out = apply_grid_event(g, ev(EventKind.BUILD, Build(CORN, 0, 0)))
        assert out.tile(0, 0) is CORN
        assert sum(1 for _, _, k in out.cells() if k is L) == 3

    def test_bloom_on_land_is_illegal(self):
        g = uniform_grid(2, 2)
        with pytest.raises(IllegalPlacement):
            apply_grid_event(g, ev(EventKind.BLOOM, CellRef(0, 0)))

    def test_bloom_then_clear_restores_grid(self):
        g = grid_from_rows([[L, W], [L, L]])
        bloomed = apply_grid_event(g, ev(EventKind.BLOOM, CellRef(1, 0)))
        assert bloomed.tile(1, 0) is B
        cleared = apply_grid_event(bloomed, ev(EventKind.BLOOM_CLEAR, CellRef(1, 0)))
        assert cleared == g

    def test_build_on_water_is_illegal(self):
        g = grid_from_rows([[L, W]])
        with pytest.raises(IllegalPlacement):
            apply_grid_event(g, ev(EventKind.BUILD, Build(HOUSE, 1, 0)))

    def test_build_out_of_bounds(self):
        g = uniform_grid(2, 2)
        with pytest.raises(OutOfBounds):
            apply_grid_event(g, ev(EventKind.BUILD, Build(HOUSE, 5, 0)))

    def test_clear_requires_bloomed_cell(self):
        g = grid_from_rows([[L, W]])
        with pytest.raises(IllegalPlacement):
            apply_grid_event(g, ev(EventKind.BLOOM_CLEAR, CellRef(1, 0)))

    def test_fold_is_deterministic(self):
        g = uniform_grid(4, 4)
        events = [
            ev(EventKind.BUILD, Build(CORN, 0, 0)),
            ev(EventKind.BUILD, Build(HOUSE, 3, 3)),
            ev(EventKind.BUILD, Build(CORN, 2, 1)),
        ]
        a = g
        b = g
        for e in events:
            a = apply_grid_event(a, e)
            b = apply_grid_event(b, e)
        assert a == b

    def test_water_exclusion_holds_after_every_apply(self):
        g = grid_from_rows([[L, L, W], [L, L, W], [L, L, W]])
        water_before = set(g.water_cells)
        for x in range(2):
            for y in range(3):
                g = apply_grid_event(g, ev(EventKind.BUILD, Build(CORN, x, y)))
                for wx, wy in water_before:
                    assert g.tile(wx, wy) in (W, B)


class TestRunoffDirection:
    def test_distant_diagonal_water(self):
        # farm at (1,1), lone water at (4,4): displacement (3,3) -> (+1,+1)
        g = uniform_grid(6, 6).with_tile(4, 4, W)
        assert runoff_direction(g, 1, 1) == (1, 1)

    def test_zero_component_promoted(self):
        # water due east: dy = 0 promotes to +1, movement stays diagonal
        g = uniform_grid(6, 6).with_tile(4, 1, W)
        assert runoff_direction(g, 1, 1) == (1, 1)

    def test_all_land_raises(self):
        with pytest.raises(NoLake):
            runoff_direction(uniform_grid(3, 3), 0, 0)

    def test_negative_direction(self):
        g = uniform_grid(6, 6).with_tile(0, 0, W)
        assert runoff_direction(g, 4, 3) == (-1, -1)

    def test_tie_breaks_by_smallest_y_then_x(self):
        # two water cells at equal Chebyshev distance from (2,2)
        g = uniform_grid(5, 5).with_tile(4, 4, W).with_tile(0, 0, W)
        # both at distance 2; (0,0) has smaller (y,x), so direction points there
        assert runoff_direction(g, 2, 2) == (-1, -1)

    def test_brute_force_oracle_agreement(self):
        # oracle: enumerate water cells, pick min (chebyshev, y, x), take signs
        g = grid_from_rows(
            [
                [L, L, L, L, W],
                [L, L, L, L, L],
                [W, L, L, L, L],
                [L, L, L, L, L],
                [L, L, W, L, L],
            ]
        )
        water = [(x, y) for x, y, k in g.cells() if k in (W, B)]
        for x in range(5):
            for y in range(5):
                d, wy, wx = min(
                    (max(abs(cx - x), abs(cy - y)), cy, cx) for cx, cy in water
                )
                expect = (1 if wx >= x else -1, 1 if wy >= y else -1)
                assert runoff_direction(g, x, y) == expect
