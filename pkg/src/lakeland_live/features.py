"""Per-session model computation: the fold state and the 16 dashboard models.

Everything here is a pure function over immutable values. The caller is
responsible for applying a session's events in sequence order; given the
same events and receive timestamps, the resulting snapshots are identical.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .errors import DuplicateEvent, EmptyClass, SequenceGap
from .events import EventKind, GameEvent, apply_grid_event
from .grid import TileGrid, TileKind, runoff_direction, uniform_grid

PALETTE_VERSION = 1

# (snapshot field, model name, category, visualization)
MODEL_CATALOG: tuple[tuple[str, str, str, str], ...] = (
    ("tutorials_completed", "Tutorials Completed", "Progress", "Number"),
    ("rank_tutorial", "Tutorial Achievement Rank", "Progress", "Percentile"),
    ("rank_money", "Money Achievement Rank", "Progress", "Percentile"),
    ("rank_bloom", "Bloom Achievement Rank", "Progress", "Percentile"),
    ("rank_farm", "Farm Achievement Rank", "Progress", "Percentile"),
    ("rank_population", "Population Achievement Rank", "Progress", "Percentile"),
    ("playing_time", "Playing Time", "Game State", "Minutes:Seconds"),
    ("population", "Population", "Game State", "Icon + Number"),
    ("map_summary", "Map Summary", "Game State", "Bitmap"),
    ("town_composition", "Town Composition", "Strategy", "Icons + Numbers"),
    ("diagonal_strategy", "Diagonal Field Strategy Detector", "Strategy", "Binary Indicator"),
    ("idle_active", "Time Since Active", "Indecision", "Binary Indicator"),
    ("idle_building", "Time Since Last Building", "Indecision", "Binary Indicator"),
    ("idle_sale", "Time Since Last Sale", "Frustration", "Binary Indicator"),
    ("idle_explore", "Time Since Tile Exploration", "Give Up", "Binary Indicator"),
    ("farmer_deaths", "Farmer Deaths", "Death", "Icon + Number"),
)


@dataclass(frozen=True)
class IndicatorConfig:
    """Idle thresholds in seconds. A clock trips strictly above its threshold."""

    active_s: float = 60.0
    building_s: float = 120.0
    sale_s: float = 180.0
    explore_s: float = 120.0

    def __post_init__(self):
        for name in ("active_s", "building_s", "sale_s", "explore_s"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class SessionAccumulator:
    """Fold state for one session.

    All counters are monotone over the fold; the last_*_at clocks hold server
    receive times and default to started_at so a session that never performs
    an action eventually trips every idle indicator.
    """

    session_id: str
    started_at: int
    last_seq: int
    grid: TileGrid
    tutorials_done: frozenset[int]
    deaths_total: int
    population: int
    money_earned_total: int
    blooms_total: int
    fields_built_total: int
    last_input_at: int
    last_build_at: int
    last_sale_at: int
    last_inspect_at: int


def new_accumulator(session_id: str, started_at: int) -> SessionAccumulator:
    return SessionAccumulator(
        session_id=session_id,
        started_at=started_at,
        last_seq=0,
        grid=uniform_grid(1, 1),
        tutorials_done=frozenset(),
        deaths_total=0,
        population=0,
        money_earned_total=0,
        blooms_total=0,
        fields_built_total=0,
        last_input_at=started_at,
        last_build_at=started_at,
        last_sale_at=started_at,
        last_inspect_at=started_at,
    )


def apply_event(acc: SessionAccumulator, event: GameEvent, received_at: int) -> SessionAccumulator:
    """Fold the next event (seq must be exactly last_seq + 1) into the state."""
    if event.session_id != acc.session_id:
        raise ValueError(
            f"event for session {event.session_id!r} applied to {acc.session_id!r}"
        )
    if event.seq <= acc.last_seq:
        raise DuplicateEvent(f"seq {event.seq} already applied (last {acc.last_seq})")
    if event.seq > acc.last_seq + 1:
        raise SequenceGap(f"seq {event.seq} after {acc.last_seq} leaves a gap")

    changes: dict = {"last_seq": event.seq, "last_input_at": received_at}
    kind, p = event.kind, event.payload
    if kind is EventKind.SESSION_START:
        changes["grid"] = p.grid
    elif kind is EventKind.TUTORIAL_COMPLETE:
        changes["tutorials_done"] = acc.tutorials_done | {p.tutorial_id}
    elif kind is EventKind.BUILD:
        changes["grid"] = apply_grid_event(acc.grid, event)
        changes["last_build_at"] = received_at
        if p.building is TileKind.CORN_FIELD:
            changes["fields_built_total"] = acc.fields_built_total + 1
    elif kind is EventKind.SELL:
        changes["money_earned_total"] = acc.money_earned_total + p.money
        changes["last_sale_at"] = received_at
    elif kind is EventKind.TILE_INSPECT:
        changes["last_inspect_at"] = received_at
    elif kind is EventKind.FARMER_DEATH:
        changes["deaths_total"] = acc.deaths_total + p.count
        changes["population"] = max(0, acc.population - p.count)
    elif kind is EventKind.POPULATION:
        changes["population"] = p.count
    elif kind is EventKind.BLOOM:
        changes["blooms_total"] = acc.blooms_total + 1
        changes["grid"] = apply_grid_event(acc.grid, event)
    elif kind is EventKind.BLOOM_CLEAR:
        changes["grid"] = apply_grid_event(acc.grid, event)
    # FERTILIZE, ACHIEVEMENT and INPUT only refresh the activity clock
    return replace(acc, **changes)


def percentile_rank(value, class_values: Iterable) -> float:
    """Midrank percentile of value within the class (self included).

    100 * (strictly_below + 0.5 * equal) / total; always in (0, 100) and the
    class mean over any one track is exactly 50.
    """
    total = 0
    below = 0
    equal = 0
    for v in class_values:
        total += 1
        if v < value:
            below += 1
        elif v == value:
            equal += 1
    if total == 0:
        raise EmptyClass("percentile rank needs at least one class value")
    return 100.0 * (below + 0.5 * equal) / total


def detect_diagonal_strategy(grid: TileGrid) -> bool:
    """True iff some corn field has another corn field one runoff step away."""
    corn = [(x, y) for x, y, k in grid.cells() if k is TileKind.CORN_FIELD]
    if len(corn) < 2 or not grid.water_cells:
        return False
    for x, y in corn:
        sx, sy = runoff_direction(grid, x, y)
        nx, ny = x + sx, y + sy
        if grid.in_bounds(nx, ny) and grid.tile(nx, ny) is TileKind.CORN_FIELD:
            return True
    return False


def render_map_summary(grid: TileGrid) -> dict:
    """Lossless palette bitmap of the grid, rows[y][x] = palette index."""
    rows = [
        [int(grid.tiles[y * grid.width + x]) for x in range(grid.width)]
        for y in range(grid.height)
    ]
    return {
        "width": grid.width,
        "height": grid.height,
        "palette_version": PALETTE_VERSION,
        "rows": rows,
    }


def town_composition(grid: TileGrid) -> dict:
    return {
        "houses": grid.count(TileKind.HOUSE),
        "corn_fields": grid.count(TileKind.CORN_FIELD),
        "dairy_farms": grid.count(TileKind.DAIRY_FARM),
    }


def format_playing_time(elapsed_ms: int) -> str:
    """Whole seconds as M:SS, minutes unbounded."""
    seconds = max(0, elapsed_ms) // 1000
    return f"{seconds // 60}:{seconds % 60:02d}"


@dataclass(frozen=True)
class ModelSnapshot:
    """The 16 dashboard model values for one player at one instant."""

    tutorials_completed: int
    rank_tutorial: float
    rank_money: float
    rank_bloom: float
    rank_farm: float
    rank_population: float
    playing_time: str
    population: int
    map_summary: dict
    town_composition: dict
    diagonal_strategy: bool
    idle_active: bool
    idle_building: bool
    idle_sale: bool
    idle_explore: bool
    farmer_deaths: int

    def to_obj(self) -> dict:
        """JSON object with the 16 model fields in canonical order."""
        return {field: getattr(self, field) for field, _, _, _ in MODEL_CATALOG}


def _idle(now: int, last_at: int, threshold_s: float) -> bool:
    return (now - last_at) > threshold_s * 1000.0


def snapshot(
    acc: SessionAccumulator,
    now: int,
    class_accs: Sequence[SessionAccumulator],
    cfg: IndicatorConfig = IndicatorConfig(),
    bloom_higher_is_better: bool = True,
) -> ModelSnapshot:
    """Compute all 16 models for one session against its class baseline.

    class_accs must contain acc; all five percentile ranks are computed from
    the same class-wide value multisets.
    """
    if acc not in class_accs:
        raise ValueError("session accumulator must be part of its class baseline")

    def rank(extract, flip=False):
        value = extract(acc)
        values = [extract(a) for a in class_accs]
        if flip:
            value = -value
            values = [-v for v in values]
        return percentile_rank(value, values)

    return ModelSnapshot(
        tutorials_completed=len(acc.tutorials_done),
        rank_tutorial=rank(lambda a: len(a.tutorials_done)),
        rank_money=rank(lambda a: a.money_earned_total),
        rank_bloom=rank(lambda a: a.blooms_total, flip=not bloom_higher_is_better),
        rank_farm=rank(lambda a: a.fields_built_total),
        rank_population=rank(lambda a: a.population),
        playing_time=format_playing_time(now - acc.started_at),
        population=acc.population,
        map_summary=render_map_summary(acc.grid),
        town_composition=town_composition(acc.grid),
        diagonal_strategy=detect_diagonal_strategy(acc.grid),
        idle_active=_idle(now, acc.last_input_at, cfg.active_s),
        idle_building=_idle(now, acc.last_build_at, cfg.building_s),
        idle_sale=_idle(now, acc.last_sale_at, cfg.sale_s),
        idle_explore=_idle(now, acc.last_inspect_at, cfg.explore_s),
        farmer_deaths=acc.deaths_total,
    )
