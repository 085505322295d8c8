"""Headless Lakeland-lite simulator with scripted bot players.

One independent world per player. Worlds are deterministic functions of
(seed, config, policy): every event byte, the nutrient field and the ground
truth summary replay identically for the same inputs. The mechanics mirror
the game qualitatively (corn depletes nutrients, fertilizer runs off
diagonally toward the nearest lake, saturated lakes bloom, hungry farmers
die); all numeric constants are calibration knobs, not claims about the
real game.
"""
from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Protocol, Sequence

import httpx

from .codec import encode_event, event_to_obj
from .errors import BadLayout, SinkUnreachable
from .events import (
    Achievement,
    Build,
    CellRef,
    EventKind,
    FarmerDeath,
    GameEvent,
    Input,
    Population,
    Sell,
    SessionStart,
    TutorialComplete,
)
from .grid import (
    LAND_NUTRIENT_BASELINE,
    WATER_KINDS,
    TileGrid,
    TileKind,
    runoff_direction,
)

SIM_BATCH_SECONDS = 2.0  # events are batched per simulated 2 s


@dataclass(frozen=True)
class SimConfig:
    tick_s: float = 1.0
    corn_growth_ticks: int = 20
    corn_nutrient_per_harvest: float = 0.25
    fertilizer_boost: float = 0.5
    runoff_fraction_per_tick: float = 0.05
    bloom_threshold: float = 0.8
    bloom_clear_level: float = 0.4
    corn_price: int = 5
    milk_price: int = 8
    food_per_harvest: int = 2
    upkeep_food_per_farmer_per_10_ticks: int = 1
    farmers_per_house: int = 2
    house_cost: int = 40
    corn_cost: int = 20
    dairy_cost: int = 60
    # tier units; money thresholds are units x10, all other tracks are raw units
    achievement_tiers: tuple[int, ...] = (1, 2, 5, 10, 20)

    def __post_init__(self):
        numeric = (
            self.tick_s,
            self.corn_growth_ticks,
            self.corn_nutrient_per_harvest,
            self.fertilizer_boost,
            self.runoff_fraction_per_tick,
            self.bloom_threshold,
            self.bloom_clear_level,
            self.corn_price,
            self.milk_price,
            self.food_per_harvest,
            self.upkeep_food_per_farmer_per_10_ticks,
            self.farmers_per_house,
            self.house_cost,
            self.corn_cost,
            self.dairy_cost,
        )
        if any(v <= 0 for v in numeric) or any(t <= 0 for t in self.achievement_tiers):
            raise ValueError("all simulator constants must be strictly positive")
        if self.bloom_clear_level >= self.bloom_threshold:
            raise ValueError("bloom_clear_level must be below bloom_threshold")

    @property
    def tick_ms(self) -> int:
        return round(self.tick_s * 1000)


class BotPolicy(str, Enum):
    DIAGONAL_FARMER = "DIAGONAL_FARMER"
    GRID_FARMER = "GRID_FARMER"
    IDLER = "IDLER"
    QUITTER = "QUITTER"
    BALANCED = "BALANCED"


@dataclass
class GroundTruth:
    """Authoritative per-player tallies, used as the detector oracle."""

    diagonal_usage: bool = False
    deaths: int = 0
    blooms: int = 0
    tutorials: int = 0
    fields_built: int = 0
    money_earned: int = 0
    events: int = 0


@dataclass
class WorldState:
    config: SimConfig
    session_id: str
    grid: TileGrid
    nutrients: list[float]
    money: int
    food: int
    population: int
    tick: int
    blooms_active: set[tuple[int, int]]
    achievements_awarded: set[tuple[str, int]]
    rng: random.Random
    next_seq: int
    fertilizer_added: float = 0.0
    harvest_consumed: float = 0.0
    clamp_loss: float = 0.0
    truth: GroundTruth = field(default_factory=GroundTruth)
    mem: dict = field(default_factory=dict)

    def nutrient_mass(self) -> float:
        return math.fsum(self.nutrients)

    def _idx(self, x: int, y: int) -> int:
        return y * self.grid.width + x


def corner_lake(width: int, height: int, size: int = 2) -> frozenset[tuple[int, int]]:
    """A size x size lake in the top-left corner."""
    return frozenset((x, y) for x in range(size) for y in range(size))


def default_lake(width: int, height: int) -> frozenset[tuple[int, int]]:
    """A 2x2 lake inset one cell from the bottom-right corner."""
    return frozenset(
        (x, y) for x in (width - 3, width - 2) for y in (height - 3, height - 2)
    )


def world_init(
    width: int,
    height: int,
    lake_layout: frozenset[tuple[int, int]],
    seed: int,
    session_id: str | None = None,
    config: SimConfig | None = None,
) -> tuple[WorldState, list[GameEvent]]:
    """Create a fresh world and emit its SESSION_START event."""
    config = config or SimConfig()
    lake = frozenset(lake_layout)
    if not lake:
        raise BadLayout("lake layout needs at least one water cell")
    if not all(0 <= x < width and 0 <= y < height for x, y in lake):
        raise BadLayout("lake cells must be inside the grid")
    tiles = tuple(
        TileKind.WATER if (i % width, i // width) in lake else TileKind.LAND_EMPTY
        for i in range(width * height)
    )
    grid = TileGrid(width, height, tiles)
    nutrients = [
        0.0 if k in WATER_KINDS else LAND_NUTRIENT_BASELINE for k in grid.tiles
    ]
    rng = random.Random(seed)
    world = WorldState(
        config=config,
        session_id=session_id or f"sim-{seed & 0xFFFFFFFF:08x}",
        grid=grid,
        nutrients=nutrients,
        money=100,
        food=0,
        population=0,
        tick=0,
        blooms_active=set(),
        achievements_awarded=set(),
        rng=rng,
        next_seq=1,
    )
    world.mem["planted"] = {}
    world.mem["idler_k"] = rng.randint(0, 5)
    world.mem["quit_at"] = rng.randint(30, 90)
    events = [_emit(world, EventKind.SESSION_START, SessionStart(grid))]
    world.truth.events = 1
    return world, events


def _emit(world: WorldState, kind: EventKind, payload) -> GameEvent:
    event = GameEvent(
        session_id=world.session_id,
        seq=world.next_seq,
        t_ms=world.tick * world.config.tick_ms,
        kind=kind,
        payload=payload,
    )
    world.next_seq += 1
    return event


def runoff_step(world: WorldState) -> WorldState:
    """Move excess nutrients one diagonal step toward the nearest lake.

    Each land cell above the baseline donates runoff_fraction x excess to the
    cell one runoff step away, computed simultaneously from the pre-step
    field. Mass is conserved, then cells are clamped to [0, 1] with the
    clamped amount recorded as loss. A step that would leave the grid keeps
    the nutrients in the donor cell.
    """
    grid = world.grid
    if not grid.water_cells:
        return world
    cfg = world.config
    nutrients = world.nutrients
    transfers = []
    for i, kind in enumerate(grid.tiles):
        if kind in WATER_KINDS:
            continue
        excess = nutrients[i] - LAND_NUTRIENT_BASELINE
        if excess <= 0:
            continue
        x, y = i % grid.width, i // grid.width
        sx, sy = runoff_direction(grid, x, y)
        tx, ty = x + sx, y + sy
        if grid.in_bounds(tx, ty):
            transfers.append((i, ty * grid.width + tx, cfg.runoff_fraction_per_tick * excess))
    for src, dst, amount in transfers:
        nutrients[src] -= amount
        nutrients[dst] += amount
    for i, level in enumerate(nutrients):
        if level > 1.0:
            world.clamp_loss += level - 1.0
            nutrients[i] = 1.0
    return world


def sim_tick(world: WorldState, policy: BotPolicy) -> tuple[WorldState, list[GameEvent]]:
    """Advance one tick: policy action, growth, runoff, blooms, upkeep, awards."""
    world.tick += 1
    events: list[GameEvent] = []
    _policy_action(world, policy, events)
    _corn_growth(world)
    runoff_step(world)
    _bloom_check(world, events)
    if world.tick % 10 == 0:
        _upkeep(world, events)
    _achievements(world, events)
    world.truth.events += len(events)
    return world, events


# --- tick phases -------------------------------------------------------------


def _corn_growth(world: WorldState) -> None:
    cfg = world.config
    for cell in sorted(world.mem["planted"]):
        age = world.tick - world.mem["planted"][cell]
        if age > 0 and age % cfg.corn_growth_ticks == 0:
            i = world._idx(*cell)
            if world.nutrients[i] >= cfg.corn_nutrient_per_harvest:
                world.nutrients[i] -= cfg.corn_nutrient_per_harvest
                world.harvest_consumed += cfg.corn_nutrient_per_harvest
                world.food += cfg.food_per_harvest


def _bloom_check(world: WorldState, events: list[GameEvent]) -> None:
    cfg = world.config
    for x, y in list(world.grid.water_cells):
        level = world.nutrients[world._idx(x, y)]
        bloomed = (x, y) in world.blooms_active
        if not bloomed and level >= cfg.bloom_threshold:
            world.blooms_active.add((x, y))
            world.grid = world.grid.with_tile(x, y, TileKind.WATER_BLOOM)
            events.append(_emit(world, EventKind.BLOOM, CellRef(x, y)))
            world.truth.blooms += 1
        elif bloomed and level < cfg.bloom_clear_level:
            world.blooms_active.discard((x, y))
            world.grid = world.grid.with_tile(x, y, TileKind.WATER)
            events.append(_emit(world, EventKind.BLOOM_CLEAR, CellRef(x, y)))


def _upkeep(world: WorldState, events: list[GameEvent]) -> None:
    need = world.population * world.config.upkeep_food_per_farmer_per_10_ticks
    if need == 0:
        return
    if world.food >= need:
        world.food -= need
        return
    deficit = need - world.food
    world.food = 0
    deaths = min(deficit, world.population)
    world.population -= deaths
    world.truth.deaths += deaths
    events.append(_emit(world, EventKind.FARMER_DEATH, FarmerDeath(deaths)))
    events.append(_emit(world, EventKind.POPULATION, Population(world.population)))


def _achievements(world: WorldState, events: list[GameEvent]) -> None:
    cfg = world.config
    values = {
        "tutorial": world.truth.tutorials,
        "money": world.truth.money_earned,
        "bloom": world.truth.blooms,
        "farm": world.truth.fields_built,
        "population": world.population,
    }
    for track, value in values.items():
        for tier, units in enumerate(cfg.achievement_tiers, start=1):
            threshold = units * 10 if track == "money" else units
            if value >= threshold and (track, tier) not in world.achievements_awarded:
                world.achievements_awarded.add((track, tier))
                events.append(_emit(world, EventKind.ACHIEVEMENT, Achievement(track, tier)))


# --- bot policies ------------------------------------------------------------


def _policy_action(world: WorldState, policy: BotPolicy, events: list[GameEvent]) -> None:
    if policy is BotPolicy.IDLER:
        if world.tick <= world.mem["idler_k"]:
            _emit_tutorial(world, events)
        return
    if world.tick <= 6:
        _emit_tutorial(world, events)
        return
    if policy is BotPolicy.QUITTER:
        if world.tick > world.mem["quit_at"]:
            events.append(_emit(world, EventKind.INPUT, Input()))
            return
        if world.grid.count(TileKind.HOUSE) == 0 and world.money >= world.config.house_cost:
            cell = _next_even_row_cell(world)
            if cell:
                _build(world, events, TileKind.HOUSE, cell)
                return
        _farmer_action(world, events, diagonal=False)
        return
    if policy is BotPolicy.BALANCED:
        _balanced_action(world, events)
        return
    _farmer_action(world, events, diagonal=policy is BotPolicy.DIAGONAL_FARMER)


def _emit_tutorial(world: WorldState, events: list[GameEvent]) -> None:
    events.append(
        _emit(world, EventKind.TUTORIAL_COMPLETE, TutorialComplete(world.truth.tutorials))
    )
    world.truth.tutorials += 1


def _farmer_action(world: WorldState, events: list[GameEvent], diagonal: bool) -> None:
    cfg = world.config
    if world.tick % 3 == 0 and world.money >= cfg.corn_cost:
        cell = _next_chain_cell(world) if diagonal else _next_even_row_cell(world)
        if cell is not None:
            _build(world, events, TileKind.CORN_FIELD, cell)
            if diagonal:
                world.mem["chain_prev"] = cell
            return
    if world.food >= 4:
        _sell_corn(world, events, 4)
        return
    if world.tick % 5 == 0:
        _inspect_random(world, events)
        return
    events.append(_emit(world, EventKind.INPUT, Input()))


def _balanced_action(world: WorldState, events: list[GameEvent]) -> None:
    cfg = world.config
    grid = world.grid
    t = world.tick
    houses = grid.count(TileKind.HOUSE)
    corn = grid.count(TileKind.CORN_FIELD)
    dairy = grid.count(TileKind.DAIRY_FARM)
    # houses wait for a food buffer so the new farmers do not starve
    if houses < 2 and world.money >= cfg.house_cost and world.food >= 6 * (houses + 1) and t % 7 == 0:
        cell = _nearest_lake_cell(world)
        if cell:
            _build(world, events, TileKind.HOUSE, cell)
            return
    if corn < 6 and world.money >= cfg.corn_cost and t % 3 == 0:
        cell = _nearest_lake_cell(world)
        if cell:
            _build(world, events, TileKind.CORN_FIELD, cell)
            return
    if t % 2 == 0:
        low = _low_nutrient_field(world)
        if low is not None:
            _fertilize(world, events, low)
            return
    if dairy < 1 and world.money >= cfg.dairy_cost and corn >= 4:
        cell = _nearest_lake_cell(world)
        if cell:
            _build(world, events, TileKind.DAIRY_FARM, cell)
            return
    if world.food >= world.population * 2 + 4:
        _sell_corn(world, events, 4)
        return
    if dairy >= 1 and t % 11 == 0:
        _sell_milk(world, events)
        return
    if t % 5 == 0:
        _inspect_random(world, events)
        return
    events.append(_emit(world, EventKind.INPUT, Input()))


def _next_chain_cell(world: WorldState) -> tuple[int, int] | None:
    """Next field along the runoff diagonal; restart the chain when blocked."""
    grid = world.grid
    prev = world.mem.get("chain_prev")
    if prev is not None:
        sx, sy = runoff_direction(grid, *prev)
        cand = (prev[0] + sx, prev[1] + sy)
        if grid.in_bounds(*cand) and grid.tile(*cand) is TileKind.LAND_EMPTY:
            return cand
    empties = [(x, y) for x, y, k in grid.cells() if k is TileKind.LAND_EMPTY]
    if not empties or not grid.water_cells:
        return None

    def chebyshev_to_water(c):
        return min(max(abs(wx - c[0]), abs(wy - c[1])) for wx, wy in grid.water_cells)

    return max(empties, key=lambda c: (chebyshev_to_water(c), -c[1], -c[0]))


def _next_even_row_cell(world: WorldState) -> tuple[int, int] | None:
    # even rows only: one runoff step from an even row always lands on an odd
    # row, so fields placed this way are never diagonal-chained
    grid = world.grid
    for y in range(0, grid.height, 2):
        for x in range(grid.width):
            if grid.tile(x, y) is TileKind.LAND_EMPTY:
                return (x, y)
    return None


def _nearest_lake_cell(world: WorldState) -> tuple[int, int] | None:
    grid = world.grid
    empties = [(x, y) for x, y, k in grid.cells() if k is TileKind.LAND_EMPTY]
    if not empties or not grid.water_cells:
        return None

    def chebyshev_to_water(c):
        return min(max(abs(wx - c[0]), abs(wy - c[1])) for wx, wy in grid.water_cells)

    return min(empties, key=lambda c: (chebyshev_to_water(c), c[1], c[0]))


def _low_nutrient_field(world: WorldState) -> tuple[int, int] | None:
    fields = [
        (world.nutrients[world._idx(x, y)], y, x)
        for x, y, k in world.grid.cells()
        if k is TileKind.CORN_FIELD
    ]
    needy = [(n, y, x) for n, y, x in fields if n < 0.5]
    if not needy:
        return None
    n, y, x = min(needy)
    return (x, y)


def _build(world: WorldState, events: list[GameEvent], kind: TileKind, cell: tuple[int, int]) -> None:
    cfg = world.config
    cost = {
        TileKind.HOUSE: cfg.house_cost,
        TileKind.CORN_FIELD: cfg.corn_cost,
        TileKind.DAIRY_FARM: cfg.dairy_cost,
    }[kind]
    x, y = cell
    if kind is TileKind.CORN_FIELD:
        _note_diagonal_usage(world, cell)
    world.money -= cost
    world.grid = world.grid.with_tile(x, y, kind)
    events.append(_emit(world, EventKind.BUILD, Build(kind, x, y)))
    if kind is TileKind.CORN_FIELD:
        world.mem["planted"][cell] = world.tick
        world.truth.fields_built += 1
    elif kind is TileKind.HOUSE:
        world.population += cfg.farmers_per_house
        events.append(_emit(world, EventKind.POPULATION, Population(world.population)))


def _note_diagonal_usage(world: WorldState, cell: tuple[int, int]) -> None:
    """Record, at placement time, whether this field chains diagonally."""
    if world.truth.diagonal_usage:
        return
    grid = world.grid
    if not grid.water_cells:
        return
    x, y = cell
    corn = [(cx, cy) for cx, cy, k in grid.cells() if k is TileKind.CORN_FIELD]
    for fx, fy in corn:
        sx, sy = runoff_direction(grid, fx, fy)
        if (fx + sx, fy + sy) == (x, y):
            world.truth.diagonal_usage = True
            return
    sx, sy = runoff_direction(grid, x, y)
    if (x + sx, y + sy) in corn:
        world.truth.diagonal_usage = True


def _fertilize(world: WorldState, events: list[GameEvent], cell: tuple[int, int]) -> None:
    i = world._idx(*cell)
    world.nutrients[i] += world.config.fertilizer_boost
    world.fertilizer_added += world.config.fertilizer_boost
    if world.nutrients[i] > 1.0:
        world.clamp_loss += world.nutrients[i] - 1.0
        world.nutrients[i] = 1.0
    events.append(_emit(world, EventKind.FERTILIZE, CellRef(*cell)))


def _sell_corn(world: WorldState, events: list[GameEvent], amount: int) -> None:
    amount = min(world.food, amount)
    if amount <= 0:
        return
    revenue = amount * world.config.corn_price
    world.food -= amount
    world.money += revenue
    world.truth.money_earned += revenue
    events.append(_emit(world, EventKind.SELL, Sell("corn", amount, revenue)))


def _sell_milk(world: WorldState, events: list[GameEvent]) -> None:
    count = world.grid.count(TileKind.DAIRY_FARM)
    if count == 0:
        return
    revenue = count * world.config.milk_price
    world.money += revenue
    world.truth.money_earned += revenue
    events.append(_emit(world, EventKind.SELL, Sell("milk", count, revenue)))


def _inspect_random(world: WorldState, events: list[GameEvent]) -> None:
    x = world.rng.randrange(world.grid.width)
    y = world.rng.randrange(world.grid.height)
    events.append(_emit(world, EventKind.TILE_INSPECT, CellRef(x, y)))


# --- class-scale runner -------------------------------------------------------


class EventSink(Protocol):
    def register(self, name: str, index: int, seed: int) -> str: ...

    def post(self, session_id: str, events: Sequence[GameEvent]) -> None: ...

    def finish(self, summary: dict) -> None: ...


class FileSink:
    """Writes the wire-format event log plus a .truth.json sidecar."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        stem = self.path.name
        if stem.endswith(".jsonl"):
            stem = stem[: -len(".jsonl")]
        self.truth_path = self.path.with_name(stem + ".truth.json")
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self.path, "w", encoding="utf-8")

    def register(self, name: str, index: int, seed: int) -> str:
        return f"sim-{seed & 0xFFFFFFFF:08x}-p{index:02d}"

    def post(self, session_id: str, events: Sequence[GameEvent]) -> None:
        self._fh.write("".join(encode_event(e) + "\n" for e in events))

    def finish(self, summary: dict) -> None:
        self._fh.close()
        self.truth_path.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")


class LiveSink:
    """Registers bot players against a running service and posts batches.

    Transport failures are retried with exponential backoff up to
    max_attempts; after that the affected player is aborted.
    """

    def __init__(
        self,
        base_url: str,
        class_code: str,
        client: httpx.Client | None = None,
        max_attempts: int = 5,
        backoff_s: float = 0.2,
    ):
        self.base_url = base_url.rstrip("/")
        self.class_code = class_code
        self._client = client or httpx.Client(timeout=10.0)
        self._owns_client = client is None
        self.max_attempts = max_attempts
        self.backoff_s = backoff_s

    def _request(self, method: str, url: str, body: dict) -> httpx.Response:
        last_error: Exception | None = None
        for attempt in range(self.max_attempts):
            if attempt:
                time.sleep(self.backoff_s * 2 ** (attempt - 1))
            try:
                resp = self._client.request(method, url, json=body)
            except httpx.HTTPError as exc:
                last_error = exc
                continue
            if resp.status_code >= 500:
                last_error = RuntimeError(f"{resp.status_code} from {url}")
                continue
            return resp
        raise SinkUnreachable(f"{url} unreachable after {self.max_attempts} attempts: {last_error}")

    def register(self, name: str, index: int, seed: int) -> str:
        resp = self._request(
            "POST", f"{self.base_url}/api/classes/{self.class_code}/players", {"name": name}
        )
        if resp.status_code != 201:
            raise SinkUnreachable(f"registration of {name!r} failed: {resp.text}")
        return resp.json()["session_id"]

    def post(self, session_id: str, events: Sequence[GameEvent]) -> None:
        body = {"session_id": session_id, "events": [event_to_obj(e) for e in events]}
        resp = self._request("POST", f"{self.base_url}/api/ingest", body)
        if resp.status_code != 200:
            raise SinkUnreachable(f"ingest for {session_id} rejected: {resp.text}")

    def finish(self, summary: dict) -> None:
        if self._owns_client:
            self._client.close()


@dataclass
class _Player:
    name: str
    session_id: str
    policy: BotPolicy
    world: WorldState
    buffer: list[GameEvent]
    aborted: bool = False


def _player_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index * 7_919) & 0x7FFFFFFF


def run_class_simulation(
    n_players: int,
    policies: Sequence[BotPolicy],
    duration_ticks: int,
    seed: int,
    sink: EventSink,
    width: int = 12,
    height: int = 12,
    lake_layout: frozenset[tuple[int, int]] | None = None,
    config: SimConfig | None = None,
) -> dict:
    """Simulate one class: an independent world per player, batched to the sink."""
    if len(policies) != n_players:
        raise ValueError(f"need {n_players} policies, got {len(policies)}")
    config = config or SimConfig()
    lake = lake_layout if lake_layout is not None else default_lake(width, height)

    players: list[_Player] = []
    for i, policy in enumerate(policies):
        name = f"bot-{i + 1:02d}"
        try:
            session_id = sink.register(name, i, seed)
        except SinkUnreachable:
            players.append(
                _Player(name, "", policy, None, [], aborted=True)  # type: ignore[arg-type]
            )
            continue
        world, events = world_init(
            width, height, lake, _player_seed(seed, i), session_id=session_id, config=config
        )
        players.append(_Player(name, session_id, policy, world, list(events)))

    def flush():
        for p in players:
            if p.aborted or not p.buffer:
                continue
            try:
                sink.post(p.session_id, p.buffer)
                p.buffer = []
            except SinkUnreachable:
                p.aborted = True
                p.buffer = []

    batch_ticks = max(1, round(SIM_BATCH_SECONDS / config.tick_s))
    for tick in range(1, duration_ticks + 1):
        for p in players:
            if p.aborted:
                continue
            _, events = sim_tick(p.world, p.policy)
            p.buffer.extend(events)
        if tick % batch_ticks == 0:
            flush()
    flush()

    summary = {
        "seed": seed,
        "duration_ticks": duration_ticks,
        "players": [_player_summary(p) for p in players],
    }
    sink.finish(summary)
    return summary


def _player_summary(p: _Player) -> dict:
    if p.aborted and p.world is None:
        return {"name": p.name, "policy": p.policy.value, "aborted": True}
    truth = p.world.truth
    grid = p.world.grid
    return {
        "name": p.name,
        "session_id": p.session_id,
        "policy": p.policy.value,
        "aborted": p.aborted,
        "events": truth.events,
        "diagonal": truth.diagonal_usage,
        "deaths": truth.deaths,
        "blooms": truth.blooms,
        "tutorials": truth.tutorials,
        "fields_built": truth.fields_built,
        "money_earned": truth.money_earned,
        "population": p.world.population,
        "town": {
            "houses": grid.count(TileKind.HOUSE),
            "corn_fields": grid.count(TileKind.CORN_FIELD),
            "dairy_farms": grid.count(TileKind.DAIRY_FARM),
        },
    }
