"""Gameplay event schema: kinds, payloads, and per-event validation.

A GameEvent is one timestamped, sequence-numbered action within a session.
Construction validates every per-event invariant, so an event object in hand
is always well-formed; stream-level rules (contiguous seq, one SESSION_START)
are enforced by the fold in features.py.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .errors import IllegalPlacement, InvariantViolation
from .grid import BUILDING_KINDS, WATER_KINDS, TileGrid, TileKind

# Session ids as generated by the registry are 8-64 chars, but the codec
# accepts any URL-safe id down to 1 char so hand-written fixtures parse.
SESSION_ID_RE = re.compile(r"^[A-Za-z0-9_-]{1,64}$")

CLASS_CODE_ALPHABET = "ABCDEFGHJKMNPQRSTUVWXYZ23456789"
CLASS_CODE_LEN = 6
_CLASS_CODE_RE = re.compile(f"^[{CLASS_CODE_ALPHABET}]{{{CLASS_CODE_LEN}}}$")

TUTORIAL_COUNT = 6
ACHIEVEMENT_TRACKS = ("tutorial", "money", "bloom", "farm", "population")
ACHIEVEMENT_TIERS = (1, 2, 3, 4, 5)
SELL_PRODUCE = ("corn", "milk")


def is_valid_session_id(value: str) -> bool:
    return isinstance(value, str) and bool(SESSION_ID_RE.match(value))


def is_valid_class_code(value: str) -> bool:
    return isinstance(value, str) and bool(_CLASS_CODE_RE.match(value))


class EventKind(str, Enum):
    SESSION_START = "SESSION_START"
    TUTORIAL_COMPLETE = "TUTORIAL_COMPLETE"
    BUILD = "BUILD"
    SELL = "SELL"
    FERTILIZE = "FERTILIZE"
    TILE_INSPECT = "TILE_INSPECT"
    FARMER_DEATH = "FARMER_DEATH"
    POPULATION = "POPULATION"
    ACHIEVEMENT = "ACHIEVEMENT"
    BLOOM = "BLOOM"
    BLOOM_CLEAR = "BLOOM_CLEAR"
    INPUT = "INPUT"


@dataclass(frozen=True)
class SessionStart:
    grid: TileGrid


@dataclass(frozen=True)
class TutorialComplete:
    tutorial_id: int


@dataclass(frozen=True)
class Build:
    building: TileKind
    x: int
    y: int


@dataclass(frozen=True)
class Sell:
    produce: str
    amount: int
    money: int


@dataclass(frozen=True)
class CellRef:
    """Payload for FERTILIZE, TILE_INSPECT, BLOOM and BLOOM_CLEAR."""

    x: int
    y: int


@dataclass(frozen=True)
class FarmerDeath:
    count: int


@dataclass(frozen=True)
class Population:
    count: int


@dataclass(frozen=True)
class Achievement:
    track: str
    tier: int


@dataclass(frozen=True)
class Input:
    """Generic interaction heartbeat; no fields."""


Payload = Union[
    SessionStart, TutorialComplete, Build, Sell, CellRef, FarmerDeath, Population, Achievement, Input
]

PAYLOAD_TYPES: dict[EventKind, type] = {
    EventKind.SESSION_START: SessionStart,
    EventKind.TUTORIAL_COMPLETE: TutorialComplete,
    EventKind.BUILD: Build,
    EventKind.SELL: Sell,
    EventKind.FERTILIZE: CellRef,
    EventKind.TILE_INSPECT: CellRef,
    EventKind.FARMER_DEATH: FarmerDeath,
    EventKind.POPULATION: Population,
    EventKind.ACHIEVEMENT: Achievement,
    EventKind.BLOOM: CellRef,
    EventKind.BLOOM_CLEAR: CellRef,
    EventKind.INPUT: Input,
}


def _require_int(name: str, value, minimum: int) -> None:
    if type(value) is not int:
        raise InvariantViolation(f"{name} must be an integer")
    if value < minimum:
        raise InvariantViolation(f"{name} must be >= {minimum}, got {value}")


@dataclass(frozen=True)
class GameEvent:
    session_id: str
    seq: int
    t_ms: int
    kind: EventKind
    payload: Payload

    def __post_init__(self):
        if not is_valid_session_id(self.session_id):
            raise InvariantViolation(f"bad session id {self.session_id!r}")
        _require_int("seq", self.seq, 1)
        _require_int("t_ms", self.t_ms, 0)
        if not isinstance(self.kind, EventKind):
            raise InvariantViolation(f"kind must be EventKind, got {self.kind!r}")
        expected = PAYLOAD_TYPES[self.kind]
        if type(self.payload) is not expected:
            raise InvariantViolation(
                f"{self.kind.value} payload must be {expected.__name__}"
            )
        self._validate_payload()

    def _validate_payload(self):
        kind, p = self.kind, self.payload
        if kind is EventKind.SESSION_START:
            if self.seq != 1:
                raise InvariantViolation("SESSION_START must be the first event (seq 1)")
        elif kind is EventKind.TUTORIAL_COMPLETE:
            _require_int("tutorial_id", p.tutorial_id, 0)
            if p.tutorial_id >= TUTORIAL_COUNT:
                raise InvariantViolation(
                    f"tutorial_id must be 0..{TUTORIAL_COUNT - 1}, got {p.tutorial_id}"
                )
        elif kind is EventKind.BUILD:
            if not isinstance(p.building, TileKind) or p.building not in BUILDING_KINDS:
                raise InvariantViolation(f"building must be a building tile, got {p.building!r}")
            _require_int("x", p.x, 0)
            _require_int("y", p.y, 0)
        elif kind is EventKind.SELL:
            if p.produce not in SELL_PRODUCE:
                raise InvariantViolation(f"produce must be one of {SELL_PRODUCE}, got {p.produce!r}")
            _require_int("amount", p.amount, 1)
            _require_int("money", p.money, 0)
        elif kind is EventKind.FARMER_DEATH:
            _require_int("count", p.count, 1)
        elif kind is EventKind.POPULATION:
            _require_int("count", p.count, 0)
        elif kind is EventKind.ACHIEVEMENT:
            if p.track not in ACHIEVEMENT_TRACKS:
                raise InvariantViolation(f"unknown achievement track {p.track!r}")
            _require_int("tier", p.tier, 1)
            if p.tier > ACHIEVEMENT_TIERS[-1]:
                raise InvariantViolation(f"tier must be 1..{ACHIEVEMENT_TIERS[-1]}, got {p.tier}")
        elif isinstance(p, CellRef):
            _require_int("x", p.x, 0)
            _require_int("y", p.y, 0)


GRID_EVENT_KINDS = frozenset({EventKind.BUILD, EventKind.BLOOM, EventKind.BLOOM_CLEAR})


def apply_grid_event(grid: TileGrid, event: GameEvent) -> TileGrid:
    """Fold one map-changing event into the grid, returning a new grid.

    BUILD overwrites a land cell with the built tile; BLOOM recolors
    WATER -> WATER_BLOOM; BLOOM_CLEAR recolors WATER_BLOOM -> WATER.
    """
    if event.kind not in GRID_EVENT_KINDS:
        raise ValueError(f"apply_grid_event cannot apply {event.kind.value}")
    p = event.payload
    current = grid.tile(p.x, p.y)
    if event.kind is EventKind.BUILD:
        if current in WATER_KINDS:
            raise IllegalPlacement(f"cannot build on water at ({p.x}, {p.y})")
        return grid.with_tile(p.x, p.y, p.building)
    if event.kind is EventKind.BLOOM:
        if current is not TileKind.WATER:
            raise IllegalPlacement(f"bloom requires a water tile at ({p.x}, {p.y})")
        return grid.with_tile(p.x, p.y, TileKind.WATER_BLOOM)
    if current is not TileKind.WATER_BLOOM:
        raise IllegalPlacement(f"bloom clear requires a bloomed tile at ({p.x}, {p.y})")
    return grid.with_tile(p.x, p.y, TileKind.WATER)
