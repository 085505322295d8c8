"""Wire and persistence codec: UTF-8, line-delimited JSON, one event per line.

Encoding is byte-deterministic: keys appear in a fixed canonical order and
no whitespace is emitted, so encode(decode(line)) reproduces the line and
two encodes of equal events are identical bytes.

Decode errors are classified: MALFORMED for structural problems (bad JSON,
missing keys, wrong JSON types), UNKNOWN_KIND for kinds outside the closed
enumeration, INVARIANT_VIOLATION for well-typed values that break a rule.
"""
from __future__ import annotations

import json
from typing import Any

from .errors import InvariantViolation, MalformedRecord, UnknownKind
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
from .grid import TileGrid, TileKind


def dumps(obj: Any) -> str:
    """Canonical JSON: compact separators, insertion-ordered keys, UTF-8."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _get(obj: dict, key: str, typ: type):
    if key not in obj:
        raise MalformedRecord(f"missing field {key!r}")
    value = obj[key]
    if typ is int and type(value) is not int:
        raise MalformedRecord(f"field {key!r} must be an integer")
    if typ is str and not isinstance(value, str):
        raise MalformedRecord(f"field {key!r} must be a string")
    if typ is dict and not isinstance(value, dict):
        raise MalformedRecord(f"field {key!r} must be an object")
    if typ is list and not isinstance(value, list):
        raise MalformedRecord(f"field {key!r} must be an array")
    return value


def _check_keys(obj: dict, expected: tuple[str, ...], what: str) -> None:
    extra = set(obj) - set(expected)
    if extra:
        raise MalformedRecord(f"unexpected {what} field(s): {sorted(extra)}")


def grid_to_obj(grid: TileGrid) -> dict:
    return {"width": grid.width, "height": grid.height, "tiles": [int(t) for t in grid.tiles]}


def grid_from_obj(obj: Any) -> TileGrid:
    if not isinstance(obj, dict):
        raise MalformedRecord("grid must be an object")
    _check_keys(obj, ("width", "height", "tiles"), "grid")
    width = _get(obj, "width", int)
    height = _get(obj, "height", int)
    tiles = _get(obj, "tiles", list)
    kinds = []
    for t in tiles:
        if type(t) is not int:
            raise MalformedRecord("grid tiles must be integers")
        try:
            kinds.append(TileKind(t))
        except ValueError:
            raise InvariantViolation(f"unknown tile palette index {t}") from None
    return TileGrid(width, height, tuple(kinds))


def _payload_to_obj(event: GameEvent) -> dict:
    p = event.payload
    kind = event.kind
    if kind is EventKind.SESSION_START:
        return {"grid": grid_to_obj(p.grid)}
    if kind is EventKind.TUTORIAL_COMPLETE:
        return {"tutorial_id": p.tutorial_id}
    if kind is EventKind.BUILD:
        return {"building": int(p.building), "x": p.x, "y": p.y}
    if kind is EventKind.SELL:
        return {"produce": p.produce, "amount": p.amount, "money": p.money}
    if kind is EventKind.FARMER_DEATH or kind is EventKind.POPULATION:
        return {"count": p.count}
    if kind is EventKind.ACHIEVEMENT:
        return {"track": p.track, "tier": p.tier}
    if kind is EventKind.INPUT:
        return {}
    return {"x": p.x, "y": p.y}


def _payload_from_obj(kind: EventKind, obj: dict):
    if kind is EventKind.SESSION_START:
        _check_keys(obj, ("grid",), "payload")
        return SessionStart(grid_from_obj(_get(obj, "grid", dict)))
    if kind is EventKind.TUTORIAL_COMPLETE:
        _check_keys(obj, ("tutorial_id",), "payload")
        return TutorialComplete(_get(obj, "tutorial_id", int))
    if kind is EventKind.BUILD:
        _check_keys(obj, ("building", "x", "y"), "payload")
        building = _get(obj, "building", int)
        try:
            building = TileKind(building)
        except ValueError:
            raise InvariantViolation(f"unknown tile palette index {building}") from None
        return Build(building, _get(obj, "x", int), _get(obj, "y", int))
    if kind is EventKind.SELL:
        _check_keys(obj, ("produce", "amount", "money"), "payload")
        return Sell(_get(obj, "produce", str), _get(obj, "amount", int), _get(obj, "money", int))
    if kind is EventKind.FARMER_DEATH:
        _check_keys(obj, ("count",), "payload")
        return FarmerDeath(_get(obj, "count", int))
    if kind is EventKind.POPULATION:
        _check_keys(obj, ("count",), "payload")
        return Population(_get(obj, "count", int))
    if kind is EventKind.ACHIEVEMENT:
        _check_keys(obj, ("track", "tier"), "payload")
        return Achievement(_get(obj, "track", str), _get(obj, "tier", int))
    if kind is EventKind.INPUT:
        _check_keys(obj, (), "payload")
        return Input()
    _check_keys(obj, ("x", "y"), "payload")
    return CellRef(_get(obj, "x", int), _get(obj, "y", int))


def event_to_obj(event: GameEvent) -> dict:
    return {
        "session_id": event.session_id,
        "seq": event.seq,
        "t_ms": event.t_ms,
        "kind": event.kind.value,
        "payload": _payload_to_obj(event),
    }


def event_from_obj(obj: Any) -> GameEvent:
    if not isinstance(obj, dict):
        raise MalformedRecord("event must be a JSON object")
    _check_keys(obj, ("session_id", "seq", "t_ms", "kind", "payload"), "event")
    kind_name = _get(obj, "kind", str)
    try:
        kind = EventKind(kind_name)
    except ValueError:
        raise UnknownKind(f"unknown event kind {kind_name!r}") from None
    payload = _payload_from_obj(kind, _get(obj, "payload", dict))
    return GameEvent(
        session_id=_get(obj, "session_id", str),
        seq=_get(obj, "seq", int),
        t_ms=_get(obj, "t_ms", int),
        kind=kind,
        payload=payload,
    )


def encode_event(event: GameEvent) -> str:
    """One wire-format line, without the trailing newline."""
    return dumps(event_to_obj(event))


def decode_event(line: str) -> GameEvent:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"bad JSON: {exc}") from None
    return event_from_obj(obj)
