"""Append-only journal: the service's single source of truth.

One JSON record per line, UTF-8. Three record kinds: CLASS_CREATED,
PLAYER_REGISTERED and EVENT. Appends are flushed (and fsynced) before the
caller acknowledges anything, so every acked record survives a process kill.
"""
from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Iterator

from . import codec
from .errors import CorruptLog, MalformedRecord
from .events import GameEvent

JOURNAL_NAME = "journal.jsonl"

REC_CLASS_CREATED = "CLASS_CREATED"
REC_PLAYER_REGISTERED = "PLAYER_REGISTERED"
REC_EVENT = "EVENT"


def journal_path(data_dir: str | Path) -> Path:
    return Path(data_dir) / JOURNAL_NAME


def class_created_record(code: str, created_at: int) -> dict:
    return {"rec": REC_CLASS_CREATED, "code": code, "created_at": created_at}


def player_registered_record(code: str, name: str, session_id: str, registered_at: int) -> dict:
    return {
        "rec": REC_PLAYER_REGISTERED,
        "code": code,
        "name": name,
        "session_id": session_id,
        "registered_at": registered_at,
    }


def event_record(received_at: int, event: GameEvent) -> dict:
    return {"rec": REC_EVENT, "received_at": received_at, "event": codec.event_to_obj(event)}


class JournalWriter:
    """Append-only writer; one flush (+fsync) per append call."""

    def __init__(self, path: str | Path, fsync: bool = True):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self.path, "a", encoding="utf-8")
        self._fsync = fsync

    def append(self, records: list[dict]) -> None:
        self._fh.write("".join(codec.dumps(r) + "\n" for r in records))
        self._fh.flush()
        if self._fsync:
            os.fsync(self._fh.fileno())

    def close(self) -> None:
        self._fh.close()


def truncate_to_valid_prefix(path: str | Path, valid_bytes: int) -> None:
    """Drop a corrupt tail so later appends stay replayable."""
    with open(path, "r+b") as fh:
        fh.truncate(valid_bytes)


def read_journal(path: str | Path) -> Iterator[tuple[int, int, dict]]:
    """Yield (line_no, end_byte_offset, record); raises CorruptLog on a bad line.

    end_byte_offset is the byte length of the file up to and including the
    yielded line, i.e. the truncation point that keeps this line.
    """
    offset = 0
    with open(path, "rb") as fh:
        for line_no, raw in enumerate(fh, start=1):
            offset += len(raw)
            if not raw.endswith(b"\n"):
                raise CorruptLog(line_no, "truncated final line")
            try:
                record = json.loads(raw.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise CorruptLog(line_no, f"bad JSON: {exc}") from None
            if not isinstance(record, dict) or "rec" not in record:
                raise CorruptLog(line_no, "record must be an object with a 'rec' field")
            yield line_no, offset, record


def parse_class_created(record: dict) -> tuple[str, int]:
    try:
        code = record["code"]
        created_at = record["created_at"]
    except KeyError as exc:
        raise MalformedRecord(f"CLASS_CREATED missing {exc}") from None
    if not isinstance(code, str) or type(created_at) is not int:
        raise MalformedRecord("CLASS_CREATED field types")
    return code, created_at


def parse_player_registered(record: dict) -> tuple[str, str, str, int]:
    try:
        code = record["code"]
        name = record["name"]
        session_id = record["session_id"]
        registered_at = record["registered_at"]
    except KeyError as exc:
        raise MalformedRecord(f"PLAYER_REGISTERED missing {exc}") from None
    if (
        not isinstance(code, str)
        or not isinstance(name, str)
        or not isinstance(session_id, str)
        or type(registered_at) is not int
    ):
        raise MalformedRecord("PLAYER_REGISTERED field types")
    return code, name, session_id, registered_at


def parse_event_record(record: dict) -> tuple[int, GameEvent]:
    received_at = record.get("received_at")
    if type(received_at) is not int:
        raise MalformedRecord("EVENT record needs integer received_at")
    if "event" not in record:
        raise MalformedRecord("EVENT record needs an event object")
    return received_at, codec.event_from_obj(record["event"])
