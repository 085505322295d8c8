"""Service engine: durable ingestion, replay, and dashboard assembly.

The journal is the single source of truth. Every mutation is appended and
flushed before it is acknowledged, and rebuilding state is a straight fold
over the journal, so a restart reproduces exactly the acked state.
"""
from __future__ import annotations

import logging
import random
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import storage
from .errors import CorruptLog, LakelandError, MalformedRecord, SequenceGap
from .events import GameEvent
from .features import (
    IndicatorConfig,
    SessionAccumulator,
    apply_event,
    new_accumulator,
    snapshot,
)
from .registry import ClassRegistry, play_url_for

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IngestAck:
    session_id: str
    last_seq: int


@dataclass
class ReplayResult:
    registry: ClassRegistry
    accumulators: dict[str, SessionAccumulator]
    events_applied: int
    lines: int
    valid_bytes: int
    corruption: CorruptLog | None


def replay_journal(path: str | Path, rng: random.Random | None = None) -> ReplayResult:
    """Rebuild registry and accumulators from the journal.

    On a corrupt line, state up to the previous line is kept and the
    corruption is reported in the result rather than raised.
    """
    registry = ClassRegistry(rng)
    accumulators: dict[str, SessionAccumulator] = {}
    events_applied = 0
    lines = 0
    valid_bytes = 0
    corruption: CorruptLog | None = None
    if Path(path).exists():
        try:
            for line_no, offset, record in storage.read_journal(path):
                kind = record.get("rec")
                try:
                    if kind == storage.REC_CLASS_CREATED:
                        code, created_at = storage.parse_class_created(record)
                        registry.restore_class(code, created_at)
                    elif kind == storage.REC_PLAYER_REGISTERED:
                        code, name, session_id, _ = storage.parse_player_registered(record)
                        registry.restore_player(code, name, session_id)
                    elif kind == storage.REC_EVENT:
                        received_at, event = storage.parse_event_record(record)
                        registry.resolve_class(event.session_id)
                        acc = accumulators.get(event.session_id)
                        if acc is None:
                            acc = new_accumulator(event.session_id, received_at)
                        accumulators[event.session_id] = apply_event(acc, event, received_at)
                        events_applied += 1
                    else:
                        raise MalformedRecord(f"unknown record kind {kind!r}")
                except LakelandError as exc:
                    raise CorruptLog(line_no, f"{exc.code}: {exc}") from None
                lines = line_no
                valid_bytes = offset
        except CorruptLog as exc:
            corruption = exc
    return ReplayResult(registry, accumulators, events_applied, lines, valid_bytes, corruption)


class TelemetryService:
    """Single-writer service state; safe for concurrent reads and ingestion.

    Two locks: the outer io lock serializes all mutations end to end
    (validate, journal append+fsync, state commit), so the journal order
    equals the state-commit order. The inner state lock guards the registry
    and accumulator maps and is only ever held for microseconds, so
    dashboard reads never wait behind an fsync. Every mutation commits by
    the exact transition the journal replay would perform, which is what
    keeps restart states identical to live states.
    """

    def __init__(
        self,
        data_dir: str | Path,
        indicator_config: IndicatorConfig = IndicatorConfig(),
        rng: random.Random | None = None,
        fsync: bool = True,
        bloom_higher_is_better: bool = True,
    ):
        self.data_dir = Path(data_dir)
        self.indicator_config = indicator_config
        self.bloom_higher_is_better = bloom_higher_is_better
        self._io_lock = threading.Lock()
        self._state_lock = threading.Lock()

        path = storage.journal_path(self.data_dir)
        result = replay_journal(path, rng)
        self.registry = result.registry
        self._accumulators = result.accumulators
        self._events_applied = result.events_applied
        self.recovered_corruption = result.corruption
        if result.corruption is not None:
            log.warning(
                "journal corrupt at line %d (%s); keeping %d valid lines and truncating the tail",
                result.corruption.line_no,
                result.corruption.reason,
                result.lines,
            )
            storage.truncate_to_valid_prefix(path, result.valid_bytes)
        self._journal = storage.JournalWriter(path, fsync=fsync)

    # --- classroom registry ------------------------------------------------

    def create_class(self, now: int) -> str:
        with self._io_lock:
            with self._state_lock:
                code = self.registry.new_code()
            self._journal.append([storage.class_created_record(code, now)])
            with self._state_lock:
                self.registry.restore_class(code, now)
            return code

    def register_player(self, code: str, name: str, now: int) -> tuple[str, str]:
        with self._io_lock:
            with self._state_lock:
                self.registry.check_can_register(code, name)
                session_id = self.registry.new_session_id()
            self._journal.append(
                [storage.player_registered_record(code, name, session_id, now)]
            )
            with self._state_lock:
                self.registry.restore_player(code, name, session_id)
            return session_id, play_url_for(session_id)

    # --- ingestion ----------------------------------------------------------

    def ingest_batch(
        self, session_id: str, events: Sequence[GameEvent], received_at: int
    ) -> IngestAck:
        """Apply a seq-ordered batch for one registered session.

        Events at or below the acked seq are skipped; the contiguous run of
        new events is journaled, then folded. A leading gap rejects the batch
        with nothing applied.
        """
        with self._io_lock:
            with self._state_lock:
                self.registry.resolve_class(session_id)  # NOT_REGISTERED gate
                acc = self._accumulators.get(session_id)
            for e in events:
                if e.session_id != session_id:
                    raise MalformedRecord(
                        f"event for {e.session_id!r} in a batch for {session_id!r}"
                    )
            for prev, curr in zip(events, events[1:]):
                if curr.seq <= prev.seq:
                    raise MalformedRecord("batch must be seq-ordered")

            last = acc.last_seq if acc else 0
            fresh = [e for e in events if e.seq > last]
            if not fresh:
                return IngestAck(session_id, last)
            if fresh[0].seq != last + 1:
                raise SequenceGap(
                    f"batch starts at seq {fresh[0].seq} but session is at {last}"
                )
            run = [fresh[0]]
            for e in fresh[1:]:
                if e.seq != run[-1].seq + 1:
                    break
                run.append(e)

            trial = acc if acc is not None else new_accumulator(session_id, received_at)
            for e in run:  # validate the whole run before journaling any of it
                trial = apply_event(trial, e, received_at)

            self._journal.append([storage.event_record(received_at, e) for e in run])
            with self._state_lock:
                self._accumulators[session_id] = trial
                self._events_applied += len(run)
            return IngestAck(session_id, trial.last_seq)

    # --- dashboard ----------------------------------------------------------

    def class_dashboard(self, code: str, now: int) -> dict:
        """One snapshot per roster player, all ranked against the same baseline.

        Players with no ingested events yet get the defined "not started"
        snapshot: a fresh accumulator dated `now`, so its clocks show 0:00,
        no indicator is lit, and its ranks enter the class multiset as 0.
        """
        with self._state_lock:
            roster = self.registry.roster(code)
            current = {e.session_id: self._accumulators.get(e.session_id) for e in roster.players}
        # rosters and accumulators are immutable values: the consistent cut
        # taken above can be ranked and rendered without holding any lock
        entries = [
            (e, current[e.session_id] or new_accumulator(e.session_id, now))
            for e in roster.players
        ]
        class_accs = [acc for _, acc in entries]
        players = [
            {
                "display_name": entry.display_name,
                "session_id": entry.session_id,
                "snapshot": snapshot(
                    acc,
                    now,
                    class_accs,
                    self.indicator_config,
                    bloom_higher_is_better=self.bloom_higher_is_better,
                ).to_obj(),
            }
            for entry, acc in entries
        ]
        return {"code": code, "generated_at": now, "players": players}

    # --- introspection -------------------------------------------------------

    @property
    def event_count(self) -> int:
        with self._state_lock:
            return self._events_applied

    def session_last_seq(self, session_id: str) -> int:
        with self._state_lock:
            acc = self._accumulators.get(session_id)
            return acc.last_seq if acc else 0

    def close(self) -> None:
        self._journal.close()
