"""Error types shared across the service.

Every error carries a stable machine-readable ``code`` so the HTTP layer and
the log-replay tooling can classify failures without string matching.
"""
from __future__ import annotations


class LakelandError(Exception):
    """Base class for all domain errors."""

    code = "ERROR"


class MalformedRecord(LakelandError):
    """Record or payload is structurally unparseable."""

    code = "MALFORMED"


class UnknownKind(LakelandError):
    """Event kind outside the closed enumeration."""

    code = "UNKNOWN_KIND"


class InvariantViolation(LakelandError):
    """Well-formed record whose values break a domain rule."""

    code = "INVARIANT_VIOLATION"


class OutOfBounds(LakelandError):
    code = "OUT_OF_BOUNDS"


class IllegalPlacement(LakelandError):
    """Building on water, or bloom transitions on the wrong tile."""

    code = "ILLEGAL_PLACEMENT"


class NoLake(LakelandError):
    """Grid has no water cells, so runoff has no destination."""

    code = "NO_LAKE"


class SequenceGap(LakelandError):
    code = "SEQUENCE_GAP"


class DuplicateEvent(LakelandError):
    code = "DUPLICATE"


class EmptyClass(LakelandError):
    code = "EMPTY_CLASS"


class UnknownClass(LakelandError):
    code = "UNKNOWN_CLASS"


class DuplicateName(LakelandError):
    code = "DUPLICATE_NAME"


class NotRegistered(LakelandError):
    """Session id not bound to any class roster."""

    code = "NOT_REGISTERED"


class CodesExhausted(LakelandError):
    code = "EXHAUSTED"


class CorruptLog(LakelandError):
    """Journal line failed to replay; state up to the prior line is valid."""

    code = "CORRUPT_LOG"

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class BadLayout(LakelandError):
    code = "BAD_LAYOUT"


class SinkUnreachable(LakelandError):
    code = "SINK_UNREACHABLE"
