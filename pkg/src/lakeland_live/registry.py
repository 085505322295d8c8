"""Class-code lifecycle and player registration.

The registry is the privacy boundary: a dashboard view shows exactly the
sessions registered under one class code, and a session id belongs to at
most one roster. Codes are unauthenticated capabilities, as in the portal
flow this mirrors; there are no accounts.
"""
from __future__ import annotations

import random
import string
from dataclasses import dataclass

from .errors import (
    CodesExhausted,
    DuplicateName,
    InvariantViolation,
    NotRegistered,
    UnknownClass,
)
from .events import (
    CLASS_CODE_ALPHABET,
    CLASS_CODE_LEN,
    is_valid_class_code,
    is_valid_session_id,
)

SESSION_ID_LEN = 22
_SESSION_ID_ALPHABET = string.ascii_letters + string.digits + "-_"

NAME_MAX_LEN = 32

MAX_CODE_ATTEMPTS = 16


def play_url_for(session_id: str) -> str:
    return f"/play.html?session_id={session_id}"


def validate_display_name(name: str) -> str:
    if not isinstance(name, str) or not 1 <= len(name) <= NAME_MAX_LEN or not name.isprintable():
        raise InvariantViolation("display name must be 1-32 printable characters")
    return name


@dataclass(frozen=True)
class RosterEntry:
    display_name: str
    session_id: str


@dataclass(frozen=True)
class ClassRoster:
    code: str
    created_at: int
    players: tuple[RosterEntry, ...]


class ClassRegistry:
    """In-memory registry; durability comes from the service journal."""

    def __init__(self, rng: random.Random | None = None):
        self._rng = rng or random.SystemRandom()
        self._rosters: dict[str, ClassRoster] = {}
        self._session_to_code: dict[str, str] = {}

    def new_code(self) -> str:
        """Draw a fresh, unused class code; generation only, no commit."""
        for _ in range(MAX_CODE_ATTEMPTS):
            code = "".join(self._rng.choice(CLASS_CODE_ALPHABET) for _ in range(CLASS_CODE_LEN))
            if code not in self._rosters:
                return code
        raise CodesExhausted(f"no unused class code after {MAX_CODE_ATTEMPTS} attempts")

    def new_session_id(self) -> str:
        while True:
            session_id = "".join(
                self._rng.choice(_SESSION_ID_ALPHABET) for _ in range(SESSION_ID_LEN)
            )
            if session_id not in self._session_to_code:
                return session_id

    def check_can_register(self, code: str, name: str) -> None:
        roster = self.roster(code)
        validate_display_name(name)
        if any(p.display_name.casefold() == name.casefold() for p in roster.players):
            raise DuplicateName(f"name {name!r} already registered in {code}")

    def create_class(self, now: int) -> str:
        code = self.new_code()
        self._rosters[code] = ClassRoster(code, now, ())
        return code

    def register_player(self, code: str, name: str, now: int) -> tuple[str, str]:
        """Bind a fresh session id to (code, name); returns (session_id, play_url)."""
        self.check_can_register(code, name)
        session_id = self.new_session_id()
        self._admit(code, name, session_id)
        return session_id, play_url_for(session_id)

    def resolve_class(self, session_id: str) -> str:
        code = self._session_to_code.get(session_id)
        if code is None:
            raise NotRegistered(f"session {session_id!r} is not registered in any class")
        return code

    def roster(self, code: str) -> ClassRoster:
        roster = self._rosters.get(code)
        if roster is None:
            raise UnknownClass(f"no class with code {code!r}")
        return roster

    def codes(self) -> tuple[str, ...]:
        return tuple(self._rosters)

    # --- replay hooks: same validation, but caller supplies the identifiers

    def restore_class(self, code: str, created_at: int) -> None:
        if not is_valid_class_code(code):
            raise InvariantViolation(f"bad class code {code!r}")
        if code in self._rosters:
            raise InvariantViolation(f"class {code} created twice")
        self._rosters[code] = ClassRoster(code, created_at, ())

    def restore_player(self, code: str, name: str, session_id: str) -> None:
        roster = self.roster(code)
        validate_display_name(name)
        if not is_valid_session_id(session_id):
            raise InvariantViolation(f"bad session id {session_id!r}")
        if any(p.display_name.casefold() == name.casefold() for p in roster.players):
            raise DuplicateName(f"name {name!r} already registered in {code}")
        if session_id in self._session_to_code:
            raise InvariantViolation(f"session {session_id!r} registered twice")
        self._admit(code, name, session_id)

    def _admit(self, code: str, name: str, session_id: str) -> None:
        roster = self._rosters[code]
        entry = RosterEntry(name, session_id)
        self._rosters[code] = ClassRoster(code, roster.created_at, roster.players + (entry,))
        self._session_to_code[session_id] = code
