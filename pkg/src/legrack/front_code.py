"""Textual front-projection codes of oriented Legendrian knots.

A front code is a cyclic word of events read along the knot's orientation:
``U``/``D`` for an up/down cusp, ``o<id>`` for an over-pass and ``u<id><sign>``
for a signed under-pass at crossing ``<id>``.  Cusps and under-passes break
strands; over-passes do not.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class ParseError(ValueError):
    """Malformed code text; ``position`` is the character offset of the bad token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidCodeError(ValueError):
    """Structurally well-formed text that violates a front-code invariant."""


class CuspDir(Enum):
    UP = "U"
    DOWN = "D"


@dataclass(frozen=True)
class Cusp:
    direction: CuspDir


@dataclass(frozen=True)
class OverPass:
    crossing: int


@dataclass(frozen=True)
class UnderPass:
    crossing: int
    sign: int  # +1 or -1


Event = Cusp | OverPass | UnderPass

_TOKEN_RE = re.compile(r"^(?:U|D|o(\d+)|u(\d+)([+-]))$")


def _event_token(event: Event) -> str:
    if isinstance(event, Cusp):
        return event.direction.value
    if isinstance(event, OverPass):
        return f"o{event.crossing}"
    return f"u{event.crossing}{'+' if event.sign > 0 else '-'}"


def _validate(events: tuple[Event, ...]) -> None:
    if not events:
        raise InvalidCodeError("code is empty")
    overs: dict[int, int] = {}
    unders: dict[int, int] = {}
    cusps = 0
    for event in events:
        if isinstance(event, Cusp):
            cusps += 1
            continue
        if event.crossing < 1:
            raise InvalidCodeError(f"crossing id must be >= 1, got {event.crossing}")
        table = overs if isinstance(event, OverPass) else unders
        table[event.crossing] = table.get(event.crossing, 0) + 1
        if isinstance(event, UnderPass) and event.sign not in (1, -1):
            raise InvalidCodeError(f"under-pass sign must be +1 or -1, got {event.sign}")
    for cid, n in overs.items():
        if n != 1:
            raise InvalidCodeError(f"crossing {cid} has {n} over-passes (want exactly 1)")
    for cid, n in unders.items():
        if n != 1:
            raise InvalidCodeError(f"crossing {cid} has {n} under-passes (want exactly 1)")
    if overs.keys() != unders.keys():
        missing = sorted(overs.keys() ^ unders.keys())
        raise InvalidCodeError(f"unmatched crossing ids: {missing}")
    if cusps % 2 != 0 or cusps < 2:
        raise InvalidCodeError(f"cusp count must be even and >= 2, got {cusps}")


@dataclass(frozen=True)
class FrontCode:
    """Cyclic event word with an anchor choosing where generator naming starts.

    Two codes are equal when they read the same from their anchors; rotating
    the anchor yields a distinct but invariant-equivalent code.
    """

    events: tuple[Event, ...]
    start_index: int = 0

    def __post_init__(self):
        _validate(self.events)
        if not 0 <= self.start_index < len(self.events):
            raise InvalidCodeError(
                f"start_index {self.start_index} out of range for {len(self.events)} events"
            )

    @property
    def word(self) -> tuple[Event, ...]:
        """Events as read from the anchor."""
        k = self.start_index
        return self.events[k:] + self.events[:k]

    def rotated(self, offset: int) -> "FrontCode":
        k = (self.start_index + offset) % len(self.events)
        return FrontCode(self.events, k)

    def __eq__(self, other) -> bool:
        return isinstance(other, FrontCode) and self.word == other.word

    def __hash__(self) -> int:
        return hash(self.word)

    def crossing_ids(self) -> set[int]:
        return {e.crossing for e in self.events if isinstance(e, UnderPass)}


def parse(text: str) -> FrontCode:
    """Parse a comma-separated event word; whitespace is ignored."""
    events: list[Event] = []
    offset = 0
    for chunk in text.split(","):
        stripped = chunk.strip()
        position = offset + (len(chunk) - len(chunk.lstrip()))
        token = re.sub(r"\s+", "", chunk)
        if not token:
            raise ParseError("empty event", position)
        m = _TOKEN_RE.match(token)
        if m is None:
            raise ParseError(f"unrecognized event {stripped!r}", position)
        if token == "U":
            events.append(Cusp(CuspDir.UP))
        elif token == "D":
            events.append(Cusp(CuspDir.DOWN))
        elif m.group(1) is not None:
            events.append(OverPass(int(m.group(1))))
        else:
            events.append(UnderPass(int(m.group(2)), 1 if m.group(3) == "+" else -1))
        offset += len(chunk) + 1
    return FrontCode(tuple(events))


def serialize(code: FrontCode) -> str:
    """Canonical text for a code, reading from its anchor."""
    return ",".join(_event_token(e) for e in code.word)


@dataclass(frozen=True)
class FrontInvariants:
    writhe: int
    cusp_count: int
    up_cusps: int
    down_cusps: int
    tb: int
    rotation_numerator: int  # rotation number = rotation_numerator / 2
    strand_count: int

    @property
    def rotation(self) -> int:
        return self.rotation_numerator // 2


def invariants(code: FrontCode) -> FrontInvariants:
    """Classical diagram invariants: writhe, cusp counts, tb, rotation, strands."""
    writhe = 0
    up = down = under = 0
    for event in code.events:
        if isinstance(event, Cusp):
            if event.direction is CuspDir.UP:
                up += 1
            else:
                down += 1
        elif isinstance(event, UnderPass):
            under += 1
            writhe += event.sign
    cusps = up + down
    return FrontInvariants(
        writhe=writhe,
        cusp_count=cusps,
        up_cusps=up,
        down_cusps=down,
        tb=writhe - cusps // 2,
        rotation_numerator=down - up,
        strand_count=cusps + under,
    )


def s_min(code: FrontCode) -> int | None:
    """Strand count of a crossingless diagram (equals 2|tb|), else None."""
    if code.crossing_ids():
        return None
    return invariants(code).strand_count
