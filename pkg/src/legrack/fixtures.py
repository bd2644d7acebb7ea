"""Built-in knot codes used by the CLI batch commands and the test suite."""

from __future__ import annotations

from .front_code import FrontCode, parse


def _alternating_unknot(strands: int) -> str:
    return ",".join(["U", "D"] * (strands // 2))


# The two 10-strand codes form the non-completeness pair: equal strand count
# and tb but different rotation, with identical presentations.
FIXTURES: dict[str, str] = {
    "minimal_unknot": "U,D",
    "unknot4": _alternating_unknot(4),
    "unknot6": _alternating_unknot(6),
    "unknot8": _alternating_unknot(8),
    "unknot10": _alternating_unknot(10),
    "unknot16": _alternating_unknot(16),
    "unknot32": _alternating_unknot(32),
    "trefoil": "U,u1+,o3,u2+,U,D,o1,u3+,o2,D",
    "unknot10_alt": "U,D,D,U,D,D,U,D,U,D",
}


def fixture(name: str) -> FrontCode:
    try:
        return parse(FIXTURES[name])
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None
