"""Finite racks as operation tables.

A rack is a set with binary operations ``*`` and ``/`` such that right
translations x -> x*y are bijections (with ``/`` their inverses) and ``*`` is
right self-distributive.  A rack is n-Legendrian when x^(2n+2) = x for every
x, where x^e folds ``*`` (or ``/`` for negative e).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RackViolation:
    """First failed rack axiom with a concrete witness."""

    axiom: str  # "column-not-permutation" | "self-distributivity"
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.axiom} at {self.witness}"


def _derive_slash(star: Table) -> Table:
    m = len(star)
    slash = [[0] * m for _ in range(m)]
    for y in range(m):
        for x in range(m):
            slash[star[x][y]][y] = x
    return tuple(tuple(row) for row in slash)


def check_table(star) -> RackViolation | None:
    """Return the first violated rack axiom for a square table, or None."""
    m = len(star)
    for x in range(m):
        if len(star[x]) != m:
            raise ValueError(f"table is not square: row {x} has length {len(star[x])}")
    for y in range(m):
        column = {star[x][y] for x in range(m)}
        if column != set(range(m)):
            return RackViolation("column-not-permutation", (y,))
    for y in range(m):
        for z in range(m):
            yz = star[y][z]
            for x in range(m):
                if star[star[x][y]][z] != star[star[x][z]][yz]:
                    return RackViolation("self-distributivity", (x, y, z))
    return None


@dataclass(frozen=True)
class FiniteRack:
    star: Table
    slash: Table = field(compare=False)
    name: str = field(default="rack", compare=False)

    @property
    def order(self) -> int:
        return len(self.star)

    def pow(self, x: int, e: int) -> int:
        """x^e: fold * for e >= 1, / for e <= -2; e in {0, -1} is undefined."""
        if e in (0, -1):
            raise ValueError(f"power {e} is undefined")
        value = x
        if e > 0:
            for _ in range(e - 1):
                value = self.star[value][x]
        else:
            for _ in range(-e - 1):
                value = self.slash[value][x]
        return value

    def is_legendrian(self, n: int) -> bool:
        """True iff x^(2n+2) = x for every element."""
        if n < 0:
            raise ValueError(f"Legendrian index must be >= 0, got {n}")
        return all(self.pow(x, 2 * n + 2) == x for x in range(self.order))

    def is_quandle(self) -> bool:
        return all(self.star[x][x] == x for x in range(self.order))


def make_rack(star, name: str = "rack") -> FiniteRack:
    """Build a rack from a star table, raising on axiom violations."""
    result = verify_rack(star, name)
    if isinstance(result, RackViolation):
        raise ValueError(f"not a rack: {result}")
    return result


def verify_rack(star, name: str = "rack") -> FiniteRack | RackViolation:
    """Verify the rack axioms; return the rack (with derived slash) or the violation."""
    table = tuple(tuple(int(v) for v in row) for row in star)
    violation = check_table(table)
    if violation is not None:
        return violation
    return FiniteRack(table, _derive_slash(table), name)


def cyclic(k: int) -> FiniteRack:
    """The cyclic rack on {0..k-1} with i*j = (i+1) mod k."""
    if k < 1:
        raise ValueError(f"order must be >= 1, got {k}")
    star = tuple(tuple((i + 1) % k for _ in range(k)) for i in range(k))
    return FiniteRack(star, _derive_slash(star), f"ck:{k}")


def dihedral(k: int) -> FiniteRack:
    """The dihedral quandle on {0..k-1} with i*j = (2j-i) mod k."""
    if k < 1:
        raise ValueError(f"order must be >= 1, got {k}")
    star = tuple(tuple((2 * j - i) % k for j in range(k)) for i in range(k))
    return FiniteRack(star, _derive_slash(star), f"dihedral:{k}")


def rack_to_json(rack: FiniteRack) -> dict:
    return {"order": rack.order, "star": [list(row) for row in rack.star], "name": rack.name}


def rack_from_json(obj: dict, name: str | None = None) -> FiniteRack:
    star = obj["star"]
    if "order" in obj and len(star) != obj["order"]:
        raise ValueError(f"declared order {obj['order']} != table size {len(star)}")
    return make_rack(star, name or obj.get("name", "table"))


def rack_from_descriptor(descriptor: str) -> FiniteRack:
    """Resolve 'ck:<k>', 'dihedral:<k>' or a rack JSON file path."""
    kind, _, arg = descriptor.partition(":")
    if kind == "ck" and arg.isdigit():
        return cyclic(int(arg))
    if kind == "dihedral" and arg.isdigit():
        return dihedral(int(arg))
    try:
        with open(descriptor, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot resolve rack descriptor {descriptor!r}: {exc}") from exc
    return rack_from_json(obj, name=descriptor)
