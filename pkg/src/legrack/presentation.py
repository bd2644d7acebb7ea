"""Rack presentations extracted from front codes.

Strands are the generators, in traversal order from the code's anchor.  Every
strand-breaking event emits one relation: a cusp gives dst = src^(n+1) (with
the exponent left symbolic until instantiated), a positive under-pass gives
dst = src * over and a negative one dst = src / over, where ``over`` is the
strand carrying the matching over-pass.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from enum import Enum

from .front_code import Cusp, FrontCode, OverPass, UnderPass
from .rack_core import FiniteRack


class RelKind(Enum):
    CUSP = "cusp"
    CROSS_POS = "pos"
    CROSS_NEG = "neg"


@dataclass(frozen=True)
class Relation:
    kind: RelKind
    src: int
    dst: int
    over: int | None = None  # absent for cusp relations


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relations: tuple[Relation, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) != self.generator_count:
            raise ValueError("one name per generator required")
        if len(self.relations) != self.generator_count:
            raise ValueError("one relation per generator required")
        if sorted(r.dst for r in self.relations) != list(range(self.generator_count)):
            raise ValueError("every generator must be the dst of exactly one relation")


def default_names(count: int) -> tuple[str, ...]:
    if count <= 26:
        return tuple(string.ascii_lowercase[:count])
    return tuple(f"a{i}" for i in range(count))


def extract(code: FrontCode) -> Presentation:
    """Read off the presentation of a front code."""
    word = code.word
    breaking = [i for i, e in enumerate(word) if not isinstance(e, OverPass)]
    strand_count = len(breaking)
    over_strand: dict[int, int] = {}
    strand = 0
    for event in word:
        if isinstance(event, OverPass):
            over_strand[event.crossing] = strand % strand_count
        else:
            strand += 1
    relations = []
    for i, pos in enumerate(breaking):
        event = word[pos]
        src, dst = i, (i + 1) % strand_count
        if isinstance(event, Cusp):
            relations.append(Relation(RelKind.CUSP, src, dst))
        else:
            assert isinstance(event, UnderPass)
            kind = RelKind.CROSS_POS if event.sign > 0 else RelKind.CROSS_NEG
            relations.append(Relation(kind, src, dst, over_strand[event.crossing]))
    return Presentation(strand_count, tuple(relations), default_names(strand_count))


@dataclass(frozen=True)
class GroundRelation:
    """A relation with the cusp exponent made concrete.

    op is "pow" (dst = src^arg), "star" (dst = src * gen[arg]) or
    "slash" (dst = src / gen[arg]).
    """

    op: str
    src: int
    arg: int
    dst: int

    def holds(self, assignment, rack: FiniteRack) -> bool:
        src = assignment[self.src]
        if self.op == "pow":
            return assignment[self.dst] == rack.pow(src, self.arg)
        if self.op == "star":
            return assignment[self.dst] == rack.star[src][assignment[self.arg]]
        return assignment[self.dst] == rack.slash[src][assignment[self.arg]]


def instantiate(pres: Presentation, n: int) -> tuple[GroundRelation, ...]:
    """Fix the cusp exponent to n+1; crossing relations are already ground."""
    if n < 0:
        raise ValueError(f"Legendrian index must be >= 0, got {n}")
    ground = []
    for rel in pres.relations:
        if rel.kind is RelKind.CUSP:
            ground.append(GroundRelation("pow", rel.src, n + 1, rel.dst))
        elif rel.kind is RelKind.CROSS_POS:
            ground.append(GroundRelation("star", rel.src, rel.over, rel.dst))
        else:
            ground.append(GroundRelation("slash", rel.src, rel.over, rel.dst))
    return tuple(ground)


def relation_text(rel: Relation, names: tuple[str, ...], n: int | None = None) -> str:
    if rel.kind is RelKind.CUSP:
        exponent = "(n+1)" if n is None else str(n + 1)
        return f"{names[rel.dst]} = {names[rel.src]}^{exponent}"
    op = "*" if rel.kind is RelKind.CROSS_POS else "/"
    return f"{names[rel.dst]} = {names[rel.src]} {op} {names[rel.over]}"


def presentation_text(pres: Presentation, n: int | None = None) -> str:
    gens = ", ".join(pres.names)
    rels = ", ".join(relation_text(r, pres.names, n) for r in pres.relations)
    return f"<{gens} | {rels}>"


def presentation_to_json(pres: Presentation) -> dict:
    return {
        "generators": list(pres.names),
        "relations": [
            {"kind": r.kind.value, "src": r.src, "over": r.over, "dst": r.dst}
            for r in pres.relations
        ],
    }


def presentation_from_json(obj: dict) -> Presentation:
    names = tuple(obj["generators"])
    relations = tuple(
        Relation(RelKind(r["kind"]), r["src"], r["dst"], r.get("over"))
        for r in obj["relations"]
    )
    return Presentation(len(names), relations, names)
