"""Oriented Legendrian Reidemeister moves as local rewrites on event words.

Each schema edits the cyclic word so that the induced presentation change is
one of the rewrites known to preserve coloring counts: kink insertion/removal
(LR1), pushing a cusp across a strand or a strand under a cusp (LR2), and the
triangle slide (LR3).  Inserted kinks carry a positive crossing and an
up/down cusp pair, so writhe, cusp count, tb and rotation are all preserved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .front_code import Cusp, CuspDir, Event, FrontCode, InvalidCodeError, OverPass, UnderPass


@dataclass(frozen=True)
class MoveSchema:
    id: str
    fresh_ids: int
    pattern: str
    replacement: str


SCHEMAS: tuple[MoveSchema, ...] = (
    MoveSchema("LR1-A:UD", 1, "(strand)", "uK+ U D oK"),
    MoveSchema("LR1-A:DU", 1, "(strand)", "uK+ D U oK"),
    MoveSchema("LR1-B:UD", 1, "(strand)", "oK U D uK+"),
    MoveSchema("LR1-B:DU", 1, "(strand)", "oK D U uK+"),
    MoveSchema("LR2-A", 2, "C | (strand)", "uK1+ C uK2- | oK2 oK1"),
    MoveSchema("LR2-B", 2, "C | (strand)", "uK1- C uK2+ | oK2 oK1"),
    MoveSchema("LR2-C", 2, "C | (strand)", "oK1 C oK2 | uK1- uK2+"),
    MoveSchema("LR2-D", 2, "C | (strand)", "oK2 C oK1 | uK1+ uK2-"),
    MoveSchema("LR3", 0, "oI oK | oJ uI | uJ uK", "oK oI | uI oJ | uK uJ"),
)

_LR1_IDS = ("LR1-A:UD", "LR1-A:DU", "LR1-B:UD", "LR1-B:DU")


@dataclass(frozen=True)
class MoveSite:
    """One applicable rewrite: schema, direction and its word positions.

    Position meaning per schema: LR1 forward (gap,), LR1 inverse (window
    start,); LR2-A/B forward (cusp, over gap), inverse (triple start, over
    pair start); LR2-C/D forward (cusp, under gap), inverse (cusp, under pair
    start); LR3 (over pair, re-paired pair, under pair starts).
    """

    schema: str
    direction: str  # "forward" | "inverse"
    positions: tuple[int, ...]


def _fresh_id(code: FrontCode) -> int:
    return max(code.crossing_ids(), default=0) + 1


def _lr1_block(schema: str, k: int) -> tuple[Event, ...]:
    first, second = (CuspDir.UP, CuspDir.DOWN) if schema.endswith("UD") else (CuspDir.DOWN, CuspDir.UP)
    cusps = (Cusp(first), Cusp(second))
    if schema.startswith("LR1-A"):
        return (UnderPass(k, 1), *cusps, OverPass(k))
    return (OverPass(k), *cusps, UnderPass(k, 1))


def _rebuild(
    word: tuple[Event, ...],
    inserts: dict[int, tuple[Event, ...]] | None = None,
    replace: dict[int, tuple[Event, ...]] | None = None,
    delete: set[int] | None = None,
) -> tuple[Event, ...]:
    inserts = inserts or {}
    replace = replace or {}
    delete = delete or set()
    out: list[Event] = []
    for i in range(len(word)):
        out.extend(inserts.get(i, ()))
        if i in delete:
            continue
        out.extend(replace.get(i, (word[i],)))
    out.extend(inserts.get(len(word), ()))
    return tuple(out)


def _swap_pairs(word: tuple[Event, ...], starts: tuple[int, ...]) -> tuple[Event, ...]:
    out = list(word)
    n = len(word)
    for s in starts:
        out[s], out[(s + 1) % n] = out[(s + 1) % n], out[s]
    return tuple(out)


def _matches_lr1(word, schema: str, p: int) -> bool:
    n = len(word)
    window = tuple(word[(p + i) % n] for i in range(4))
    block_kind = _lr1_block(schema, 0)
    under_pos, over_pos = (0, 3) if schema.startswith("LR1-A") else (3, 0)
    under, over = window[under_pos], window[over_pos]
    if not (isinstance(under, UnderPass) and under.sign == 1 and isinstance(over, OverPass)):
        return False
    if under.crossing != over.crossing:
        return False
    for i in (1, 2):
        if not (isinstance(window[i], Cusp) and window[i].direction == block_kind[i].direction):
            return False
    return True


def _cusp_positions(word) -> list[int]:
    return [i for i, e in enumerate(word) if isinstance(e, Cusp)]


def _lr2_flank_inverse(word, want_s1: int, want_s2: int) -> list[tuple[int, int]]:
    """Sites (triple start, over-pair start) for removing a cusp-flanking crossing pair."""
    n = len(word)
    over_pos = {e.crossing: i for i, e in enumerate(word) if isinstance(e, OverPass)}
    sites = []
    for t in range(n):
        e1, e2, e3 = word[t], word[(t + 1) % n], word[(t + 2) % n]
        if not (isinstance(e1, UnderPass) and e1.sign == want_s1):
            continue
        if not isinstance(e2, Cusp):
            continue
        if not (isinstance(e3, UnderPass) and e3.sign == want_s2 and e3.crossing != e1.crossing):
            continue
        q = over_pos[e3.crossing]
        if over_pos[e1.crossing] == (q + 1) % n:
            sites.append((t, q))
    return sites


def _lr2_pass_inverse(word, want_s1: int, want_s2: int, o1_first: bool) -> list[tuple[int, int]]:
    """Sites (cusp, under-pair start) for pulling a strand back out from under a cusp."""
    n = len(word)
    under_pos = {e.crossing: i for i, e in enumerate(word) if isinstance(e, UnderPass)}
    sites = []
    for c in range(n):
        if not isinstance(word[c], Cusp):
            continue
        before, after = word[(c - 1) % n], word[(c + 1) % n]
        if not (isinstance(before, OverPass) and isinstance(after, OverPass)):
            continue
        if before.crossing == after.crossing:
            continue
        k1, k2 = (before.crossing, after.crossing) if o1_first else (after.crossing, before.crossing)
        q = under_pos[k1]
        if under_pos[k2] != (q + 1) % n:
            continue
        u1, u2 = word[q], word[(q + 1) % n]
        if u1.sign == want_s1 and u2.sign == want_s2:
            sites.append((c, q))
    return sites


def _lr3_sites(word) -> list[tuple[int, int, int]]:
    n = len(word)
    under_pos = {e.crossing: i for i, e in enumerate(word) if isinstance(e, UnderPass)}
    sites = []
    for q in range(n):
        e1, e2 = word[q], word[(q + 1) % n]
        if not (isinstance(e1, OverPass) and isinstance(e2, OverPass)):
            continue
        for i, k in ((e1.crossing, e2.crossing), (e2.crossing, e1.crossing)):
            pi, pk = under_pos[i], under_pos[k]
            if word[pi].sign != word[pk].sign:
                continue
            for side in (-1, 1):
                pj = (pi + side) % n
                neighbor = word[pj]
                if not isinstance(neighbor, OverPass):
                    continue
                j = neighbor.crossing
                if j in (i, k):
                    continue
                pj_under = under_pos[j]
                if side == -1 and (pj_under + 1) % n == pk:
                    sites.append((q, pj, pj_under))
                elif side == 1 and (pk + 1) % n == pj_under:
                    sites.append((q, pi, pk))
    return sites


@dataclass(frozen=True)
class _Family:
    schema: str
    direction: str
    count: int
    decode: Callable[[int], tuple[int, ...]]


def _skip_two(idx: int, s1: int, s2: int | None) -> int:
    g = idx
    if g >= s1:
        g += 1
    if s2 is not None and g >= s2:
        g += 1
    return g


def _families(code: FrontCode) -> list[_Family]:
    word = code.word
    n = len(word)
    cusps = _cusp_positions(word)
    cusp_count = len(cusps)
    families: list[_Family] = []

    for schema in _LR1_IDS:
        families.append(_Family(schema, "forward", n, lambda i: (i,)))
    for schema in _LR1_IDS:
        if cusp_count >= 4:
            found = [p for p in range(n) if _matches_lr1(word, schema, p)]
        else:
            found = []
        families.append(_Family(schema, "inverse", len(found),
                                lambda i, found=found: (found[i],)))

    for schema in ("LR2-A", "LR2-B"):
        families.append(_Family(
            schema, "forward", len(cusps) * n,
            lambda i, cusps=cusps: (cusps[i // n], i % n),
        ))
    for schema in ("LR2-C", "LR2-D"):
        per_cusp = [(p, n - 2 if p + 1 < n else n - 1) for p in cusps]
        total = sum(c for _, c in per_cusp)

        def decode(i, per_cusp=per_cusp):
            for p, c in per_cusp:
                if i < c:
                    return (p, _skip_two(i, p, p + 1 if p + 1 < n else None))
                i -= c
            raise IndexError(i)

        families.append(_Family(schema, "forward", total, decode))

    for schema, s1, s2 in (("LR2-A", 1, -1), ("LR2-B", -1, 1)):
        found = _lr2_flank_inverse(word, s1, s2)
        families.append(_Family(schema, "inverse", len(found),
                                lambda i, found=found: found[i]))
    for schema, s1, s2, o1_first in (("LR2-C", -1, 1, True), ("LR2-D", 1, -1, False)):
        found = _lr2_pass_inverse(word, s1, s2, o1_first)
        families.append(_Family(schema, "inverse", len(found),
                                lambda i, found=found: found[i]))

    lr3 = _lr3_sites(word)
    families.append(_Family("LR3", "forward", len(lr3), lambda i: lr3[i]))
    return families


def applicable(code: FrontCode) -> list[MoveSite]:
    """All pattern matches for all schemas, both directions, in a fixed order."""
    sites = []
    for family in _families(code):
        for i in range(family.count):
            sites.append(MoveSite(family.schema, family.direction, family.decode(i)))
    return sites


def _apply_unchecked(code: FrontCode, site: MoveSite) -> FrontCode:
    word = code.word
    n = len(word)
    schema, direction, pos = site.schema, site.direction, site.positions
    if schema in _LR1_IDS:
        if direction == "forward":
            (g,) = pos
            events = _rebuild(word, inserts={g: _lr1_block(schema, _fresh_id(code))})
        else:
            (p,) = pos
            events = _rebuild(word, delete={(p + i) % n for i in range(4)})
    elif schema in ("LR2-A", "LR2-B"):
        s1, s2 = (1, -1) if schema == "LR2-A" else (-1, 1)
        if direction == "forward":
            p, g = pos
            k1 = _fresh_id(code)
            events = _rebuild(
                word,
                replace={p: (UnderPass(k1, s1), word[p], UnderPass(k1 + 1, s2))},
                inserts={g: (OverPass(k1 + 1), OverPass(k1))},
            )
        else:
            t, q = pos
            events = _rebuild(word, delete={t, (t + 2) % n, q, (q + 1) % n})
    elif schema in ("LR2-C", "LR2-D"):
        s1, s2 = (-1, 1) if schema == "LR2-C" else (1, -1)
        if direction == "forward":
            p, g = pos
            k1 = _fresh_id(code)
            before, after = (OverPass(k1), OverPass(k1 + 1))
            if schema == "LR2-D":
                before, after = after, before
            events = _rebuild(
                word,
                inserts={p: (before,), p + 1: (after,),
                         g: (UnderPass(k1, s1), UnderPass(k1 + 1, s2))},
            )
        else:
            c, q = pos
            events = _rebuild(word, delete={(c - 1) % n, (c + 1) % n, q, (q + 1) % n})
    elif schema == "LR3":
        events = _swap_pairs(word, pos)
    else:
        raise ValueError(f"unknown schema {schema}")
    try:
        return FrontCode(events)
    except InvalidCodeError as exc:  # sites are screened, so this is a bug
        raise AssertionError(f"move {site} produced an invalid code: {exc}") from exc


def apply_move(code: FrontCode, site: MoveSite) -> FrontCode:
    """Apply one move; the site must come from applicable(code)."""
    if site not in applicable(code):
        raise ValueError(f"site {site} is not applicable")
    return _apply_unchecked(code, site)


def inverse_site(code: FrontCode, site: MoveSite) -> MoveSite:
    """The site that undoes a forward `site` in apply_move(code, site)."""
    if site.direction != "forward":
        raise ValueError("only forward sites have a canonical inverse")
    if site.schema == "LR3":
        return site
    after = _apply_unchecked(code, site).word
    k1 = _fresh_id(code)
    if site.schema in _LR1_IDS:
        anchor_type = UnderPass if site.schema.startswith("LR1-A") else OverPass
        p = next(i for i, e in enumerate(after)
                 if isinstance(e, anchor_type) and e.crossing == k1)
        return MoveSite(site.schema, "inverse", (p,))
    if site.schema in ("LR2-A", "LR2-B"):
        t = next(i for i, e in enumerate(after)
                 if isinstance(e, UnderPass) and e.crossing == k1)
        q = next(i for i, e in enumerate(after)
                 if isinstance(e, OverPass) and e.crossing == k1 + 1)
        return MoveSite(site.schema, "inverse", (t, q))
    first_over = k1 if site.schema == "LR2-C" else k1 + 1
    c = next(i for i, e in enumerate(after)
             if isinstance(e, OverPass) and e.crossing == first_over) + 1
    q = next(i for i, e in enumerate(after)
             if isinstance(e, UnderPass) and e.crossing == k1)
    return MoveSite(site.schema, "inverse", (c % len(after), q))


def walk_iter(code: FrontCode, steps: int, seed: int) -> Iterator[tuple[MoveSite, FrontCode]]:
    """Apply `steps` uniformly chosen applicable moves, yielding after each."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    rng = random.Random(seed)
    current = code
    for _ in range(steps):
        families = _families(current)
        total = sum(f.count for f in families)
        pick = rng.randrange(total)
        for family in families:
            if pick < family.count:
                site = MoveSite(family.schema, family.direction, family.decode(pick))
                break
            pick -= family.count
        current = _apply_unchecked(current, site)
        yield site, current


def random_walk(code: FrontCode, steps: int, seed: int) -> FrontCode:
    """Endpoint of a seeded uniform random walk over applicable moves."""
    current = code
    for _, current in walk_iter(code, steps, seed):
        pass
    return current
