"""Enumeration of small finite racks and exhaustive identity checking.

Enumeration backtracks over columns-as-permutations.  Self-distributivity is
equivalent to the conjugation law beta[y*z] = beta[z] . beta[y] . beta[z]^-1
on right-translation columns, which forces most columns once a few are
chosen; isomorph rejection keeps the lexicographically minimal relabeling of
each table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .rack_core import FiniteRack, _derive_slash, check_table

MAX_ENUM_ORDER = 6


def canonical_form(star) -> tuple[tuple[int, ...], ...]:
    """Lexicographically minimal table over all simultaneous relabelings."""
    m = len(star)
    best = None
    for sigma in permutations(range(m)):
        inv = [0] * m
        for i, v in enumerate(sigma):
            inv[v] = i
        candidate = tuple(
            tuple(sigma[star[inv[x]][inv[y]]] for y in range(m)) for x in range(m)
        )
        if best is None or candidate < best:
            best = candidate
    return best


def _column_ok(perm, i: int, legendrian_n: int | None, quandles: bool) -> bool:
    if quandles:
        return perm[i] == i
    if legendrian_n is not None:
        t = i
        for _ in range(2 * legendrian_n + 1):
            t = perm[t]
        return t == i
    return True


def _close(cols, m: int, legendrian_n, quandles) -> bool:
    """Propagate the conjugation law to a fixpoint; False on conflict."""
    changed = True
    while changed:
        changed = False
        assigned = [i for i, c in enumerate(cols) if c is not None]
        for z in assigned:
            colz = cols[z]
            inv = [0] * m
            for x, v in enumerate(colz):
                inv[v] = x
            for y in assigned:
                coly = cols[y]
                if coly is None:
                    continue
                w = colz[y]
                expected = tuple(colz[coly[inv[x]]] for x in range(m))
                if cols[w] is None:
                    if not _column_ok(expected, w, legendrian_n, quandles):
                        return False
                    cols[w] = expected
                    changed = True
                elif cols[w] != expected:
                    return False
    return True


@dataclass(frozen=True)
class EnumerationResult:
    order: int
    constraint: str
    representatives: tuple[FiniteRack, ...]
    total_labeled: int


@lru_cache(maxsize=None)
def _enumerate(order: int, legendrian_n: int | None, quandles: bool) -> EnumerationResult:
    perms = list(permutations(range(order)))
    canonical: set[tuple[tuple[int, ...], ...]] = set()
    labeled = 0

    def dfs(cols):
        nonlocal labeled
        if None not in cols:
            labeled += 1
            star = tuple(tuple(cols[y][x] for y in range(order)) for x in range(order))
            canonical.add(canonical_form(star))
            return
        i = cols.index(None)
        for perm in perms:
            if not _column_ok(perm, i, legendrian_n, quandles):
                continue
            fresh = cols.copy()
            fresh[i] = perm
            if _close(fresh, order, legendrian_n, quandles):
                dfs(fresh)

    dfs([None] * order)
    if quandles:
        constraint = "quandles"
    elif legendrian_n is not None:
        constraint = f"n-legendrian({legendrian_n})"
    else:
        constraint = "all-racks"
    representatives = []
    for idx, star in enumerate(sorted(canonical)):
        assert check_table(star) is None
        representatives.append(FiniteRack(star, _derive_slash(star), f"rack{order}.{idx}"))
    return EnumerationResult(order, constraint, tuple(representatives), labeled)


def enumerate_racks(
    order: int,
    *,
    legendrian_n: int | None = None,
    quandles: bool = False,
    max_order: int = MAX_ENUM_ORDER,
) -> EnumerationResult:
    """Complete, duplicate-free enumeration of order-`order` racks under a constraint."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if order > max_order:
        raise ValueError(f"order {order} exceeds the enumeration bound {max_order}")
    if quandles and legendrian_n is not None:
        raise ValueError("choose one constraint: quandles or legendrian_n")
    if legendrian_n is not None and legendrian_n < 0:
        raise ValueError(f"Legendrian index must be >= 0, got {legendrian_n}")
    return _enumerate(order, legendrian_n, quandles)


@dataclass(frozen=True)
class LemmaResult:
    name: str
    ok: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class LemmaSuiteReport:
    rack: str
    n: int | None
    results: tuple[LemmaResult, ...]

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> tuple[LemmaResult, ...]:
        return tuple(r for r in self.results if not r.ok)


def check_lemma_suite(rack: FiniteRack, n: int | None = None) -> LemmaSuiteReport:
    """Exhaustively verify the universal rack identities (plus the n-Legendrian
    ones when n is given) over all tuples and exponents 1..2*order+2."""
    m = rack.order
    star = rack.star
    kmax = 2 * m + 2
    # pw[e-1][x] = x^e for e = 1..(2*kmax+1), enough for (a^(k+1))^(k+1) = a^(2k+1)
    pw = [list(range(m))]
    for _ in range(2 * kmax):
        prev = pw[-1]
        pw.append([star[prev[x]][x] for x in range(m)])

    def power(x: int, e: int) -> int:
        return pw[e - 1][x]

    results = []

    def record(name: str, witness: tuple | None):
        results.append(LemmaResult(name, witness is None, witness))

    witness = None
    for x in range(m):
        for y in range(m):
            if star[x][star[y][y]] != star[x][y]:
                witness = (x, y)
                break
        if witness:
            break
    record("square_absorption", witness)  # x*(y*y) = x*y

    witness = None
    for a in range(m):
        for k in range(1, kmax + 1):
            if power(a, k + 1) != star[power(a, k)][power(a, k)]:
                witness = (a, k)
                break
        if witness:
            break
    record("successor_power_square", witness)  # a^(k+1) = a^k * a^k

    witness = None
    for x in range(m):
        for y in range(m):
            for k in range(1, kmax + 1):
                if star[x][power(y, k + 1)] != star[x][y]:
                    witness = (x, y, k)
                    break
            if witness:
                break
        if witness:
            break
    record("power_absorption", witness)  # x * y^(k+1) = x * y

    witness = None
    for a in range(m):
        for b in range(m):
            for k in range(1, kmax + 1):
                if power(star[a][b], k) != star[power(a, k)][b]:
                    witness = (a, b, k)
                    break
            if witness:
                break
        if witness:
            break
    record("product_power", witness)  # (a*b)^k = a^k * b

    witness = None
    for a in range(m):
        for k in range(1, kmax + 1):
            if power(power(a, k + 1), k + 1) != power(a, 2 * k + 1):
                witness = (a, k)
                break
        if witness:
            break
    record("iterated_power", witness)  # (a^(k+1))^(k+1) = a^(2k+1)

    if n is not None:
        e = 2 * n + 1
        witness = None
        for a in range(m):
            for b in range(m):
                if a != b and rack.pow(a, e) == rack.pow(b, e):
                    witness = (a, b)
                    break
            if witness:
                break
        record("odd_power_cancellation", witness)  # a^(2n+1) = b^(2n+1) => a = b

        witness = None
        for a in range(m):
            if rack.pow(a, n + 1) != rack.pow(a, -(n + 2)):
                witness = (a,)
                break
        record("negative_power", witness)  # a^(n+1) = a^-(n+2)

    return LemmaSuiteReport(rack.name, n, tuple(results))


Pairs = frozenset[tuple[int, int]]


@dataclass(frozen=True)
class AxiomResult:
    name: str
    ok: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class PredicateCheckReport:
    rack: str
    n: int
    results: tuple[AxiomResult, ...]

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> tuple[AxiomResult, ...]:
        return tuple(r for r in self.results if not r.ok)


def cusp_predicate(rack: FiniteRack, n: int) -> Pairs:
    """The definable cusp relation {(x, x^(n+1))}."""
    return frozenset((x, rack.pow(x, n + 1)) for x in range(rack.order))


def check_predicate_axioms(
    rack: FiniteRack,
    n: int,
    up: Pairs | None = None,
    down: Pairs | None = None,
) -> PredicateCheckReport:
    """Exhaustively check the cusp-predicate axiom suite on an n-Legendrian rack.

    With the default (definable) predicates every axiom must pass; passing a
    perturbed relation is how mutation tests obtain failing witnesses.
    """
    if not rack.is_legendrian(n):
        raise ValueError(f"rack {rack.name} is not {n}-Legendrian")
    m = rack.order
    star, slash = rack.star, rack.slash
    definable = cusp_predicate(rack, n)
    u = definable if up is None else up
    d = definable if down is None else down
    pos = [rack.pow(x, n + 2) for x in range(m)]
    neg = [rack.pow(x, -(n + 2)) for x in range(m)]
    cusp = [rack.pow(x, n + 1) for x in range(m)]

    def first_triple(predicate):
        for x in range(m):
            for y in range(m):
                for z in range(m):
                    if not predicate(x, y, z):
                        return (x, y, z)
        return None

    checks = [
        ("move1a", lambda x, y, z: ((star[x][z], y) in u and (y, z) in d)
         == (x == z and y == pos[x])),
        ("move1b", lambda x, y, z: ((y, slash[z][x]) in d and (x, y) in u)
         == (x == z and y == neg[x])),
        ("move1c", lambda x, y, z: ((x, y) in d and (y, slash[z][x]) in u)
         == (x == z and y == neg[x])),
        ("move1d", lambda x, y, z: ((star[x][z], y) in d and (y, z) in u)
         == (x == z and y == pos[x])),
        ("move2a", lambda x, y, z: ((x, y) in u) == ((star[x][z], star[y][z]) in u)),
        ("move2b", lambda x, y, z: ((x, y) in d) == ((star[x][z], star[y][z]) in d)),
        ("move2c", lambda x, y, z: (x, y) not in u or star[slash[z][x]][y] == z),
        ("move2d", lambda x, y, z: (x, y) not in d or slash[star[z][y]][x] == z),
    ]
    results = [AxiomResult(name, (w := first_triple(pred)) is None, w) for name, pred in checks]

    def pair_mismatch(relation, reference):
        for x in range(m):
            for y in range(m):
                if ((x, y) in relation) != ((x, y) in reference):
                    return (x, y)
        return None

    w = pair_mismatch(u, frozenset((x, cusp[x]) for x in range(m)))
    results.append(AxiomResult("up_is_cusp_power", w is None, w))
    w = pair_mismatch(d, frozenset((x, cusp[x]) for x in range(m)))
    results.append(AxiomResult("down_is_cusp_power", w is None, w))
    w = pair_mismatch(u, d)
    results.append(AxiomResult("up_equals_down", w is None, w))
    return PredicateCheckReport(rack.name, n, tuple(results))
