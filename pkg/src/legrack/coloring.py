"""Counting rack homomorphisms (colorings) into finite n-Legendrian targets.

Colorings of a presented rack are the computable invariant: the relation set
is functional (each dst is determined by src and the over-strand), so a DFS
over a small feedback set with forward/backward propagation fixes all other
generators.  Targets that are not n-Legendrian are refused — counts into
them are not invariants.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from . import model_finder
from .front_code import FrontCode, s_min
from .presentation import Presentation, extract, instantiate
from .rack_core import FiniteRack, cyclic

_POW, _STAR, _SLASH = 0, 1, 2


@dataclass(frozen=True)
class ColoringReport:
    target: str
    n: int
    count: int
    surjective_count: int
    sample: tuple[int, ...] | None


def _cusp_tables(rack: FiniteRack, n: int) -> tuple[list[int], list[int]]:
    forward = [rack.pow(x, n + 1) for x in range(rack.order)]
    if sorted(forward) != list(range(rack.order)):
        raise ValueError("cusp map is not a permutation; target cannot be n-Legendrian")
    backward = [0] * rack.order
    for x, y in enumerate(forward):
        backward[y] = x
    return forward, backward


class _Search:
    """Compiled propagation-and-branch search for one (presentation, n, target)."""

    def __init__(self, pres: Presentation, n: int, rack: FiniteRack):
        if not rack.is_legendrian(n):
            raise ValueError(
                f"target {rack.name} is not {n}-Legendrian; counts would not be invariant"
            )
        self.generators = pres.generator_count
        self.order = rack.order
        self.star, self.slash = rack.star, rack.slash
        self.fwd_pow, self.bwd_pow = _cusp_tables(rack, n)
        self.rels = tuple(
            (_POW if r.op == "pow" else (_STAR if r.op == "star" else _SLASH),
             r.src, r.arg, r.dst)
            for r in instantiate(pres, n)
        )
        incident: list[list[int]] = [[] for _ in range(self.generators)]
        for idx, (op, src, arg, dst) in enumerate(self.rels):
            incident[src].append(idx)
            incident[dst].append(idx)
            if op != _POW and arg not in (src, dst):
                incident[arg].append(idx)
        self.incident = tuple(tuple(v) for v in incident)

    def _propagate(self, assign: list, queue: list) -> bool:
        star, slash = self.star, self.slash
        fwd_pow, bwd_pow = self.fwd_pow, self.bwd_pow
        rels, incident = self.rels, self.incident
        while queue:
            for ridx in incident[queue.pop()]:
                op, src, arg, dst = rels[ridx]
                s = assign[src]
                d = assign[dst]
                if op == _POW:
                    if s is not None:
                        v = fwd_pow[s]
                        if d is None:
                            assign[dst] = v
                            queue.append(dst)
                        elif d != v:
                            return False
                    elif d is not None:
                        assign[src] = bwd_pow[d]
                        queue.append(src)
                    continue
                o = assign[arg]
                if o is None:
                    continue
                fwd, bwd = (star, slash) if op == _STAR else (slash, star)
                if s is not None:
                    v = fwd[s][o]
                    if d is None:
                        assign[dst] = v
                        queue.append(dst)
                    elif d != v:
                        return False
                elif d is not None:
                    assign[src] = bwd[d][o]
                    queue.append(src)
        return True

    def _branch_var(self, assign: list) -> int:
        # Unblock propagation: prefer the over-strand of a stalled crossing relation.
        for op, src, arg, dst in self.rels:
            if op != _POW and assign[arg] is None and (
                assign[src] is not None or assign[dst] is not None
            ):
                return arg
        return assign.index(None)

    def _dfs(self, assign: list) -> Iterator[tuple[int, ...]]:
        if None not in assign:
            for op, src, arg, dst in self.rels:
                if op == _POW:
                    v = self.fwd_pow[assign[src]]
                elif op == _STAR:
                    v = self.star[assign[src]][assign[arg]]
                else:
                    v = self.slash[assign[src]][assign[arg]]
                if assign[dst] != v:
                    return
            yield tuple(assign)
            return
        i = self._branch_var(assign)
        for v in range(self.order):
            branched = assign.copy()
            branched[i] = v
            if self._propagate(branched, [i]):
                yield from self._dfs(branched)

    def solutions(self, preset: dict[int, int] | None = None) -> Iterator[tuple[int, ...]]:
        assign: list = [None] * self.generators
        if preset:
            for i, v in preset.items():
                assign[i] = v
            if not self._propagate(assign, list(preset)):
                return
        yield from self._dfs(assign)


def iter_colorings(pres: Presentation, n: int, rack: FiniteRack) -> Iterator[tuple[int, ...]]:
    """All satisfying assignments, in a deterministic search order."""
    yield from _Search(pres, n, rack).solutions()


def _tally(solutions, order: int) -> tuple[int, int, tuple[int, ...] | None]:
    count = surjective = 0
    sample = None
    for assignment in solutions:
        count += 1
        if sample is None or assignment < sample:
            sample = assignment
        if len(set(assignment)) == order:
            surjective += 1
    return count, surjective, sample


def _count_slice(args) -> tuple[int, int, tuple[int, ...] | None]:
    pres, n, rack, value = args
    search = _Search(pres, n, rack)
    return _tally(search.solutions(preset={0: value}), rack.order)


def count_colorings(
    pres: Presentation,
    n: int,
    rack: FiniteRack,
    *,
    max_generators: int | None = None,
) -> ColoringReport:
    """Count assignments of generators to rack elements satisfying all relations.

    Honors LEGRACK_WORKERS: with more than one worker the search fans out over
    the first generator's value; counts merge by addition and the sample stays
    the lexicographically least, so reports are identical either way.
    """
    if max_generators is not None and pres.generator_count > max_generators:
        raise ValueError(
            f"presentation has {pres.generator_count} generators (limit {max_generators})"
        )
    workers = int(os.environ.get("LEGRACK_WORKERS", "1"))
    if workers > 1 and pres.generator_count > 0 and rack.order > 1:
        _Search(pres, n, rack)  # validate the target before forking
        count = surjective = 0
        sample = None
        jobs = [(pres, n, rack, v) for v in range(rack.order)]
        with ProcessPoolExecutor(max_workers=min(workers, rack.order)) as pool:
            for c, s, first in pool.map(_count_slice, jobs):
                count += c
                surjective += s
                if first is not None and (sample is None or first < sample):
                    sample = first
        return ColoringReport(rack.name, n, count, surjective, sample)
    count, surjective, sample = _tally(iter_colorings(pres, n, rack), rack.order)
    return ColoringReport(rack.name, n, count, surjective, sample)


def quandle_colorings(pres: Presentation, rack: FiniteRack) -> int:
    """Classical quandle coloring count; equals the n = 0 Legendrian count."""
    if not rack.is_quandle():
        raise ValueError(f"target {rack.name} is not a quandle")
    return count_colorings(pres, 0, rack).count


def unknot_arithmetic(s: int, n: int, k: int) -> int:
    """Closed-form coloring count of the s-strand crossingless unknot into C_k.

    The s cusp relations compose to a shift by s*n around the cycle, so
    colorings exist (k of them, one per base point) exactly when k | s*n.
    """
    if s < 2 or s % 2 != 0:
        raise ValueError(f"strand count must be even and >= 2, got {s}")
    if k < 1 or (2 * n + 1) % k != 0:
        raise ValueError(f"C_{k} is not {n}-Legendrian (need k | 2n+1)")
    return k if (s * n) % k == 0 else 0


@dataclass(frozen=True)
class DistinguishVerdict:
    status: str  # "DISTINGUISHED" | "INCONCLUSIVE"
    p: int | None = None
    k: int | None = None
    n: int | None = None
    counts: tuple[int, int] | None = None


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _default_budget(s1: int, s2: int) -> list[tuple[int, int]]:
    budget = []
    for p in range(3, max(s1, s2) + 1, 2):
        if not _is_prime(p):
            continue
        q, k = p, 1
        while q <= max(s1, s2):
            if s1 % q == 0 or s2 % q == 0:
                budget.append((p, k))
            q *= p
            k += 1
    return budget


def distinguish_unknots(
    code1: FrontCode,
    code2: FrontCode,
    budget: list[tuple[int, int]] | None = None,
) -> DistinguishVerdict:
    """Separate two crossingless codes by counting into C_{p^k}, n = (p^k - 1)/2.

    Distinguishes exactly when some odd prime power divides one strand count
    and not the other; equal counts for every budget entry (in particular when
    one strand count is a power of two times the other) stay INCONCLUSIVE.
    """
    s1, s2 = s_min(code1), s_min(code2)
    if s1 is None or s2 is None:
        raise ValueError("distinguishing requires crossingless codes")
    if budget is None:
        budget = _default_budget(s1, s2)
    for p, k in budget:
        if p < 3 or p % 2 == 0 or not _is_prime(p) or k < 1:
            raise ValueError(f"budget entry ({p},{k}) is not an odd prime power")
        q = p**k
        if (s1 % q == 0) == (s2 % q == 0):
            continue
        n = (q - 1) // 2
        target = cyclic(q)
        c1 = count_colorings(extract(code1), n, target).count
        c2 = count_colorings(extract(code2), n, target).count
        return DistinguishVerdict("DISTINGUISHED", p, k, n, (c1, c2))
    return DistinguishVerdict("INCONCLUSIVE")


@dataclass(frozen=True)
class Certificate:
    """A coloring witnessing that the presented rack is not the one-element rack."""

    n: int
    target: FiniteRack
    assignment: tuple[int, ...]
    reason: str  # "non-constant" | "constant-non-idempotent"


def _certify(pres: Presentation, n: int, rack: FiniteRack) -> Certificate | None:
    for assignment in iter_colorings(pres, n, rack):
        values = set(assignment)
        if len(values) > 1:
            return Certificate(n, rack, assignment, "non-constant")
        v = assignment[0]
        if rack.star[v][v] != v:
            return Certificate(n, rack, assignment, "constant-non-idempotent")
    return None


def nontriviality_certificate(
    pres: Presentation,
    n_range,
    max_order: int,
) -> Certificate | None:
    """Search for a coloring that certifies a nontrivial presented rack.

    For each n, targets are the cyclic racks C_k with k | 2n+1 followed by all
    enumerated n-Legendrian racks up to max_order.  A trivial presented rack
    only admits constant colorings onto idempotents, so any other coloring is
    a certificate (and in particular rules out the minimal unknot).
    """
    for n in n_range:
        for k in range(2, 2 * n + 2):
            if (2 * n + 1) % k == 0:
                found = _certify(pres, n, cyclic(k))
                if found is not None:
                    return found
        for order in range(2, max_order + 1):
            for rack in model_finder.enumerate_racks(order, legendrian_n=n).representatives:
                found = _certify(pres, n, rack)
                if found is not None:
                    return found
    return None
