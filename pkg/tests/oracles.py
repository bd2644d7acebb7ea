"""Independent brute-force oracles that the library is checked against.

Everything here is deliberately naive: coloring counts enumerate all m^g
assignments with an inline power fold, and rack enumeration filters raw
tables, deduplicating by expanding full relabeling orbits.  None of it shares
search logic with the library.
"""

from itertools import permutations, product

from legrack.presentation import instantiate


def fold_power(star, slash, x: int, e: int) -> int:
    value = x
    if e > 0:
        for _ in range(e - 1):
            value = star[value][x]
    else:
        for _ in range(-e - 1):
            value = slash[value][x]
    return value


def brute_force_colorings(pres, n, rack) -> list[tuple[int, ...]]:
    """All satisfying assignments by checking every one of the m^g candidates."""
    rels = instantiate(pres, n)
    star, slash = rack.star, rack.slash
    found = []
    for assign in product(range(rack.order), repeat=pres.generator_count):
        ok = True
        for rel in rels:
            if rel.op == "pow":
                value = fold_power(star, slash, assign[rel.src], rel.arg)
            elif rel.op == "star":
                value = star[assign[rel.src]][assign[rel.arg]]
            else:
                value = slash[assign[rel.src]][assign[rel.arg]]
            if assign[rel.dst] != value:
                ok = False
                break
        if ok:
            found.append(assign)
    return found


def brute_force_report(pres, n, rack) -> tuple[int, int, tuple[int, ...] | None]:
    """(count, surjective count, lexicographically least sample)."""
    found = brute_force_colorings(pres, n, rack)
    surjective = sum(1 for a in found if len(set(a)) == rack.order)
    return len(found), surjective, (min(found) if found else None)


def _self_distributive(star, m: int) -> bool:
    for y in range(m):
        for z in range(m):
            yz = star[y][z]
            for x in range(m):
                if star[star[x][y]][z] != star[star[x][z]][yz]:
                    return False
    return True


def naive_rack_tables(m: int) -> list[tuple[tuple[int, ...], ...]]:
    """Every labeled rack of order m.

    For m <= 3 this filters all m^(m*m) tables.  For m = 4 it iterates over
    permutation columns only, which loses nothing: the right-inverse axiom
    forces every column x -> x*y to be a bijection.
    """
    tables = []
    if m <= 3:
        for flat in product(range(m), repeat=m * m):
            star = tuple(tuple(flat[x * m + y] for y in range(m)) for x in range(m))
            if any(len({star[x][y] for x in range(m)}) != m for y in range(m)):
                continue
            if _self_distributive(star, m):
                tables.append(star)
    else:
        for cols in product(list(permutations(range(m))), repeat=m):
            star = tuple(tuple(cols[y][x] for y in range(m)) for x in range(m))
            if _self_distributive(star, m):
                tables.append(star)
    return tables


def relabel(star, sigma) -> tuple[tuple[int, ...], ...]:
    m = len(star)
    inv = [0] * m
    for i, v in enumerate(sigma):
        inv[v] = i
    return tuple(tuple(sigma[star[inv[x]][inv[y]]] for y in range(m)) for x in range(m))


def orbit_minima(tables, m: int) -> set:
    """One canonical (orbit-minimal) table per isomorphism class."""
    seen = set()
    minima = set()
    for table in tables:
        if table in seen:
            continue
        orbit = {relabel(table, sigma) for sigma in permutations(range(m))}
        seen |= orbit
        minima.add(min(orbit))
    return minima


def isomorphic(star1, star2) -> bool:
    if len(star1) != len(star2):
        return False
    return any(relabel(star1, sigma) == star2 for sigma in permutations(range(len(star1))))
