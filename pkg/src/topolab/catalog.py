"""Instance generators: exhaustive preorder sweeps and seeded random spaces.

Spaces are swept by enumerating preorders and taking their up-set
topologies, which is a bijection with the finite topologies and a far
smaller search space than open-set families.
"""

from __future__ import annotations

from itertools import combinations

from .bitsets import all_masks, is_subset, iter_points
from .spaces import FinSpace, InputError, Preorder, alexandroff_space, transitive_closure

EXHAUSTIVE_CAP = 5

# labelled preorders per point count, for sweep sanity checks
PREORDER_COUNTS = {0: 1, 1: 1, 2: 4, 3: 29, 4: 355, 5: 6942}


def enumerate_preorders(n):
    """All preorders on n labelled points (reflexive transitive row tuples)."""
    if not 0 <= n <= EXHAUSTIVE_CAP:
        raise InputError(f"exhaustive enumeration capped at {EXHAUSTIVE_CAP} points")
    if n == 0:
        yield Preorder(0, ())
        return
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    base = [1 << x for x in range(n)]
    for choice in all_masks(len(pairs)):
        rows = base[:]
        for k in iter_points(choice):
            x, y = pairs[k]
            rows[x] |= 1 << y
        ok = True
        for x in range(n):
            row = rows[x]
            acc = row
            for y in iter_points(row):
                acc |= rows[y]
            if acc != row:
                ok = False
                break
        if ok:
            yield Preorder(n, tuple(rows))


def enumerate_posets(n):
    """The antisymmetric preorders on n labelled points."""
    for p in enumerate_preorders(n):
        if p.is_partial_order():
            yield p


def enumerate_spaces(n):
    """All topologies on n labelled points, via their preorders."""
    for p in enumerate_preorders(n):
        yield alexandroff_space(p)


def enumerate_topologies_bruteforce(n):
    """Open-set families checked directly against the topology axioms.

    Exponential in 2^n; usable for n <= 3 as an independent count oracle
    for the preorder enumeration.
    """
    if n > 3:
        raise InputError("direct family enumeration is only sane for n <= 3")
    full = (1 << n) - 1
    masks = list(all_masks(n))
    for family_bits in all_masks(len(masks)):
        family = [masks[i] for i in iter_points(family_bits)]
        chosen = set(family)
        if 0 not in chosen or full not in chosen:
            continue
        if all(u | v in chosen and u & v in chosen
               for u, v in combinations(family, 2)):
            yield FinSpace(n, tuple(sorted(chosen)))


def random_preorder(rng, n, antisymmetric=None):
    """Seeded random preorder; roughly half the draws are partial orders so
    T0 and non-T0 branches both get exercised."""
    if antisymmetric is None:
        antisymmetric = rng.random() < 0.5
    density = rng.choice((0.08, 0.15, 0.25, 0.4))
    rows = [1 << x for x in range(n)]
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            if antisymmetric and x > y:
                continue  # edges only upward keeps the closure acyclic
            if rng.random() < density:
                rows[x] |= 1 << y
    return Preorder(n, transitive_closure(rows))


def random_space(rng, n, antisymmetric=None):
    return alexandroff_space(random_preorder(rng, n, antisymmetric))


def random_poset(rng, n):
    return random_preorder(rng, n, antisymmetric=True)


def downsets_as_masks(p):
    """Down-closed subsets of a preorder, ascending; with set inclusion these
    form a distributive lattice."""
    down = p.down()
    return [
        m for m in all_masks(p.n)
        if all(is_subset(down[x], m) for x in iter_points(m))
    ]
