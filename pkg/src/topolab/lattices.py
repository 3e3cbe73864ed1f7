"""Finite lattices and frames: filters, joins, temperance, way-below, the
open-sets/points adjunction and the compact-saturated correspondence.

Lattice elements are indices 0..m-1; element-sets are bitmasks.  Lattices
are validated eagerly on construction so the checkers may assume the
lattice laws.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitsets import all_masks, full_mask, is_subset, iter_points, mask_of, points_of
from .spaces import (
    FinSpace,
    InputError,
    OracleMismatch,
    specialization_preorder,
)

MAX_ELEMENTS = 64

# exhaustive subset scans over 2^m element-sets stay below this
BRUTE_FORCE_ELEMENTS = 20


class NotALattice(InputError):
    pass


@dataclass(frozen=True)
class FinLattice:
    """Finite lattice: order rows plus meet/join tables and the two bounds.

    labels, when present, names each element (the opens-lattice of a space
    labels elements with their open masks); checkers ignore it.
    """

    m: int
    up: tuple
    meet: tuple
    join: tuple
    bottom: int
    top: int
    labels: tuple | None = None

    def leq(self, i, j):
        return bool(self.up[i] >> j & 1)

    def down(self):
        rows = [0] * self.m
        for i, row in enumerate(self.up):
            for j in iter_points(row):
                rows[j] |= 1 << i
        return tuple(rows)


def lattice_from_leq(m, up_rows, labels=None):
    """Validate the order and derive meet/join tables, bottom and top.

    Raises NotALattice with a witness pair when some glb or lub is missing.
    """
    if not 1 <= m <= MAX_ELEMENTS:
        raise InputError(f"element count {m} outside 1..{MAX_ELEMENTS}")
    up_rows = tuple(up_rows)
    full = full_mask(m)
    if len(up_rows) != m:
        raise InputError("need one order row per element")
    for i, row in enumerate(up_rows):
        if row & ~full:
            raise InputError(f"row {i} mentions elements outside 0..{m - 1}")
        if not row >> i & 1:
            raise InputError(f"order not reflexive at {i}")
        for j in iter_points(row):
            if up_rows[j] & ~row:
                raise InputError(f"order not transitive at ({i}, {j})")
            if i != j and up_rows[j] >> i & 1:
                raise InputError(f"order not antisymmetric at ({i}, {j})")
    down_rows = [0] * m
    for i, row in enumerate(up_rows):
        for j in iter_points(row):
            down_rows[j] |= 1 << i

    def greatest(mask):
        for g in iter_points(mask):
            if is_subset(mask, down_rows[g]):
                return g
        return -1

    def least(mask):
        for l in iter_points(mask):
            if is_subset(mask, up_rows[l]):
                return l
        return -1

    meet = []
    join = []
    for i in range(m):
        mrow = []
        jrow = []
        for j in range(m):
            g = greatest(down_rows[i] & down_rows[j])
            if g < 0:
                raise NotALattice(f"no greatest lower bound for ({i}, {j})")
            mrow.append(g)
            l = least(up_rows[i] & up_rows[j])
            if l < 0:
                raise NotALattice(f"no least upper bound for ({i}, {j})")
            jrow.append(l)
        meet.append(tuple(mrow))
        join.append(tuple(jrow))
    bottom = least(full)
    top = greatest(full)
    if bottom < 0 or top < 0:
        raise NotALattice("missing bottom or top")
    return FinLattice(
        m=m,
        up=up_rows,
        meet=tuple(meet),
        join=tuple(join),
        bottom=bottom,
        top=top,
        labels=None if labels is None else tuple(labels),
    )


def lattice_of_opens(space):
    """Opens ordered by inclusion; meets/joins are intersections/unions.

    Element i is the i-th open in ascending mask order and is recorded in
    labels, so downstream maps between the space and its lattice stay
    aligned.
    """
    opens = space.opens
    index = {u: i for i, u in enumerate(opens)}
    m = len(opens)
    up_rows = tuple(
        mask_of(j for j, v in enumerate(opens) if is_subset(u, v))
        for u in opens
    )
    lat = lattice_from_leq(m, up_rows, labels=opens)
    for i, u in enumerate(opens):
        for j, v in enumerate(opens):
            if lat.meet[i][j] != index[u & v] or lat.join[i][j] != index[u | v]:
                raise OracleMismatch("lattice tables disagree with set algebra")
    return lat


def preimage_frame_map(point_map, source, target):
    """The opens-lattice morphism of a continuous point map, sending each
    open V of the target to its preimage in the source.

    point_map[x] is the image of source point x.  Raises InputError when
    the map is not continuous (some preimage fails to be open).
    """
    if len(point_map) != source.n:
        raise InputError("need one image per source point")
    out = []
    for v in target.opens:
        pre = mask_of(x for x in range(source.n) if v >> point_map[x] & 1)
        if not source.is_open(pre):
            raise InputError(f"map not continuous: preimage of {v:#x} not open")
        out.append(pre)
    return tuple(out)


@dataclass(frozen=True)
class FrameReport:
    is_frame: bool
    is_boolean: bool
    witness: tuple | None = None


def frame_report(lattice):
    """Binary meet-over-join distributivity (enough on a finite carrier) and
    Boolean complementation, with a witness triple on failure."""
    m = lattice.m
    meet = lattice.meet
    join = lattice.join
    witness = None
    is_frame = True
    for u in range(m):
        for v in range(m):
            for w in range(m):
                if meet[u][join[v][w]] != join[meet[u][v]][meet[u][w]]:
                    is_frame = False
                    witness = (u, v, w)
                    break
            if not is_frame:
                break
        if not is_frame:
            break
    is_boolean = is_frame and all(
        any(meet[u][v] == lattice.bottom and join[u][v] == lattice.top
            for v in range(m))
        for u in range(m)
    )
    return FrameReport(is_frame=is_frame, is_boolean=is_boolean, witness=witness)


@dataclass(frozen=True)
class Filter:
    """Upward-closed meet-closed non-empty element-set, with its class flags."""

    members: int
    proper: bool
    scott_open: bool
    completely_prime: bool


def is_filter_mask(lattice, mask):
    if mask == 0:
        return False
    for i in iter_points(mask):
        if lattice.up[i] & ~mask:
            return False
        for j in iter_points(mask):
            if not mask >> lattice.meet[i][j] & 1:
                return False
    return True


def is_scott_open_mask(lattice, mask, exhaustive=False):
    """Directed families cannot creep up on the set.

    A finite directed family contains its supremum, so any upward-closed
    set passes; the reduced check verifies upward closure.  With
    exhaustive=True every directed subset is enumerated and the definition
    is run literally (the oracle used on small lattices in the tests).
    """
    up_closed = all(not (lattice.up[i] & ~mask) for i in iter_points(mask))
    if not exhaustive or not up_closed:
        return up_closed
    if lattice.m > BRUTE_FORCE_ELEMENTS:
        raise InputError(f"directed-subset scan capped at {BRUTE_FORCE_ELEMENTS} elements")
    for d in all_masks(lattice.m):
        if d == 0:
            continue
        pts = points_of(d)
        directed = all(
            any(d >> k & 1 and lattice.leq(i, k) and lattice.leq(j, k)
                for k in pts)
            for i in pts for j in pts
        )
        if not directed:
            continue
        sup = pts[0]
        for i in pts[1:]:
            sup = lattice.join[sup][i]
        if mask >> sup & 1 and not d & mask:
            return False
    return True


def is_completely_prime_mask(lattice, mask):
    """Joins cannot enter the set unless a joinand is already in it; the
    empty join (bottom) rules out the improper filter."""
    if mask >> lattice.bottom & 1:
        return False
    for i in range(lattice.m):
        for j in range(lattice.m):
            if mask >> lattice.join[i][j] & 1:
                if not (mask >> i & 1 or mask >> j & 1):
                    return False
    return True


def make_filter(lattice, mask):
    if not is_filter_mask(lattice, mask):
        raise InputError(f"element-set {mask:#x} is not a filter")
    return Filter(
        members=mask,
        proper=mask != full_mask(lattice.m),
        scott_open=is_scott_open_mask(lattice, mask),
        completely_prime=is_completely_prime_mask(lattice, mask),
    )


def filters_of(lattice, kind="all"):
    """Filters of the requested class, sorted by member mask.

    On a finite lattice every filter is principal (a meet-closed up-set
    contains the meet of all its members), so the principal up-sets are the
    whole enumeration; each one is still validated, and a brute-force
    subset scan backs this up in the tests.  The improper filter is
    included and is never completely prime.
    """
    if kind not in ("all", "scott_open", "completely_prime"):
        raise InputError(f"unknown filter kind {kind!r}")
    out = [make_filter(lattice, lattice.up[i]) for i in range(lattice.m)]
    out.sort(key=lambda f: f.members)
    if kind == "scott_open":
        chosen = [f for f in out if f.scott_open]
        if [f.members for f in chosen] != [f.members for f in out]:
            raise OracleMismatch("a filter on a finite lattice is not Scott-open")
        return chosen
    if kind == "completely_prime":
        return [f for f in out if f.completely_prime]
    return out


def filters_bruteforce(lattice, kind="all"):
    """All filters by scanning every element-set; exponential, test oracle."""
    if lattice.m > BRUTE_FORCE_ELEMENTS:
        raise InputError(f"subset scan capped at {BRUTE_FORCE_ELEMENTS} elements")
    out = []
    for mask in all_masks(lattice.m):
        if is_filter_mask(lattice, mask):
            out.append(make_filter(lattice, mask))
    out.sort(key=lambda f: f.members)
    if kind == "scott_open":
        return [f for f in out if f.scott_open]
    if kind == "completely_prime":
        return [f for f in out if f.completely_prime]
    return out


def filter_join(lattice, f, g):
    """The meets {u /\\ v | u in F, v in G}, the supremum of F and G in the
    inclusion-ordered filter poset.

    On a non-distributive lattice the meet-set need not be a filter; that
    is reported as InputError rather than silently repaired.
    """
    for h in (f, g):
        if not is_filter_mask(lattice, h.members):
            raise InputError("filter_join needs filter inputs")
    mask = 0
    for u in iter_points(f.members):
        for v in iter_points(g.members):
            mask |= 1 << lattice.meet[u][v]
    if not is_filter_mask(lattice, mask):
        raise InputError("pairwise meets do not form a filter (lattice is not a frame)")
    if mask & f.members != f.members or mask & g.members != g.members:
        raise OracleMismatch("filter join is not an upper bound")
    for c in range(lattice.m):  # every filter is principal, so this is complete
        h = lattice.up[c]
        if is_subset(f.members | g.members, h) and not is_subset(mask, h):
            raise OracleMismatch("filter join is not the least upper bound")
    return make_filter(lattice, mask)


@dataclass(frozen=True)
class TemperanceReport:
    locally_temperate: bool
    temperate: bool
    note: str = ""


def _set_algebra_backed(lattice):
    """True when the labels are set masks and the tables are their literal
    intersections/unions; such a ring of sets is distributive, no cubic
    scan needed."""
    labels = lattice.labels
    if labels is None or not all(isinstance(l, int) for l in labels):
        return False
    index = {l: i for i, l in enumerate(labels)}
    if len(index) != lattice.m:
        return False
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if (index.get(a & b) != lattice.meet[i][j]
                    or index.get(a | b) != lattice.join[i][j]):
                return False
    return True


def temperance_report(lattice, exhaustive=None):
    """Joins of Scott-open filter pairs stay Scott-open; temperate adds that
    the top-only filter is Scott-open.

    The exhaustive path builds every pairwise meet-set literally.  Above
    the default size cutoff, on a verified frame the join of the principal
    filters at u and v is the principal filter at u /\\ v (any element w
    above it equals (w \\/ u) /\\ (w \\/ v) by distributivity), so the loop
    checks those; the two paths are compared in the test suite.  The
    published weaker variant of temperance is read as the pairwise one
    here; the note records that reading.
    """
    if exhaustive is None:
        exhaustive = lattice.m <= 12
    note = ""
    is_frame = _set_algebra_backed(lattice) or frame_report(lattice).is_frame
    if not is_frame:
        note = "lattice is not a frame; temperance is reported as stated but frame theory does not apply"
    filters = filters_of(lattice, kind="scott_open")
    locally = True
    witnessed = None
    if exhaustive or not is_frame:
        for f in filters:
            for g in filters:
                mask = 0
                for u in iter_points(f.members):
                    for v in iter_points(g.members):
                        mask |= 1 << lattice.meet[u][v]
                if not (is_filter_mask(lattice, mask)
                        and is_scott_open_mask(lattice, mask)):
                    locally = False
                    witnessed = (f.members, g.members)
                    break
            if not locally:
                break
    else:
        for u in range(lattice.m):
            for v in range(lattice.m):
                mask = lattice.up[lattice.meet[u][v]]
                if not is_scott_open_mask(lattice, mask):
                    locally = False
                    witnessed = (lattice.up[u], lattice.up[v])
                    break
            if not locally:
                break
    top_only = make_filter(lattice, 1 << lattice.top)
    temperate = locally and top_only.scott_open
    if not note:
        note = "weak temperance is treated as the pairwise (locally temperate) condition"
    report = TemperanceReport(locally_temperate=locally, temperate=temperate, note=note)
    if witnessed is not None:
        report = TemperanceReport(
            locally_temperate=locally,
            temperate=temperate,
            note=note + f"; witness pair {witnessed}",
        )
    return report


def points_space(lattice):
    """Space of completely prime filters with opens {filters containing u};
    always sober, which is re-checked on the result.

    Returns the space; points_space_detail also exposes the filter list and
    the element-to-open map for the duality checks.
    """
    space = points_space_detail(lattice)[0]
    from .spaces import property_report

    if not property_report(space).sober:
        raise OracleMismatch("point space is not sober")
    return space


def points_space_detail(lattice):
    cps = filters_of(lattice, kind="completely_prime")
    opens_of = []
    for u in range(lattice.m):
        opens_of.append(mask_of(
            i for i, f in enumerate(cps) if f.members >> u & 1
        ))
    opens = tuple(sorted(set(opens_of)))
    space = FinSpace(len(cps), opens).validate()
    return space, cps, tuple(opens_of)


@dataclass(frozen=True)
class DualityReport:
    """Duality facts; fields a given checker does not compute are None."""

    unit_injective: bool | None
    unit_surjective: bool | None
    unit_open_map: bool | None
    spatial: bool | None
    hm_bijection: bool | None
    witnesses: dict = field(default_factory=dict)


def stone_round_trip(space):
    """Unit of the opens/points adjunction plus spatiality of the counit.

    The unit sends x to its open-neighborhood filter; it is injective,
    surjective and open exactly when the space is homeomorphic to the point
    space of its own opens-lattice.  The counit u -> {points containing u}
    is surjective by construction, so spatiality is its injectivity.
    """
    lat = lattice_of_opens(space)
    pt_space, cps, opens_of = points_space_detail(lat)
    witnesses = {}

    unit = []
    for x in range(space.n):
        nbhd_filter = mask_of(
            i for i, u in enumerate(space.opens) if u >> x & 1
        )
        if not is_completely_prime_mask(lat, nbhd_filter):
            raise OracleMismatch("unit image is not completely prime")
        unit.append(nbhd_filter)

    cp_masks = [f.members for f in cps]
    unit_idx = []
    for x, mask in enumerate(unit):
        if mask not in cp_masks:
            raise OracleMismatch("unit image missing from the point space")
        unit_idx.append(cp_masks.index(mask))

    unit_injective = len(set(unit_idx)) == space.n
    if not unit_injective:
        seen = {}
        for x, i in enumerate(unit_idx):
            if i in seen:
                witnesses["unit_collision"] = (seen[i], x)
                break
            seen[i] = x
    unit_surjective = set(unit_idx) == set(range(len(cps)))
    unit_open_map = unit_injective and unit_surjective and all(
        mask_of(unit_idx[x] for x in points_of(u)) in pt_space.open_set()
        for u in space.opens
    )

    spatial = len(set(opens_of)) == lat.m
    if not spatial:
        seen = {}
        for u, o in enumerate(opens_of):
            if o in seen:
                witnesses["counit_collision"] = (seen[o], u)
                break
            seen[o] = u

    return DualityReport(
        unit_injective=unit_injective,
        unit_surjective=unit_surjective,
        unit_open_map=unit_open_map,
        spatial=spatial,
        hm_bijection=None,
        witnesses=witnesses,
    )


def hofmann_mislove_report(space, include_empty=True):
    """Scott-open filters on the opens-lattice against compact saturated
    point-sets, in both directions.

    F -> intersection of F and Q -> {opens around Q} must be mutually
    inverse and inclusion-reversing; with include_empty the empty set pairs
    with the improper filter, otherwise both ends are dropped to match the
    proper-filter reading.  Non-sober (non-T0) inputs run anyway; the
    correspondence below is specific to finite carriers where it needs no
    sobriety.
    """
    lat = lattice_of_opens(space)
    filters = filters_of(lat, kind="scott_open")
    sats = list(space.opens)  # saturated = open on a finite space; all compact
    if not include_empty:
        filters = [f for f in filters if f.proper]
        sats = [q for q in sats if q != 0]
    witnesses = {}
    if not specialization_preorder(space).is_partial_order():
        witnesses["warning"] = "input space is not T0 (hence not sober)"

    full = space.full
    to_sat = []
    for f in filters:
        inter = full
        for i in iter_points(f.members):
            inter &= space.opens[i]
        to_sat.append(inter)

    to_filter = []
    for q in sats:
        mask = mask_of(
            i for i, u in enumerate(space.opens) if is_subset(q, u)
        )
        if not is_filter_mask(lat, mask):
            raise OracleMismatch("neighborhood family of a compact saturated set is not a filter")
        to_filter.append(mask)

    filter_masks = [f.members for f in filters]
    bijection = (
        sorted(to_sat) == sorted(set(to_sat))
        and set(to_sat) == set(sats)
        and sorted(to_filter) == sorted(set(to_filter))
        and set(to_filter) == set(filter_masks)
    )
    if bijection:
        for f, q in zip(filters, to_sat):
            back = to_filter[sats.index(q)]
            if back != f.members:
                bijection = False
                witnesses["not_inverse"] = (f.members, q)
                break
    if bijection:
        for i, f in enumerate(filters):
            for j, g in enumerate(filters):
                if is_subset(f.members, g.members) != is_subset(to_sat[j], to_sat[i]):
                    bijection = False
                    witnesses["not_order_reversing"] = (f.members, g.members)
                    break
            if not bijection:
                break

    return DualityReport(
        unit_injective=None,
        unit_surjective=None,
        unit_open_map=None,
        spatial=None,
        hm_bijection=bijection,
        witnesses=witnesses,
    )


@dataclass(frozen=True)
class WaybelowReport:
    waybelow: tuple
    continuous: bool
    stable: bool
    locally_temperate: bool | None = None


def waybelow_and_stability(lattice, crosscheck_temperance=True):
    """Way-below rows, continuity and stability of the lattice.

    u << v iff every directed family whose supremum dominates v contains an
    element above u; on a finite carrier the principal families {w}, v <= w,
    decide this (every directed family contains its supremum), which is the
    loop run here.  The literal directed-family oracle lives in the tests.
    Also asserts way-below = order, continuity via the directed set of
    way-below elements, stability by the triple quantifier, and, on
    continuous frames, agreement between stability and local temperance.
    """
    m = lattice.m
    up = lattice.up
    rows = []
    for u in range(m):
        row = 0
        for v in range(m):
            # principal families {w} with v <= w decide the definition on a
            # finite carrier: each must contain an element above u
            ok = True
            for w in range(m):
                if up[v] >> w & 1 and not up[u] >> w & 1:
                    ok = False
                    break
            if ok:
                row |= 1 << v
        rows.append(row)
    waybelow = tuple(rows)
    if waybelow != tuple(up):
        raise OracleMismatch("way-below differs from the order on a finite lattice")

    continuous = True
    for v in range(m):
        below = [u for u in range(m) if rows[u] >> v & 1]
        if not below:
            continuous = False
            break
        directed = all(
            any(lattice.leq(a, c) and lattice.leq(b, c) for c in below)
            for a in below for b in below
        )
        sup = below[0]
        for u in below[1:]:
            sup = lattice.join[sup][u]
        if not directed or sup != v:
            continuous = False
            break

    stable = True
    for u in range(m):
        for v in range(m):
            if not rows[u] >> v & 1:
                continue
            for w in range(m):
                if rows[u] >> w & 1 and not rows[u] >> lattice.meet[v][w] & 1:
                    stable = False
                    break
            if not stable:
                break
        if not stable:
            break

    locally_temperate = None
    if crosscheck_temperance and frame_report(lattice).is_frame:
        locally_temperate = temperance_report(lattice).locally_temperate
        if continuous and stable != locally_temperate:
            raise OracleMismatch("stability and local temperance disagree on a continuous frame")
    return WaybelowReport(
        waybelow=waybelow,
        continuous=continuous,
        stable=stable,
        locally_temperate=locally_temperate,
    )


def waybelow_directed_oracle(lattice, max_family=None):
    """Way-below rows straight from the directed-family definition.

    Enumerates directed element-sets (all of them when 2^m is small,
    otherwise families of at most max_family elements), computes suprema by
    folding the join table, and tests the definition literally.
    """
    from itertools import combinations

    m = lattice.m
    if max_family is None:
        max_family = m if m <= 12 else 3
    if max_family >= m and m <= 12:
        candidates = (points_of(d) for d in all_masks(m) if d)
    else:
        candidates = (
            list(pts)
            for size in range(1, max_family + 1)
            for pts in combinations(range(m), size)
        )
    families = []
    for pts in candidates:
        directed = all(
            any(lattice.leq(a, c) and lattice.leq(b, c) for c in pts)
            for a in pts for b in pts
        )
        if directed:
            sup = pts[0]
            for i in pts[1:]:
                sup = lattice.join[sup][i]
            families.append((mask_of(pts), sup))
    rows = []
    for u in range(m):
        row = 0
        for v in range(m):
            ok = all(
                any(lattice.leq(u, d) for d in iter_points(dmask))
                for dmask, sup in families
                if lattice.leq(v, sup)
            )
            if ok:
                row |= 1 << v
        rows.append(row)
    return tuple(rows)


def chain_lattice(k):
    """The k-element chain 0 < 1 < ... < k-1."""
    rows = [full_mask(k) & ~full_mask(i) for i in range(k)]
    return lattice_from_leq(k, rows)


def boolean_lattice(k):
    """Subsets of a k-element set ordered by inclusion (2^k elements)."""
    masks = list(all_masks(k))
    rows = [
        mask_of(j for j, b in enumerate(masks) if is_subset(a, b))
        for a in masks
    ]
    return lattice_from_leq(len(masks), rows, labels=masks)


def diamond_m3():
    """Bottom, three incomparable atoms, top; the classic non-frame."""
    rows = [0b11111, 0b10010, 0b10100, 0b11000, 0b10000]
    return lattice_from_leq(5, rows)


def pentagon_n5():
    """The five-element non-modular lattice."""
    # 0 bottom, 4 top, chain 1 < 2, and 3 incomparable to both
    rows = [0b11111, 0b10110, 0b10100, 0b11000, 0b10000]
    return lattice_from_leq(5, rows)


def downset_lattice(p):
    """Distributive lattice of down-closed sets of a preorder."""
    from .catalog import downsets_as_masks

    masks = downsets_as_masks(p)
    rows = [
        mask_of(j for j, b in enumerate(masks) if is_subset(a, b))
        for a in masks
    ]
    return lattice_from_leq(len(masks), rows, labels=masks)


def lattices_isomorphic(a, b):
    """Brute-force order-isomorphism search for small lattices."""
    from itertools import permutations

    if a.m != b.m:
        return False
    for perm in permutations(range(a.m)):
        if all(
            a.leq(i, j) == b.leq(perm[i], perm[j])
            for i in range(a.m) for j in range(a.m)
        ):
            return True
    return False
