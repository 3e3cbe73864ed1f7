"""Finite topological spaces and the decision procedures on them.

A space is a family of open point-sets over points 0..n-1; every finite
topology is determined by its specialization preorder (opens = up-closed
sets), which keeps the checkers polynomial in the number of opens instead
of doubly exponential.  All values are immutable and all operations are
pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .bitsets import all_masks, full_mask, is_subset, iter_points, mask_of, points_of

MAX_POINTS = 16

# relations alone stay cheap at larger sizes (hyperspace carriers need them);
# only materialized topologies pay the 2^n cost guarded by MAX_POINTS
MAX_PREORDER_POINTS = 64


class InputError(ValueError):
    """User-supplied data failed validation."""


class OracleMismatch(AssertionError):
    """Two algorithms that must agree returned different answers (a bug)."""


@dataclass(frozen=True)
class FinSpace:
    """Finite topological space: point count and sorted open-set masks."""

    n: int
    opens: tuple

    def __post_init__(self):
        if not 0 <= self.n <= MAX_POINTS:
            raise InputError(f"point count {self.n} outside 0..{MAX_POINTS}")
        full = full_mask(self.n)
        if list(self.opens) != sorted(set(self.opens)):
            raise InputError("opens must be sorted and duplicate-free")
        for m in self.opens:
            if m & ~full:
                raise InputError(f"open {m:#x} has points outside 0..{self.n - 1}")
        if 0 not in self.opens or full not in self.opens:
            raise InputError("opens must contain the empty set and the full set")

    @property
    def full(self):
        return full_mask(self.n)

    def is_open(self, mask):
        return mask in self.open_set()

    def is_closed(self, mask):
        return (self.full ^ mask) in self.open_set()

    def closeds(self):
        """Closed sets, sorted ascending as masks."""
        full = self.full
        return tuple(sorted(full ^ u for u in self.opens))

    def open_set(self):
        cached = self.__dict__.get("_opens_frozen")
        if cached is None:
            cached = frozenset(self.opens)
            object.__setattr__(self, "_opens_frozen", cached)
        return cached

    def validate(self):
        """Check closure under binary union/intersection (O(|opens|^2))."""
        opens = self.open_set()
        for u in self.opens:
            for v in self.opens:
                if u | v not in opens:
                    raise InputError(f"opens not closed under union: {u:#x}, {v:#x}")
                if u & v not in opens:
                    raise InputError(f"opens not closed under intersection: {u:#x}, {v:#x}")
        return self


@dataclass(frozen=True)
class Preorder:
    """Reflexive transitive relation, stored as up-set rows: up[x] = {y | x <= y}."""

    n: int
    up: tuple

    def __post_init__(self):
        if not 0 <= self.n <= MAX_PREORDER_POINTS:
            raise InputError(f"point count {self.n} outside 0..{MAX_PREORDER_POINTS}")
        full = full_mask(self.n)
        if len(self.up) != self.n:
            raise InputError("need one up-set row per point")
        for x, row in enumerate(self.up):
            if row & ~full:
                raise InputError(f"row {x} mentions points outside 0..{self.n - 1}")
            if not row >> x & 1:
                raise InputError(f"relation not reflexive at {x}")
        for x, row in enumerate(self.up):
            for y in iter_points(row):
                if self.up[y] & ~row:
                    raise InputError(f"relation not transitive at ({x}, {y})")

    def leq(self, x, y):
        return bool(self.up[x] >> y & 1)

    def down(self):
        """Down-set rows: down[x] = {y | y <= x}."""
        rows = [0] * self.n
        for x, row in enumerate(self.up):
            for y in iter_points(row):
                rows[y] |= 1 << x
        return tuple(rows)

    def is_partial_order(self):
        return all(
            self.up[x] & self.down()[x] == 1 << x for x in range(self.n)
        )

    @classmethod
    def from_pairs(cls, n, pairs, transitive_close=True):
        """Build from (x, y) pairs meaning x <= y; reflexive pairs may be omitted.

        With transitive_close=False, input that is not already transitive is
        rejected instead of being repaired.
        """
        rows = [1 << x for x in range(n)]
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise InputError(f"pair ({x}, {y}) out of range")
            rows[x] |= 1 << y
        closed = transitive_closure(rows)
        if not transitive_close and closed != tuple(rows):
            raise InputError("relation is not transitive")
        return cls(n, closed)


def transitive_closure(rows):
    """Reflexive-transitive closure of up-set rows (Warshall over bitmasks)."""
    rows = [row | 1 << x for x, row in enumerate(rows)]
    n = len(rows)
    for k in range(n):
        rk = rows[k]
        bit = 1 << k
        for x in range(n):
            if rows[x] & bit:
                rows[x] |= rk
    return tuple(rows)


def build_space(n, subbasis):
    """Smallest topology on n points containing every subbasis member.

    Closing under finite intersections (empty intersection = full set) and
    then arbitrary unions yields exactly the up-closed sets of the preorder
    "x <= y iff every subbasis member containing x contains y", which is
    what gets enumerated here.
    """
    if not 0 <= n <= MAX_POINTS:
        raise InputError(f"point count {n} outside 0..{MAX_POINTS}")
    full = full_mask(n)
    masks = []
    for member in subbasis:
        m = member if isinstance(member, int) else mask_of(member)
        if m & ~full:
            raise InputError(f"subbasis member {m:#x} has points outside 0..{n - 1}")
        masks.append(m)
    rows = []
    for x in range(n):
        row = full
        for m in masks:
            if m >> x & 1:
                row &= m
        rows.append(row)
    return alexandroff_space(Preorder(n, transitive_closure(rows)))


def specialization_preorder(space):
    """x <= y iff every open neighborhood of x contains y."""
    full = space.full
    rows = []
    for x in range(space.n):
        row = full
        for u in space.opens:
            if u >> x & 1:
                row &= u
        rows.append(row)
    return Preorder(space.n, tuple(rows))


def alexandroff_space(p):
    """Space whose opens are the up-closed sets of the preorder."""
    if p.n > MAX_POINTS:
        raise InputError(f"materializing a topology is capped at {MAX_POINTS} points")
    up = p.up
    opens = tuple(
        m for m in all_masks(p.n)
        if all(is_subset(up[x], m) for x in iter_points(m))
    )
    return FinSpace(p.n, opens)


@dataclass(frozen=True)
class Hulls:
    closure: int
    saturation: int
    upset: int
    downset: int


def hulls(space, a):
    """Closure, saturation, up-set and down-set of the point-set a.

    Closure is the smallest closed superset, saturation the intersection of
    open supersets; up/down sets come from the specialization preorder.  On
    finite spaces saturation(a) = upset(a) and closure(a) = downset(a); each
    is computed from its own definition rather than assumed.
    """
    full = space.full
    if a & ~full:
        raise InputError("point-set outside the space")
    closure = full
    for u in space.opens:
        if u & a == 0:
            closure &= full ^ u
    saturation = full
    for u in space.opens:
        if is_subset(a, u):
            saturation &= u
    p = specialization_preorder(space)
    down_rows = p.down()
    upset = 0
    downset = 0
    for x in iter_points(a):
        upset |= p.up[x]
        downset |= down_rows[x]
    return Hulls(closure=closure, saturation=saturation, upset=upset, downset=downset)


def irreducible_closed_sets(space):
    """Non-empty closed sets meeting every pair of opens they meet separately.

    Returns (closed_mask, generic_points_mask) pairs sorted by mask, where
    the generic points of C are the x with C = cl({x}); the generic set may
    be empty or hold several points.
    """
    down_rows = specialization_preorder(space).down()
    out = []
    for c in space.closeds():
        if c == 0:
            continue
        meeting = [u for u in space.opens if u & c]
        irreducible = True
        for i, u in enumerate(meeting):
            for v in meeting[i + 1:]:
                if u & v & c == 0:
                    irreducible = False
                    break
            if not irreducible:
                break
        if irreducible:
            generic = mask_of(x for x in iter_points(c) if down_rows[x] == c)
            out.append((c, generic))
    return out


def _directed_irreducible_closeds(space, up_rows, down_rows):
    """Irreducible closeds via directedness: C is irreducible iff every two
    of its points have an upper bound inside C.  Exact on finite spaces
    because opens are up-closed, and much cheaper than the pairwise-opens
    test; the two are compared in the test suite."""
    out = []
    for c in space.closeds():
        if c == 0:
            continue
        pts = points_of(c)
        ok = True
        for i, x in enumerate(pts):
            ux = up_rows[x]
            for y in pts[i:]:
                if ux & up_rows[y] & c == 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            generic = mask_of(x for x in pts if down_rows[x] == c)
            out.append((c, generic))
    return out


def is_compact(space, a, method="open-cover"):
    """Compactness of the point-set a; always true on a finite space.

    open-cover: the minimal-neighborhood cover {min_nbhd(x) | x in a}
    refines every open cover, so extracting a finite subcover from it
    decides the general case; the subcover is built explicitly.

    filtered-closed: a finite down-directed family of closed sets contains
    a least member, namely its own intersection, so a violating family
    would already violate at one closed set; those are checked one by one.
    """
    full = space.full
    if a & ~full:
        raise InputError("point-set outside the space")
    if method == "open-cover":
        opens = space.open_set()
        union = 0
        for x in iter_points(a):
            nbhd = full
            for u in space.opens:
                if u >> x & 1:
                    nbhd &= u
            if nbhd not in opens:
                raise OracleMismatch("minimal neighborhood is not open")
            union |= nbhd
        return is_subset(a, union)
    if method == "filtered-closed":
        for c in space.closeds():
            members = (c,)  # least member of any filtered family through c
            if a & c == 0 and not any(a & m == 0 for m in members):
                return False
        return True
    raise InputError(f"unknown compactness method {method!r}")


@dataclass(frozen=True)
class PrincipalUltrafilter:
    """The ultrafilter {A | base_point in A}; on a finite carrier every
    ultrafilter has this form because it contains a singleton."""

    base_point: int


def ultrafilter_limits(space, u, _down_rows=None):
    """Limit set of a principal ultrafilter, computed two ways.

    (a) definitionally: x is a limit iff every open neighborhood of x is a
    member; (b) as the intersection of the closures of all member sets.
    The two must agree, and both equal cl({base_point}).
    """
    x0 = u.base_point
    if not 0 <= x0 < space.n:
        raise InputError(f"base point {x0} outside the space")
    full = space.full
    bit = 1 << x0
    definitional = 0
    for x in range(space.n):
        if all(v & bit for v in space.opens if v >> x & 1):
            definitional |= 1 << x
    down_rows = _down_rows
    if down_rows is None:
        down_rows = specialization_preorder(space).down()
    rest = full ^ bit
    formula = full
    sub = 0
    while True:  # member sets of the ultrafilter = supersets of {base_point}
        member = sub | bit
        cl = 0
        for x in iter_points(member):
            cl |= down_rows[x]
        formula &= cl
        if sub == rest:
            break
        sub = (sub - rest) & rest
    if definitional != formula:
        raise OracleMismatch(
            f"limit computations disagree: {definitional:#x} vs {formula:#x}"
        )
    return definitional


@dataclass(frozen=True)
class SpaceProperties:
    t0: bool
    t1: bool
    hausdorff: bool
    compact: bool
    noetherian: bool
    locally_compact: bool
    core_compact: bool
    sober: bool
    well_filtered: bool
    monotone_convergence: bool
    coherent: bool
    weakly_coherent: bool
    weakly_hausdorff: bool
    locally_strongly_sober: bool
    stably_locally_compact: bool

    def flags(self):
        return dict(self.__dict__)


def saturated_sets(space):
    """Up-closed point-sets, ascending; on a valid finite space these are
    exactly the opens (asserted by property_report)."""
    up = specialization_preorder(space).up
    return tuple(
        m for m in all_masks(space.n)
        if all(is_subset(up[x], m) for x in iter_points(m))
    )


def weakly_hausdorff_pointwise(space, up_rows=None):
    """Every open W around up(x) & up(y) traps an intersection U & V of open
    neighborhoods of x and y.

    The existential over U and V is eliminated exactly by the minimal open
    neighborhoods (every open containing x contains the minimal one), which
    are scanned from the opens; the up-sets come from the specialization
    relation.  Returns (flag, witness).
    """
    if up_rows is None:
        up_rows = specialization_preorder(space).up
    n = space.n
    full = space.full
    min_nbhd = []
    for x in range(n):
        m = full
        for u in space.opens:
            if u >> x & 1:
                m &= u
        min_nbhd.append(m)
    for x in range(n):
        for y in range(x, n):
            target = up_rows[x] & up_rows[y]
            trap = min_nbhd[x] & min_nbhd[y]
            for w in space.opens:
                if is_subset(target, w) and not is_subset(trap, w):
                    return False, (x, y, w)
    return True, None


def weakly_hausdorff_compact_saturated(space, sats=None, pair_cap=4_000_000):
    """Same property quantified over pairs of compact saturated sets.

    For a pair (Q1, Q2) the minimal open around Q1 is Q1 itself (saturated
    sets are open on finite spaces, asserted here), and larger W only
    weaken the subset requirement, so testing the minimal open W around
    Q1 & Q2 decides all of them.  Returns (flag, witness); (None, None)
    above the pair cap.
    """
    if sats is None:
        sats = saturated_sets(space)
    if len(sats) * len(sats) > pair_cap:
        return None, None
    opens = space.open_set()
    for q in sats:
        if q not in opens:
            raise OracleMismatch("saturated set is not open")
    for i, q1 in enumerate(sats):
        for q2 in sats[i:]:
            trap = q1 & q2  # intersection of the minimal opens around Q1, Q2
            min_w = q1 & q2
            if min_w not in opens:
                raise OracleMismatch("saturated sets not closed under intersection")
            if not is_subset(trap, min_w):
                return False, (q1, q2)
    return True, None


def property_report(space):
    """All space-level property flags, each by quantifier elimination over
    the finite structure; the two weak-Hausdorff algorithms and the two
    compactness methods are cross-checked along the way."""
    n = space.n
    full = space.full
    opens = space.opens
    open_set = space.open_set()
    p = specialization_preorder(space)
    up_rows = p.up
    down_rows = p.down()

    sats = saturated_sets(space)
    if sats != opens:
        raise OracleMismatch("opens differ from the up-closed sets")
    for x in range(n):
        if up_rows[x] not in open_set:
            raise OracleMismatch("minimal neighborhood is not open")

    def compact_by_min_cover(mask):
        # same finite subcover extraction as is_compact(method="open-cover"),
        # reusing the precomputed minimal neighborhoods
        union = 0
        for x in iter_points(mask):
            union |= up_rows[x]
        return is_subset(mask, union)

    t0 = all(up_rows[x] & down_rows[x] == 1 << x for x in range(n))
    t1 = all(up_rows[x] == 1 << x for x in range(n))
    # disjoint open neighborhoods exist iff the minimal ones are disjoint
    hausdorff = all(
        up_rows[x] & up_rows[y] == 0
        for x in range(n) for y in range(x + 1, n)
    )

    compact_cover = is_compact(space, full, method="open-cover")
    compact_filtered = is_compact(space, full, method="filtered-closed")
    if compact_cover != compact_filtered:
        raise OracleMismatch("compactness methods disagree on the full set")
    compact = compact_cover

    noetherian = all(compact_by_min_cover(m) for m in all_masks(n))

    # witness K = min_nbhd(x): open (so x is interior), compact, inside U
    locally_compact = True
    for x in range(n):
        k = up_rows[x]
        if not compact_by_min_cover(k):
            locally_compact = False
            break
        if any(u >> x & 1 and not is_subset(k, u) for u in opens):
            locally_compact = False
            break

    # the opens ordered by inclusion form a continuous lattice iff each V is
    # the union of the opens way-below it; U << V collapses to U <= V here
    # because the principal family {V} is directed with supremum V
    core_compact = True
    for v in opens:
        union_waybelow = 0
        for u in opens:
            if is_subset(u, v):
                union_waybelow |= u
        if union_waybelow != v:
            core_compact = False
            break

    irr = _directed_irreducible_closeds(space, up_rows, down_rows)
    sober = all(gen.bit_count() == 1 for _, gen in irr)

    # a finite filtered family of compact saturated sets contains its least
    # member, its own intersection, so one-member families decide the trace
    # condition; the literal multi-member quantifier is exercised in tests
    well_filtered = True
    for q in sats:
        intersection = q
        for u in opens:
            if is_subset(intersection, u) and not is_subset(q, u):
                well_filtered = False
                break
        if not well_filtered:
            break

    if t0:
        directed = []
        for m in all_masks(n):
            if m == 0:
                continue
            pts = points_of(m)
            ok = True
            for i, x in enumerate(pts):
                ux = up_rows[x]
                for y in pts[i:]:
                    if ux & up_rows[y] & m == 0:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                directed.append(m)
        sups = []
        for m in directed:
            ub = full
            for x in iter_points(m):
                ub &= up_rows[x]
            sup = -1
            for y in iter_points(ub):
                if is_subset(ub, up_rows[y]):
                    sup = y
                    break
            sups.append(sup)
        has_sups = all(s >= 0 for s in sups)
        scott = has_sups and all(
            m & u != 0
            for m, s in zip(directed, sups)
            for u in opens
            if u >> s & 1
        )
        monotone_convergence = has_sups and scott
    else:
        monotone_convergence = False

    # pairwise intersections of saturated sets are saturated (asserted in
    # the weak-Hausdorff pass below), so checking each one covers all pairs
    coherent = all(compact_by_min_cover(q) for q in sats)
    weakly_coherent = all(
        compact_by_min_cover(up_rows[x] & up_rows[y])
        for x in range(n) for y in range(x, n)
    )

    wh_points, _ = weakly_hausdorff_pointwise(space, up_rows)
    wh_sat, _ = weakly_hausdorff_compact_saturated(space, sats)
    if wh_sat is not None and wh_points != wh_sat:
        raise OracleMismatch("weak-Hausdorff algorithms disagree")
    weakly_hausdorff = wh_points

    locally_strongly_sober = True
    for x in range(n):
        lim = ultrafilter_limits(space, PrincipalUltrafilter(x), _down_rows=down_rows)
        if lim == 0:
            continue
        generic = [y for y in iter_points(lim) if down_rows[y] == lim]
        if len(generic) != 1:
            locally_strongly_sober = False
            break

    return SpaceProperties(
        t0=t0,
        t1=t1,
        hausdorff=hausdorff,
        compact=compact,
        noetherian=noetherian,
        locally_compact=locally_compact,
        core_compact=core_compact,
        sober=sober,
        well_filtered=well_filtered,
        monotone_convergence=monotone_convergence,
        coherent=coherent,
        weakly_coherent=weakly_coherent,
        weakly_hausdorff=weakly_hausdorff,
        locally_strongly_sober=locally_strongly_sober,
        stably_locally_compact=locally_compact and coherent and sober,
    )


CONSISTENCY_LAWS = (
    ("hausdorff => t1", lambda p: not p.hausdorff or p.t1),
    ("t1 => t0", lambda p: not p.t1 or p.t0),
    ("sober => t0", lambda p: not p.sober or p.t0),
    ("sober => well_filtered", lambda p: not p.sober or p.well_filtered),
    ("coherent => weakly_coherent", lambda p: not p.coherent or p.weakly_coherent),
    ("hausdorff <=> t1 and weakly_hausdorff",
     lambda p: p.hausdorff == (p.t1 and p.weakly_hausdorff)),
    ("finite: sober <=> t0", lambda p: p.sober == p.t0),
    ("finite: monotone_convergence <=> t0", lambda p: p.monotone_convergence == p.t0),
    ("weakly_hausdorff on every finite space", lambda p: p.weakly_hausdorff),
    ("lss <=> wh and coherent and sober",
     lambda p: p.locally_strongly_sober
     == (p.weakly_hausdorff and p.coherent and p.sober)),
    ("lss <=> wh and weakly_coherent and monotone_convergence",
     lambda p: p.locally_strongly_sober
     == (p.weakly_hausdorff and p.weakly_coherent and p.monotone_convergence)),
    ("wh and monotone_convergence => sober",
     lambda p: not (p.weakly_hausdorff and p.monotone_convergence) or p.sober),
    ("wh and weakly_coherent => coherent",
     lambda p: not (p.weakly_hausdorff and p.weakly_coherent) or p.coherent),
    ("stably_locally_compact <=> locally_compact and lss",
     lambda p: p.stably_locally_compact
     == (p.locally_compact and p.locally_strongly_sober)),
    ("stably_locally_compact <=> core_compact and wh and weakly_coherent and mc",
     lambda p: p.stably_locally_compact
     == (p.core_compact and p.weakly_hausdorff and p.weakly_coherent
         and p.monotone_convergence)),
    ("well_filtered and weakly_coherent => coherent",
     lambda p: not (p.well_filtered and p.weakly_coherent) or p.coherent),
)


def property_violations(props):
    """Names of the consistency laws the flag record breaks (empty = sane)."""
    return [name for name, law in CONSISTENCY_LAWS if not law(props)]


def strongly_sober_presumed(props):
    """Compactness plus local strong sobriety; the unlocalized notion is
    exposed only under this presumptive reading."""
    return props.compact and props.locally_strongly_sober


def space_homeomorphic(a, b):
    """Brute-force homeomorphism search; fine for the small spaces here."""
    if a.n != b.n or len(a.opens) != len(b.opens):
        return False
    bo = set(b.opens)
    for perm in permutations(range(a.n)):
        if all(mask_of(perm[x] for x in points_of(u)) in bo for u in a.opens):
            return True
    return False


def sierpinski():
    return build_space(2, [{1}])


def discrete(n):
    return build_space(n, [{x} for x in range(n)])


def indiscrete(n):
    return build_space(n, [])
