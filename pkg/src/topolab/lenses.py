"""Lens and quasi-lens hyperspaces over finite spaces.

A lens is a non-empty intersection of a compact saturated set with a
closed set; a quasi-lens is a pair (Q, C) tied together by three trapping
conditions.  Both carriers get a hyperspace topology generated by the sets
"inside U" and "meets U"; carriers are indexed by ascending member masks
so every output is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitsets import is_subset, iter_points, mask_of
from .spaces import (
    InputError,
    OracleMismatch,
    Preorder,
    specialization_preorder,
    transitive_closure,
)

HYPERSPACE_CARRIER_CAP = 16


def _closure_table(space, down_rows):
    """Closure of every point-set, as a dict filled on demand."""
    cache = {0: 0}

    def closure(mask):
        got = cache.get(mask)
        if got is None:
            got = 0
            for x in iter_points(mask):
                got |= down_rows[x]
            cache[mask] = got
        return got

    return closure


def lenses(space):
    """All lenses, ascending by mask, via two enumerations that must agree.

    (a) non-empty intersections Q & C over compact saturated Q and closed C;
    (b) the canonical-form fixed points L = upset(L) & closure(L).
    """
    p = specialization_preorder(space)
    up_rows = p.up
    down_rows = p.down()
    closure = _closure_table(space, down_rows)
    sats = space.opens  # saturated = open on a finite space, all compact
    closeds = space.closeds()

    from_pairs = set()
    for q in sats:
        for c in closeds:
            l = q & c
            if l:
                from_pairs.add(l)

    from_fixed_points = set()
    for l in range(1, space.full + 1):
        ups = 0
        for x in iter_points(l):
            ups |= up_rows[x]
        if l == ups & closure(l):
            from_fixed_points.add(l)

    if from_pairs != from_fixed_points:
        raise OracleMismatch("lens enumerations disagree")
    return sorted(from_pairs)


@dataclass(frozen=True)
class QuasiLens:
    q: int
    c: int


def is_quasi_lens(space, q, c, _closure=None):
    """The three quasi-lens conditions, with the neighborhood condition
    quantified over every open around q (no minimality shortcut)."""
    if not space.is_open(q):  # compact saturated = open here
        return False
    if not space.is_closed(c):
        return False
    if q & c == 0:
        return False
    p = specialization_preorder(space)
    trace_up = 0
    for x in iter_points(q & c):
        trace_up |= p.up[x]
    if q & ~trace_up:
        return False
    closure = _closure
    if closure is None:
        closure = _closure_table(space, p.down())
    for u in space.opens:
        if is_subset(q, u) and c & ~closure(u & c):
            return False
    return True


def quasi_lenses(space):
    """All quasi-lens pairs, ascending by (q, c)."""
    p = specialization_preorder(space)
    up_rows = p.up
    down_rows = p.down()
    closure = _closure_table(space, down_rows)
    out = []
    for q in space.opens:
        if q == 0:
            continue
        for c in space.closeds():
            if q & c == 0:
                continue
            trace_up = 0
            for x in iter_points(q & c):
                trace_up |= up_rows[x]
            if q & ~trace_up:
                continue
            ok = True
            for u in space.opens:
                if is_subset(q, u) and c & ~closure(u & c):
                    ok = False
                    break
            if ok:
                out.append(QuasiLens(q=q, c=c))
    out.sort(key=lambda ql: (ql.q, ql.c))
    return out


def lens_to_quasi(space, lens):
    """(upset, closure) of a lens; the pair always satisfies the quasi-lens
    conditions."""
    if lens == 0 or lens & ~space.full:
        raise InputError("a lens is a non-empty point-set of the space")
    h_up = 0
    h_cl = 0
    p = specialization_preorder(space)
    down_rows = p.down()
    for x in iter_points(lens):
        h_up |= p.up[x]
        h_cl |= down_rows[x]
    ql = QuasiLens(q=h_up, c=h_cl)
    if not is_quasi_lens(space, ql.q, ql.c):
        raise OracleMismatch("upset/closure pair fails the quasi-lens conditions")
    return ql


def quasi_to_lens(space, ql):
    """q & c; always a lens when (q, c) is a quasi-lens."""
    if not is_quasi_lens(space, ql.q, ql.c):
        raise InputError("input pair is not a quasi-lens")
    return ql.q & ql.c


def vietoris_subbasis(space, kind="lens_vietoris"):
    """Subbasic hyperspace opens as masks over the carrier indices.

    For each open U of the base space: inside(U) = carrier members wholly
    inside U, meets(U) = members whose closed part touches U (for lenses the
    member itself).  Returns (carrier, list of (tag, U, mask)).
    """
    if kind == "lens_vietoris":
        carrier = lenses(space)
        inside = lambda l, u: is_subset(l, u)
        meets = lambda l, u: l & u != 0
    elif kind == "quasi_vietoris":
        carrier = quasi_lenses(space)
        inside = lambda ql, u: is_subset(ql.q, u)
        meets = lambda ql, u: ql.c & u != 0
    else:
        raise InputError(f"unknown hyperspace kind {kind!r}")
    subbasis = []
    for u in space.opens:
        box = mask_of(i for i, l in enumerate(carrier) if inside(l, u))
        diamond = mask_of(i for i, l in enumerate(carrier) if meets(l, u))
        subbasis.append(("inside", u, box))
        subbasis.append(("meets", u, diamond))
    return carrier, subbasis


def hyperspace(space, kind="lens_vietoris", carrier_cap=HYPERSPACE_CARRIER_CAP):
    """The hyperspace as a materialized finite space, generated from the
    "inside"/"meets" subbasis.

    The generated topology has up to 2^carrier opens; carrier_cap guards
    that blow-up.  Use vietoris_specialization for large carriers.
    """
    from .spaces import build_space

    carrier, subbasis = vietoris_subbasis(space, kind)
    if len(carrier) > carrier_cap:
        raise InputError(
            f"hyperspace carrier has {len(carrier)} members; cap is {carrier_cap}"
        )
    return build_space(len(carrier), [s for _, _, s in subbasis])


def vietoris_specialization(space, kind="lens_vietoris"):
    """Specialization preorder of the hyperspace, straight from the subbasis.

    i <= j iff every subbasic open containing i contains j; intersections
    and unions cannot separate points the subbasis does not, so this equals
    the specialization of the full generated topology (cross-checked against
    the materialized hyperspace in the tests).
    """
    carrier, subbasis = vietoris_subbasis(space, kind)
    k = len(carrier)
    full = (1 << k) - 1
    rows = []
    for i in range(k):
        row = full
        for _, _, s in subbasis:
            if s >> i & 1:
                row &= s
        rows.append(row)
    return carrier, Preorder(k, transitive_closure(rows))


@dataclass(frozen=True)
class HyperspaceReport:
    """Hyperspace facts; fields a given checker does not compute are None."""

    lens_count: int
    quasi_lens_count: int
    iota_injective: bool | None
    iota_surjective: bool | None
    iota_homeomorphism: bool | None
    tem_equals_em: bool | None
    tem_equals_vietoris_specialization: bool | None
    all_downsets_closed: bool | None
    witnesses: dict = field(default_factory=dict)


def order_report(space):
    """Pairwise hyperspace orders on the lenses.

    The topological ordering compares upsets one way and closures the other;
    the plain ordering compares upsets and downsets.  Both are matched
    against the specialization preorder read off the hyperspace subbasis,
    and every lens downset is checked to be closed.
    """
    p = specialization_preorder(space)
    up_rows = p.up
    down_rows = p.down()
    closure = _closure_table(space, down_rows)
    ls = lenses(space)
    k = len(ls)
    ups = []
    downs = []
    cls = []
    for l in ls:
        u = 0
        d = 0
        for x in iter_points(l):
            u |= up_rows[x]
            d |= down_rows[x]
        ups.append(u)
        downs.append(d)
        cls.append(closure(l))

    tem_rows = []
    em_rows = []
    for i in range(k):
        trow = 0
        erow = 0
        for j in range(k):
            if is_subset(ups[j], ups[i]) and is_subset(cls[i], cls[j]):
                trow |= 1 << j
            if is_subset(ups[j], ups[i]) and is_subset(downs[i], downs[j]):
                erow |= 1 << j
        tem_rows.append(trow)
        em_rows.append(erow)

    carrier, spec_order = vietoris_specialization(space, "lens_vietoris")
    if carrier != ls:
        raise OracleMismatch("lens carriers disagree")

    witnesses = {}
    tem_equals_em = tem_rows == em_rows
    if not tem_equals_em:
        for i in range(k):
            diff = tem_rows[i] ^ em_rows[i]
            if diff:
                j = next(iter_points(diff))
                witnesses["tem_vs_em"] = (ls[i], ls[j])
                break
    tem_equals_spec = tuple(tem_rows) == spec_order.up
    if not tem_equals_spec:
        for i in range(k):
            diff = tem_rows[i] ^ spec_order.up[i]
            if diff:
                j = next(iter_points(diff))
                witnesses["tem_vs_specialization"] = (ls[i], ls[j])
                break
    downsets_closed = all(space.is_closed(d) for d in downs)
    if not downsets_closed:
        bad = next(l for l, d in zip(ls, downs) if not space.is_closed(d))
        witnesses["downset_not_closed"] = bad

    qls = quasi_lenses(space)
    return HyperspaceReport(
        lens_count=k,
        quasi_lens_count=len(qls),
        iota_injective=None,
        iota_surjective=None,
        iota_homeomorphism=None,
        tem_equals_em=tem_equals_em,
        tem_equals_vietoris_specialization=tem_equals_spec,
        all_downsets_closed=downsets_closed,
        witnesses=witnesses,
    )


def check_embedding(space):
    """The lens-to-pair map as a topological embedding, and on these spaces
    a homeomorphism with the pair-to-intersection map as inverse.

    Verifies injectivity, both round trips, and that the map transports
    each subbasic open exactly (preimage of inside/meets over the pair
    carrier is inside/meets over the lens carrier, for every open).
    """
    ls = lenses(space)
    qls = quasi_lenses(space)
    ql_index = {(ql.q, ql.c): i for i, ql in enumerate(qls)}
    witnesses = {}

    images = []
    for l in ls:
        ql = lens_to_quasi(space, l)
        if (ql.q, ql.c) not in ql_index:
            raise OracleMismatch("image of a lens is not an enumerated quasi-lens")
        if quasi_to_lens(space, ql) != l:
            raise OracleMismatch("pair-to-intersection does not invert lens-to-pair")
        images.append(ql_index[(ql.q, ql.c)])
    iota_injective = len(set(images)) == len(ls)
    iota_surjective = set(images) == set(range(len(qls)))

    round_trip_back = True
    for ql in qls:
        l = quasi_to_lens(space, ql)
        back = lens_to_quasi(space, l)
        if (back.q, back.c) != (ql.q, ql.c):
            round_trip_back = False
            witnesses["iota_rho_mismatch"] = (ql.q, ql.c)
            break

    transport_exact = True
    _, lens_sub = vietoris_subbasis(space, "lens_vietoris")
    _, quasi_sub = vietoris_subbasis(space, "quasi_vietoris")
    for (tag, u, lens_mask), (qtag, qu, quasi_mask) in zip(lens_sub, quasi_sub):
        if tag != qtag or u != qu:
            raise OracleMismatch("subbasis enumerations are misaligned")
        preimage = mask_of(
            i for i, j in enumerate(images) if quasi_mask >> j & 1
        )
        if preimage != lens_mask:
            transport_exact = False
            witnesses["transport"] = (tag, u)
            break

    iota_homeomorphism = (
        iota_injective and iota_surjective and round_trip_back and transport_exact
    )
    rep = order_report(space)
    return HyperspaceReport(
        lens_count=len(ls),
        quasi_lens_count=len(qls),
        iota_injective=iota_injective,
        iota_surjective=iota_surjective,
        iota_homeomorphism=iota_homeomorphism,
        tem_equals_em=rep.tem_equals_em,
        tem_equals_vietoris_specialization=rep.tem_equals_vietoris_specialization,
        all_downsets_closed=rep.all_downsets_closed,
        witnesses=witnesses,
    )


def neighborhood_closure_implication(space):
    """If C stays inside the closure of U & C for every open U around Q,
    then it stays inside the closure of Q & C.

    Checked for every pair of an upward-closed Q (the empty set included,
    with the literal quantifier over all opens) and a closed C.  Returns
    (True, None) or (False, witness pair).
    """
    down_rows = specialization_preorder(space).down()
    closure = _closure_table(space, down_rows)
    for q in space.opens:
        for c in space.closeds():
            hypothesis = True
            for u in space.opens:
                if is_subset(q, u) and c & ~closure(u & c):
                    hypothesis = False
                    break
            if hypothesis and c & ~closure(q & c):
                return False, (q, c)
    return True, None
