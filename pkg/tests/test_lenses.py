"""Hyperspace machinery: lens/quasi-lens enumeration, the embedding and its
round trips, Vietoris subbasis transport, order comparisons, and the
closure implication.  The materialized hyperspace serves as the oracle for
the subbasis-only specialization used on large carriers.
"""

import random

import pytest

from topolab.bitsets import is_subset, mask_of, points_of
from topolab.catalog import enumerate_spaces, random_space
from topolab.lenses import (
    QuasiLens,
    check_embedding,
    hyperspace,
    is_quasi_lens,
    lens_to_quasi,
    lenses,
    neighborhood_closure_implication,
    order_report,
    quasi_lenses,
    quasi_to_lens,
    vietoris_specialization,
    vietoris_subbasis,
)
from topolab.spaces import (
    InputError,
    discrete,
    hulls,
    sierpinski,
    space_homeomorphic,
    specialization_preorder,
)

SIER = sierpinski()


def test_lenses_examples():
    assert lenses(SIER) == [0b01, 0b10, 0b11]
    # in a T1 space the lenses are the non-empty (compact) subsets
    assert lenses(discrete(2)) == [1, 2, 3]
    assert lenses(discrete(1)) == [1]


def test_quasi_lenses_examples():
    assert quasi_lenses(SIER) == [
        QuasiLens(q=0b10, c=0b11),
        QuasiLens(q=0b11, c=0b01),
        QuasiLens(q=0b11, c=0b11),
    ]
    assert quasi_lenses(discrete(1)) == [QuasiLens(q=1, c=1)]
    # T1 pattern: exactly the non-empty diagonal pairs
    assert quasi_lenses(discrete(2)) == [
        QuasiLens(q=1, c=1), QuasiLens(q=2, c=2), QuasiLens(q=3, c=3),
    ]


def test_t1_patterns_exhaustive():
    for n in (1, 2, 3):
        space = discrete(n)
        assert lenses(space) == list(range(1, 1 << n))
        assert quasi_lenses(space) == [
            QuasiLens(q=a, c=a) for a in range(1, 1 << n)
        ]


def test_iota_rho_examples():
    ql = lens_to_quasi(SIER, 0b10)
    assert (ql.q, ql.c) == (0b10, 0b11)
    assert quasi_to_lens(SIER, QuasiLens(q=0b11, c=0b01)) == 0b01
    with pytest.raises(InputError):
        lens_to_quasi(SIER, 0)
    with pytest.raises(InputError):
        quasi_to_lens(SIER, QuasiLens(q=0b01, c=0b10))  # disjoint pair


def test_iota_matches_hulls():
    for space in enumerate_spaces(3):
        for lens in lenses(space):
            ql = lens_to_quasi(space, lens)
            h = hulls(space, lens)
            assert ql.q == h.upset and ql.c == h.closure


def test_round_trips_all_small_spaces():
    for space in enumerate_spaces(3):
        for lens in lenses(space):
            assert quasi_to_lens(space, lens_to_quasi(space, lens)) == lens
        for ql in quasi_lenses(space):
            back = lens_to_quasi(space, quasi_to_lens(space, ql))
            assert (back.q, back.c) == (ql.q, ql.c)


def test_hyperspace_examples():
    one = hyperspace(discrete(1), "lens_vietoris")
    assert one.n == 1
    one_q = hyperspace(discrete(1), "quasi_vietoris")
    assert one_q.n == 1

    hs = hyperspace(SIER, "lens_vietoris")
    assert hs.n == 3
    carrier, subbasis = vietoris_subbasis(SIER, "lens_vietoris")
    assert carrier == [0b01, 0b10, 0b11]
    entries = {(tag, u): s for tag, u, s in subbasis}
    # inside {1} holds only the lens {1}; meets {1} holds {1} and {0,1}
    assert entries[("inside", 0b10)] == mask_of([1])
    assert entries[("meets", 0b10)] == mask_of([1, 2])


def test_hyperspace_kinds_homeomorphic_via_embedding():
    for space in enumerate_spaces(3):
        lens_side = hyperspace(space, "lens_vietoris", carrier_cap=8)
        quasi_side = hyperspace(space, "quasi_vietoris", carrier_cap=8)
        assert space_homeomorphic(lens_side, quasi_side)


def test_hyperspace_carrier_cap():
    with pytest.raises(InputError):
        hyperspace(discrete(5), "lens_vietoris", carrier_cap=8)


def test_subbasis_specialization_matches_materialized():
    rng = random.Random(12)
    cases = list(enumerate_spaces(3))
    cases += [random_space(rng, 4) for _ in range(25)]
    for space in cases:
        carrier, pre = vietoris_specialization(space, "lens_vietoris")
        hs = hyperspace(space, "lens_vietoris")
        assert specialization_preorder(hs).up == pre.up
        carrier_q, pre_q = vietoris_specialization(space, "quasi_vietoris")
        hq = hyperspace(space, "quasi_vietoris")
        assert specialization_preorder(hq).up == pre_q.up


def test_order_report_sierpinski():
    rep = order_report(SIER)
    assert rep.lens_count == 3 and rep.quasi_lens_count == 3
    assert rep.tem_equals_em and rep.tem_equals_vietoris_specialization
    assert rep.all_downsets_closed
    carrier, pre = vietoris_specialization(SIER, "lens_vietoris")
    i0, i01 = carrier.index(0b01), carrier.index(0b11)
    assert pre.leq(i0, i01)  # {0} below {0,1} in the hyperspace order
    for i in range(len(carrier)):
        assert pre.leq(i, i)


def test_check_embedding_examples():
    rep = check_embedding(SIER)
    assert rep.iota_homeomorphism and rep.lens_count == rep.quasi_lens_count == 3
    assert check_embedding(discrete(1)).iota_homeomorphism


def test_embedding_random_sweep():
    rng = random.Random(99)
    for _ in range(30):
        space = random_space(rng, 6)
        rep = check_embedding(space)
        assert rep.iota_homeomorphism
        assert rep.tem_equals_em
        assert rep.tem_equals_vietoris_specialization
        assert rep.all_downsets_closed


def test_closure_implication():
    ok, witness = neighborhood_closure_implication(SIER)
    assert ok and witness is None
    for space in enumerate_spaces(3):
        assert neighborhood_closure_implication(space)[0]
    # the concrete named instance: q = {1}, c = {0,1}
    assert is_quasi_lens(SIER, 0b10, 0b11)
    h = hulls(SIER, 0b10 & 0b11)
    assert is_subset(0b11, h.closure)


def test_is_quasi_lens_rejects():
    assert not is_quasi_lens(SIER, 0b01, 0b01)  # {0} is not open (not saturated)
    assert not is_quasi_lens(SIER, 0b10, 0b10)  # {1} is not closed
    assert not is_quasi_lens(SIER, 0, 0b01)


def test_enumeration_cross_check_runs_inside_lenses():
    # lenses() raises if its two enumerations ever disagree; a run that
    # returns is itself the check
    rng = random.Random(5)
    for _ in range(10):
        lenses(random_space(rng, 5))


def test_quasi_lens_minimal_neighborhood_shortcut_would_agree():
    """The trapping condition checked over all opens equals the check at
    the minimal open around q (the optimization the naive loop replaces)."""
    rng = random.Random(6)
    cases = list(enumerate_spaces(3)) + [random_space(rng, 5) for _ in range(20)]
    for space in cases:
        down = specialization_preorder(space).down()
        for q in space.opens:
            if q == 0:
                continue
            for c in space.closeds():
                if q & c == 0:
                    continue
                naive = all(
                    not is_subset(q, u) or not (c & ~_closure_of(down, u & c))
                    for u in space.opens
                )
                minimal = not (c & ~_closure_of(down, q & c))
                assert naive == minimal


def _closure_of(down_rows, mask):
    out = 0
    for x in points_of(mask):
        out |= down_rows[x]
    return out
