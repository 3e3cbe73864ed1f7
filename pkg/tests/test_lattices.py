"""Lattice and frame machinery: filters, joins, temperance, duality maps,
way-below.  Brute-force subset scans and literal directed-family
enumerations serve as the oracles for the reduced production algorithms.
"""

import random

import pytest

from topolab.bitsets import all_masks, is_subset, points_of
from topolab.catalog import enumerate_spaces, random_poset
from topolab.lattices import (
    NotALattice,
    boolean_lattice,
    chain_lattice,
    diamond_m3,
    downset_lattice,
    filter_join,
    filters_bruteforce,
    filters_of,
    frame_report,
    hofmann_mislove_report,
    is_filter_mask,
    is_scott_open_mask,
    lattice_from_leq,
    lattice_of_opens,
    lattices_isomorphic,
    make_filter,
    pentagon_n5,
    points_space,
    preimage_frame_map,
    stone_round_trip,
    temperance_report,
    waybelow_and_stability,
    waybelow_directed_oracle,
)
from topolab.spaces import (
    InputError,
    discrete,
    indiscrete,
    sierpinski,
    space_homeomorphic,
    specialization_preorder,
)

SIER = sierpinski()
B4 = boolean_lattice(2)
M3 = diamond_m3()


def test_lattice_construction_and_validation():
    ch = chain_lattice(3)
    assert ch.bottom == 0 and ch.top == 2
    assert ch.meet[1][2] == 1 and ch.join[0][1] == 1
    with pytest.raises(InputError):
        lattice_from_leq(2, (0b10, 0b10))  # not reflexive at 0
    with pytest.raises(InputError):
        lattice_from_leq(2, (0b11, 0b11))  # not antisymmetric
    # two incomparable elements with no bounds: not a lattice
    with pytest.raises(NotALattice):
        lattice_from_leq(2, (0b01, 0b10))


def test_lattice_of_opens_shapes():
    lat = lattice_of_opens(SIER)
    assert lat.m == 3 and lat.labels == SIER.opens
    assert lattices_isomorphic(lat, chain_lattice(3))
    assert lattices_isomorphic(lattice_of_opens(discrete(2)), B4)
    assert lattices_isomorphic(lattice_of_opens(indiscrete(3)), chain_lattice(2))


def test_frame_report_fixtures():
    assert frame_report(M3).is_frame is False
    assert frame_report(M3).witness is not None
    assert frame_report(pentagon_n5()).is_frame is False
    rep = frame_report(B4)
    assert rep.is_frame and rep.is_boolean
    for space in enumerate_spaces(3):
        assert frame_report(lattice_of_opens(space)).is_frame


def test_m3_witness_violates_distributivity():
    rep = frame_report(M3)
    u, v, w = rep.witness
    assert M3.meet[u][M3.join[v][w]] != M3.join[M3.meet[u][v]][M3.meet[u][w]]


def test_filters_examples():
    ch = chain_lattice(3)
    members = [f.members for f in filters_of(ch)]
    assert members == [0b100, 0b110, 0b111]
    assert [f.members for f in filters_of(ch, kind="completely_prime")] == [0b100, 0b110]
    improper = filters_of(ch)[-1]
    assert not improper.proper and not improper.completely_prime

    one = chain_lattice(1)
    assert [f.members for f in filters_of(one)] == [0b1]
    assert filters_of(one, kind="completely_prime") == []

    assert len(filters_of(B4)) == 4
    cps = filters_of(B4, kind="completely_prime")
    assert [f.members for f in cps] == sorted([B4.up[1], B4.up[2]])


def test_filters_bruteforce_agreement():
    rng = random.Random(1)
    pool = [chain_lattice(k) for k in (1, 2, 4)] + [B4, M3, pentagon_n5()]
    pool += [downset_lattice(random_poset(rng, 3)) for _ in range(10)]
    for lat in pool:
        assert [f.members for f in filters_of(lat)] == [
            f.members for f in filters_bruteforce(lat)
        ]
        assert [f.members for f in filters_of(lat, kind="scott_open")] == [
            f.members for f in filters_bruteforce(lat, kind="scott_open")
        ]
        assert [f.members for f in filters_of(lat, kind="completely_prime")] == [
            f.members for f in filters_bruteforce(lat, kind="completely_prime")
        ]


def test_scott_open_exhaustive_oracle():
    for lat in (chain_lattice(4), B4, M3):
        for mask in all_masks(lat.m):
            reduced = is_scott_open_mask(lat, mask)
            literal = is_scott_open_mask(lat, mask, exhaustive=True)
            assert reduced == literal


def test_filter_join_laws():
    fa = make_filter(B4, B4.up[1])
    fb = make_filter(B4, B4.up[2])
    assert filter_join(B4, fa, fa).members == fa.members
    top_only = make_filter(B4, 1 << B4.top)
    assert filter_join(B4, top_only, fa).members == fa.members
    joined = filter_join(B4, fa, fb)
    assert joined.members == (1 << B4.m) - 1 and not joined.proper


def test_filter_join_is_least_upper_bound_bruteforce():
    rng = random.Random(3)
    pool = [chain_lattice(3), B4] + [downset_lattice(random_poset(rng, 3)) for _ in range(6)]
    for lat in pool:
        filts = filters_of(lat)
        for f in filts:
            for g in filts:
                j = filter_join(lat, f, g)
                uppers = [
                    h.members
                    for h in filts
                    if is_subset(f.members, h.members) and is_subset(g.members, h.members)
                ]
                least = min(uppers, key=lambda m: m.bit_count())
                assert j.members == least
                assert all(is_subset(j.members, u) for u in uppers)


def test_filter_join_rejects_non_filters():
    fa = make_filter(M3, M3.up[1])
    fb = make_filter(M3, M3.up[2])
    with pytest.raises(InputError):
        filter_join(M3, fa, fb)
    with pytest.raises(InputError):
        make_filter(B4, 0)


def test_temperance_finite_frames_and_m3():
    for space in enumerate_spaces(3):
        rep = temperance_report(lattice_of_opens(space))
        assert rep.locally_temperate and rep.temperate
    rep = temperance_report(M3)
    assert not rep.locally_temperate and "not a frame" in rep.note
    assert temperance_report(chain_lattice(1)) .temperate


def test_temperance_fast_path_matches_literal():
    rng = random.Random(4)
    pool = [lattice_of_opens(s) for s in enumerate_spaces(3)]
    pool += [downset_lattice(random_poset(rng, 4)) for _ in range(10)]
    for lat in pool:
        lit = temperance_report(lat, exhaustive=True)
        fast = temperance_report(lat, exhaustive=False)
        assert (lit.locally_temperate, lit.temperate) == (
            fast.locally_temperate, fast.temperate,
        )


def test_points_space_examples():
    assert space_homeomorphic(points_space(chain_lattice(3)), SIER)
    assert space_homeomorphic(points_space(B4), discrete(2))
    one_pt = points_space(chain_lattice(2))
    assert one_pt.n == 1 and one_pt.opens == (0, 1)
    from topolab.spaces import property_report

    for lat in (chain_lattice(3), B4, lattice_of_opens(discrete(3))):
        assert property_report(points_space(lat)).sober


def test_stone_round_trip():
    rep = stone_round_trip(SIER)
    assert rep.unit_injective and rep.unit_surjective and rep.unit_open_map
    assert rep.spatial
    bad = stone_round_trip(indiscrete(2))
    assert not bad.unit_injective and bad.spatial
    assert "unit_collision" in bad.witnesses
    for space in enumerate_spaces(3):
        t0 = specialization_preorder(space).is_partial_order()
        rep = stone_round_trip(space)
        homeo = rep.unit_injective and rep.unit_surjective and rep.unit_open_map
        assert homeo == t0
        assert rep.spatial


def test_hofmann_mislove_examples():
    assert len(filters_of(lattice_of_opens(SIER), kind="scott_open")) == 3
    assert hofmann_mislove_report(SIER).hm_bijection
    assert len(filters_of(lattice_of_opens(discrete(2)), kind="scott_open")) == 4
    assert hofmann_mislove_report(discrete(2)).hm_bijection
    one = discrete(1)
    assert len(filters_of(lattice_of_opens(one), kind="scott_open")) == 2
    assert hofmann_mislove_report(one).hm_bijection
    assert hofmann_mislove_report(one, include_empty=False).hm_bijection


def test_hofmann_mislove_order_reversal_explicit():
    lat = lattice_of_opens(SIER)
    filts = filters_of(lat, kind="scott_open")
    inters = []
    for f in filts:
        inter = SIER.full
        for i in points_of(f.members):
            inter &= SIER.opens[i]
        inters.append(inter)
    for f, qf in zip(filts, inters):
        for g, qg in zip(filts, inters):
            assert is_subset(f.members, g.members) == is_subset(qg, qf)


def test_waybelow_and_stability():
    for lat in (chain_lattice(3), B4, M3, pentagon_n5()):
        rep = waybelow_and_stability(lat)
        assert rep.waybelow == lat.up
        assert rep.continuous and rep.stable
    rep = waybelow_and_stability(B4)
    assert rep.locally_temperate is True
    assert waybelow_and_stability(M3).locally_temperate is None


def test_waybelow_directed_oracle_full_and_capped():
    rng = random.Random(8)
    pool = [chain_lattice(4), B4, M3] + [
        downset_lattice(random_poset(rng, 3)) for _ in range(8)
    ]
    for lat in pool:
        production = waybelow_and_stability(lat).waybelow
        assert waybelow_directed_oracle(lat) == production
        assert waybelow_directed_oracle(lat, max_family=2) == production


def test_boolean_algebras_locally_temperate():
    for k in range(5):
        lat = boolean_lattice(k)
        assert frame_report(lat).is_boolean
        rep = temperance_report(lat)
        assert rep.locally_temperate and rep.temperate


def test_downset_lattices_are_distributive():
    rng = random.Random(9)
    for _ in range(15):
        lat = downset_lattice(random_poset(rng, 4))
        assert frame_report(lat).is_frame


def test_preimage_frame_map():
    # collapsing the Sierpinski space onto a point is continuous
    target = discrete(1)
    pre = preimage_frame_map([0, 0], SIER, target)
    assert pre == (0, 0b11)
    # mapping the discrete pair onto Sierpinski point 0 and 1 is continuous
    pre2 = preimage_frame_map([0, 1], discrete(2), SIER)
    assert pre2 == (0, 0b10, 0b11)
    with pytest.raises(InputError):
        preimage_frame_map([1, 0], SIER, SIER)  # swaps the order: not continuous


def test_is_filter_mask_rejects():
    assert not is_filter_mask(B4, 0)
    assert not is_filter_mask(B4, 1 << B4.bottom)  # not up-closed
    assert is_filter_mask(B4, B4.up[B4.bottom])
