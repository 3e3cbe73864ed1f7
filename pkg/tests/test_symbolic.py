"""Symbolic backends: the exact set algebra, per-space hull operators, the
quasi-lens classification, the counterexample battery and certificate
checking.  Algebra laws run under hypothesis; a windowed concrete-set
model is the oracle for the cofinite representation.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topolab.spaces import InputError
from topolab.symbolic import (
    EMPTY,
    NAT,
    AlexNatOmega,
    Certificate,
    CofinSet,
    ExtSet,
    ScottNatAB,
    builtin_certificates,
    certificate_check,
    cn_counterexample_suite,
    cn_em_leq,
    cn_image_of_iota,
    cn_iota,
    cn_quasi_lens,
    cn_quasi_lens_detail,
    cn_tem_leq,
    cofin_algebra,
    cofinite_space_ops,
)

WINDOW = 12  # supports stay below this, so membership up to it decides equality

cofinsets = st.builds(
    CofinSet,
    tag=st.sampled_from(["finite", "cofinite"]),
    support=st.frozensets(st.integers(0, WINDOW - 1), max_size=6),
)


def window_model(a):
    """Concrete extension of a over 0..WINDOW (one point past every support
    value stands in for the infinite tail)."""
    return frozenset(x for x in range(WINDOW + 1) if a.contains(x))


@given(cofinsets, cofinsets)
def test_union_intersection_against_model(a, b):
    assert window_model(a.union(b)) == window_model(a) | window_model(b)
    assert window_model(a.intersection(b)) == window_model(a) & window_model(b)


@given(cofinsets)
def test_complement_involution(a):
    assert a.complement().complement() == a
    assert window_model(a.complement()) == frozenset(range(WINDOW + 1)) - window_model(a)


@given(cofinsets, cofinsets)
def test_de_morgan(a, b):
    assert a.union(b).complement() == a.complement().intersection(b.complement())


@given(cofinsets, cofinsets)
def test_subset_via_model(a, b):
    assert a.subset_of(b) == (window_model(a) <= window_model(b))


@given(cofinsets, cofinsets, cofinsets)
def test_distributivity(a, b, c):
    assert a.intersection(b.union(c)) == a.intersection(b).union(a.intersection(c))


def test_algebra_examples():
    assert cofin_algebra(CofinSet.finite([0, 1]), op="complement") == CofinSet.cofinite([0, 1])
    assert cofin_algebra(CofinSet.cofinite([1]), CofinSet.finite([1]), "union") == NAT
    assert cofin_algebra(CofinSet.finite([2, 3]), CofinSet.cofinite([0]), "subset") is True
    assert cofin_algebra(CofinSet.finite([2]), op="is_finite") is True
    with pytest.raises(InputError):
        cofin_algebra(NAT, None, "union")
    with pytest.raises(InputError):
        cofin_algebra(NAT, NAT, "xor")
    with pytest.raises(InputError):
        CofinSet("other", frozenset())


def test_space_ops_examples():
    rep = cofinite_space_ops(CofinSet.cofinite([0]))
    assert rep.is_open and not rep.is_closed and rep.closure == NAT
    rep5 = cofinite_space_ops(CofinSet.finite([5]))
    assert rep5.is_closed and rep5.closure == CofinSet.finite([5])
    assert cofinite_space_ops(NAT).is_compact_saturated
    assert cofinite_space_ops(EMPTY).is_open and cofinite_space_ops(EMPTY).is_closed


def test_cofinite_compactness_both_methods():
    from topolab.symbolic import CofiniteNat

    for a in (NAT, EMPTY, CofinSet.finite([3]), CofinSet.cofinite([0, 4])):
        assert CofiniteNat.is_compact(a, "open-cover")
        assert CofiniteNat.is_compact(a, "filtered-closed")
    with pytest.raises(InputError):
        CofiniteNat.is_compact(NAT, "nope")


def test_quasi_lens_examples():
    assert cn_quasi_lens(CofinSet.finite([0]), CofinSet.finite([0]))
    assert cn_quasi_lens(CofinSet.finite([0]), NAT)
    assert not cn_image_of_iota(CofinSet.finite([0]), NAT)
    assert not cn_quasi_lens(CofinSet.cofinite([0]), CofinSet.finite([1, 2]))
    ok, reason = cn_quasi_lens_detail(CofinSet.finite([1]), CofinSet.cofinite([3]))
    assert not ok and "closed" in reason


def test_iota_examples():
    assert cn_iota(CofinSet.finite([3, 4])) == (CofinSet.finite([3, 4]), CofinSet.finite([3, 4]))
    assert cn_iota(CofinSet.cofinite([0])) == (CofinSet.cofinite([0]), NAT)
    with pytest.raises(InputError):
        cn_iota(EMPTY)
    assert cn_image_of_iota(CofinSet.cofinite([5]), NAT)
    assert cn_image_of_iota(CofinSet.finite([1]), CofinSet.finite([1]))


def test_tem_and_em_witness():
    lens = CofinSet.cofinite([0])
    assert cn_tem_leq(NAT, lens) and not cn_em_leq(NAT, lens)
    assert cn_tem_leq(lens, lens) and cn_em_leq(lens, lens)
    a, b = CofinSet.finite([1]), CofinSet.finite([1, 2])
    assert not cn_tem_leq(b, a)  # unequal finite lenses are incomparable
    assert cn_tem_leq(CofinSet.cofinite([5]), NAT) is False  # N not inside the smaller


def test_counterexample_suite_all_pass():
    rep = cn_counterexample_suite()
    assert set(rep) == {
        "non_sober",
        "non_weakly_hausdorff",
        "closure_exceeds_downset",
        "tem_differs_from_em",
        "iota_not_surjective",
    }
    assert all(entry["pass"] for entry in rep.values())


def test_builtin_certificates_verify():
    for cert in builtin_certificates():
        assert certificate_check(cert.space, cert)


def test_certificate_rejections():
    with pytest.raises(InputError):
        certificate_check("nowhere", builtin_certificates()[0])
    cert = Certificate(kind="non_sober_irreducible", space="scott_nat_ab", payload={})
    with pytest.raises(InputError):
        certificate_check("scott_nat_ab", cert)
    with pytest.raises(InputError):
        certificate_check(
            "cofinite_nat",
            Certificate(kind="bogus", space="cofinite_nat", payload={}),
        )


def test_certificate_unsound_witnesses_fail():
    # equal points cannot witness the trapping failure
    assert not certificate_check(
        "cofinite_nat",
        Certificate("non_weakly_hausdorff_pair", "cofinite_nat",
                    {"x": 3, "y": 3, "w": EMPTY}),
    )
    # a cofinite target w admits the trap
    assert not certificate_check(
        "cofinite_nat",
        Certificate("non_weakly_hausdorff_pair", "cofinite_nat",
                    {"x": 0, "y": 1, "w": CofinSet.cofinite([0, 1])}),
    )
    # a finite set is not an irreducible-closed non-sobriety witness
    assert not certificate_check(
        "cofinite_nat",
        Certificate("non_sober_irreducible", "cofinite_nat",
                    {"irreducible_closed": CofinSet.finite([1]), "sampled_points": [1]}),
    )
    # finite chains have their supremum inside, so the open hits a member
    assert not certificate_check(
        "alex_nat_omega",
        Certificate("non_monotone_convergence_directed", "alex_nat_omega",
                    {"chain": ExtSet.make(nat=CofinSet.finite([0, 1])),
                     "open": ExtSet.make(nat=CofinSet.cofinite([0]), extras=("omega",))}),
    )
    # a cover set containing the bottom points has non-open singletons
    assert not certificate_check(
        "scott_nat_ab",
        Certificate("non_compact_singleton_cover", "scott_nat_ab",
                    {"target": ExtSet.make(nat=NAT),
                     "cover_of": ExtSet.make(nat=NAT, extras=("a",))}),
    )
    # a finite target is compact, whatever the cover
    assert not certificate_check(
        "scott_nat_ab",
        Certificate("non_compact_singleton_cover", "scott_nat_ab",
                    {"target": ExtSet.make(nat=CofinSet.finite([1, 2])),
                     "cover_of": ExtSet.make(nat=NAT)}),
    )


def test_scott_nat_ab_structure():
    assert ScottNatAB.double_upset_of_bottoms() == ExtSet.make(nat=NAT)
    assert ScottNatAB.is_open(ExtSet.make(nat=CofinSet.finite([2, 7])))
    assert not ScottNatAB.is_open(ExtSet.make(extras=("a",)))
    assert ScottNatAB.is_open(ExtSet.make(nat=NAT, extras=("a",)))
    assert ScottNatAB.is_closed(ExtSet.make(extras=("a", "b")))
    assert ScottNatAB.specialization_leq("a", 3)
    assert not ScottNatAB.specialization_leq(3, "a")
    assert not ScottNatAB.specialization_leq("a", "b")
    with pytest.raises(InputError):
        ScottNatAB.is_open(ExtSet.make(extras=("omega",)))


def test_alex_nat_omega_structure():
    up3 = AlexNatOmega.upset(ExtSet.make(nat=CofinSet.finite([3])))
    assert up3 == ExtSet.make(nat=CofinSet.cofinite([0, 1, 2]), extras=("omega",))
    assert AlexNatOmega.is_open(up3)
    assert AlexNatOmega.is_open(ExtSet.make(extras=("omega",)))
    assert not AlexNatOmega.is_open(ExtSet.make(nat=CofinSet.finite([3])))
    assert AlexNatOmega.is_closed(ExtSet.make(nat=NAT))
    assert AlexNatOmega.closure(ExtSet.make(nat=CofinSet.finite([2]))) == ExtSet.make(
        nat=CofinSet.finite([0, 1, 2])
    )
    assert AlexNatOmega.chain_sup(ExtSet.make(nat=NAT)) == "omega"
    assert AlexNatOmega.chain_sup(ExtSet.make(nat=CofinSet.finite([4, 9]))) == 9


extsets_ab = st.builds(
    ExtSet,
    nat=cofinsets,
    extras=st.frozensets(st.sampled_from(["a", "b"]), max_size=2),
)
extsets_omega = st.builds(
    ExtSet,
    nat=cofinsets,
    extras=st.frozensets(st.sampled_from(["omega"]), max_size=1),
)


@given(extsets_ab)
def test_ab_hull_laws(s):
    up = ScottNatAB.upset(s)
    cl = ScottNatAB.closure(s)
    assert s.subset_of(up) and ScottNatAB.upset(up) == up
    assert s.subset_of(cl) and ScottNatAB.closure(cl) == cl
    assert ScottNatAB.is_open(up) and ScottNatAB.is_closed(cl)


@given(extsets_omega)
def test_omega_hull_laws(s):
    up = AlexNatOmega.upset(s)
    cl = AlexNatOmega.closure(s)
    assert s.subset_of(up) and AlexNatOmega.upset(up) == up
    assert s.subset_of(cl) and AlexNatOmega.closure(cl) == cl
    assert AlexNatOmega.is_open(up) and AlexNatOmega.is_closed(cl)


@given(extsets_ab, extsets_ab)
def test_ab_hulls_monotone(s, t):
    if s.subset_of(t):
        assert ScottNatAB.upset(s).subset_of(ScottNatAB.upset(t))
        assert ScottNatAB.closure(s).subset_of(ScottNatAB.closure(t))


def test_classification_never_disagrees_on_small_supports():
    from itertools import combinations

    universe = range(5)
    sets = []
    for size in range(6):
        for comb in combinations(universe, size):
            sets.append(CofinSet.finite(comb))
            sets.append(CofinSet.cofinite(comb))
    for q in sets:
        for c in sets:
            cn_quasi_lens(q, c)  # raises OracleMismatch on any disagreement
