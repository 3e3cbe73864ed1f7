"""Sweep driver: exhaustive and seeded random instance populations pushed
through every checker battery, with replayable witnesses on failure.

Populations are built once per run: every preorder on up to max_points
points (via their up-set topologies), sample_count random spaces on 6..8
points, and sample_count // 5 random spaces on 6 points for the heavier
hyperspace and duality batteries.  All randomness is derived from the
seed, so reports are byte-identical across runs for a fixed config.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import catalog, lattices, lenses, spaces, symbolic
from .bitsets import points_of
from .iojson import REPORT_SCHEMA, space_to_json

SUITE_NAMES = (
    "lss_equivalence",
    "dual_oracles",
    "hofmann_mislove",
    "stone_duality",
    "opens_temperance",
    "powerdomain",
    "waybelow_stability",
    "counterexamples",
)

EXHAUSTIVE_DEFAULT = 4
EXHAUSTIVE_OPT_IN = 5


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    max_points: int = EXHAUSTIVE_DEFAULT
    sample_count: int = 1000
    suites: tuple = SUITE_NAMES

    def __post_init__(self):
        if not 0 <= self.max_points <= EXHAUSTIVE_OPT_IN:
            raise spaces.InputError(
                f"exhaustive sweeps are capped at {EXHAUSTIVE_OPT_IN} points"
            )
        unknown = set(self.suites) - set(SUITE_NAMES)
        if unknown:
            raise spaces.InputError(f"unknown suites: {sorted(unknown)}")


@dataclass
class SuiteRecord:
    instances: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok, witness):
        self.checks += 1
        if not ok:
            self.failures.append(witness)

    def as_dict(self):
        return {
            "instances": self.instances,
            "checks": self.checks,
            "failures": self.failures,
        }


def _witness(space, check, **detail):
    return {"check": check, "space": space_to_json(space), **detail}


def build_populations(config):
    """The shared instance pools, all derived deterministically from the seed."""
    exhaustive = []
    per_size = {}
    poset_counts = {}
    for n in range(1, config.max_points + 1):
        batch = list(catalog.enumerate_preorders(n))
        per_size[str(n)] = len(batch)
        poset_counts[str(n)] = sum(1 for p in batch if p.is_partial_order())
        exhaustive.extend(spaces.alexandroff_space(p) for p in batch)

    rng_large = random.Random(f"{config.seed}:large")
    random_large = [
        catalog.random_space(rng_large, 6 + i % 3)
        for i in range(config.sample_count)
    ]
    rng_small = random.Random(f"{config.seed}:small")
    random_small = [
        catalog.random_space(rng_small, 6)
        for i in range(max(1, config.sample_count // 5))
    ]
    counts = {
        "exhaustive_preorders": per_size,
        "exhaustive_posets": poset_counts,
        "random_large": len(random_large),
        "random_small": len(random_small),
    }
    return exhaustive, random_large, random_small, counts


def suite_lss_equivalence(exhaustive, random_large, **_):
    """Every consistency law over the full flag record, on every instance.

    This covers the three-way equivalence of local strong sobriety with the
    two conjunction forms, weak Hausdorffness of every finite space, the
    sober/coherent upgrade implications, and the stably-locally-compact
    characterizations.
    """
    rec = SuiteRecord()
    for space in exhaustive + random_large:
        rec.instances += 1
        props = spaces.property_report(space)
        bad = spaces.property_violations(props)
        rec.checks += len(spaces.CONSISTENCY_LAWS)
        for name in bad:
            rec.failures.append(_witness(space, "consistency:" + name,
                                         flags=props.flags()))
    return rec


def suite_dual_oracles(exhaustive, random_large, rng=None, **_):
    """Algorithm pairs that must agree instance by instance.

    Weak Hausdorffness by point pairs against compact-saturated pairs,
    compactness by cover extraction against filtered closed families (on
    the full set, the singletons, opens and closeds for small spaces, and
    seeded random subsets), ultrafilter limits by definition against the
    closure-intersection formula, and the preorder/topology round trip.
    """
    rec = SuiteRecord()
    rng = rng or random.Random(0)
    for space in exhaustive + random_large:
        rec.instances += 1
        wh_pts, _w1 = spaces.weakly_hausdorff_pointwise(space)
        wh_sat, _w2 = spaces.weakly_hausdorff_compact_saturated(space)
        rec.check(
            wh_sat is None or wh_pts == wh_sat,
            _witness(space, "weak_hausdorff_oracles", pointwise=wh_pts, saturated=wh_sat),
        )

        subsets = [space.full] + [1 << x for x in range(space.n)]
        if space.n <= 4:
            subsets += list(space.opens) + list(space.closeds())
        subsets += [rng.randrange(0, space.full + 1) for _ in range(5)]
        for a in subsets:
            cover = spaces.is_compact(space, a, method="open-cover")
            filtered = spaces.is_compact(space, a, method="filtered-closed")
            rec.check(
                cover == filtered,
                _witness(space, "compactness_oracles", subset=points_of(a)),
            )

        for x in range(space.n):
            try:
                spaces.ultrafilter_limits(space, spaces.PrincipalUltrafilter(x))
                rec.check(True, None)
            except spaces.OracleMismatch as exc:
                rec.check(False, _witness(space, "limit_oracles", point=x, error=str(exc)))

        p = spaces.specialization_preorder(space)
        rec.check(
            spaces.alexandroff_space(p).opens == space.opens,
            _witness(space, "alexandroff_round_trip"),
        )
    return rec


def suite_hofmann_mislove(exhaustive, random_small, **_):
    """The filter/compact-saturated correspondence is a mutually inverse,
    inclusion-reversing bijection on every instance, with and without the
    empty end."""
    rec = SuiteRecord()
    for space in exhaustive + random_small:
        rec.instances += 1
        rep = lattices.hofmann_mislove_report(space)
        rec.check(rep.hm_bijection,
                  _witness(space, "hm_bijection", witnesses=str(rep.witnesses)))
        if space.n <= 4:
            proper = lattices.hofmann_mislove_report(space, include_empty=False)
            rec.check(proper.hm_bijection,
                      _witness(space, "hm_bijection_proper", witnesses=str(proper.witnesses)))
    return rec


def suite_stone_duality(exhaustive, random_small, **_):
    """Unit and counit facts: the unit is a homeomorphism exactly on the
    T0 instances, injectivity fails exactly off T0, every opens-lattice is
    spatial, and the two pinned point-space identifications hold."""
    rec = SuiteRecord()
    for space in exhaustive + random_small:
        rec.instances += 1
        p = spaces.specialization_preorder(space)
        t0 = p.is_partial_order()
        rep = lattices.stone_round_trip(space)
        homeo = rep.unit_injective and rep.unit_surjective and rep.unit_open_map
        rec.check(homeo == t0, _witness(space, "unit_homeomorphism_iff_t0", t0=t0))
        rec.check(rep.unit_injective == t0,
                  _witness(space, "unit_injective_iff_t0", t0=t0))
        rec.check(rep.spatial, _witness(space, "opens_lattice_spatial"))

    pinned = [
        ("points_of_3_chain", lattices.chain_lattice(3), spaces.sierpinski()),
        ("points_of_boolean_4", lattices.boolean_lattice(2), spaces.discrete(2)),
    ]
    for name, lat, expected in pinned:
        rec.instances += 1
        got = lattices.points_space(lat)
        rec.check(
            spaces.space_homeomorphic(got, expected),
            {"check": name, "got": space_to_json(got), "expected": space_to_json(expected)},
        )
    return rec


def suite_opens_temperance(exhaustive, random_small, **_):
    """On sober (here: T0) instances, local temperance of the opens-lattice,
    weak Hausdorffness with coherence, and local strong sobriety are one
    three-way biconditional, and all three conjuncts hold."""
    rec = SuiteRecord()
    for space in exhaustive + random_small:
        p = spaces.specialization_preorder(space)
        if not p.is_partial_order():
            continue
        rec.instances += 1
        props = spaces.property_report(space)
        lt = lattices.temperance_report(lattices.lattice_of_opens(space)).locally_temperate
        wh_coh = props.weakly_hausdorff and props.coherent
        lss = props.locally_strongly_sober
        rec.check(
            lt == wh_coh == lss and lt,
            _witness(space, "temperance_biconditional",
                     locally_temperate=lt, wh_and_coherent=wh_coh, lss=lss),
        )
    return rec


def suite_powerdomain(exhaustive, random_small, **_):
    """Hyperspace battery: both lens enumerations, the embedding and its
    round trips, exact subbasis transport, the order comparisons against
    the hyperspace specialization, closed downsets, and the neighborhood
    closure implication."""
    rec = SuiteRecord()
    for space in exhaustive + random_small:
        rec.instances += 1
        try:
            emb = lenses.check_embedding(space)
        except spaces.OracleMismatch as exc:
            rec.check(False, _witness(space, "embedding_internal", error=str(exc)))
            continue
        rec.check(emb.iota_homeomorphism,
                  _witness(space, "iota_homeomorphism", witnesses=str(emb.witnesses)))
        rec.check(emb.tem_equals_em, _witness(space, "tem_equals_em"))
        rec.check(emb.tem_equals_vietoris_specialization,
                  _witness(space, "tem_equals_vietoris_specialization"))
        rec.check(emb.all_downsets_closed, _witness(space, "lens_downsets_closed"))
        ok, pair = lenses.neighborhood_closure_implication(space)
        rec.check(ok, _witness(space, "neighborhood_closure_implication",
                               pair=None if pair is None else [points_of(pair[0]), points_of(pair[1])]))
    return rec


def _random_distributive_lattices(rng, count, max_elements=12):
    out = []
    while len(out) < count:
        p = catalog.random_poset(rng, rng.randrange(1, 5))
        masks = catalog.downsets_as_masks(p)
        if len(masks) <= max_elements:
            out.append(lattices.downset_lattice(p))
    return out


def suite_waybelow_stability(exhaustive, rng=None, **_):
    """Way-below, continuity, stability and their temperance cross-check on
    the opens-lattices of the sweep, 100 random distributive lattices and
    the small Boolean algebras; way-below is also replayed against the
    literal directed-family oracle."""
    rec = SuiteRecord()
    rng = rng or random.Random(0)
    pool = [("opens", lattices.lattice_of_opens(s)) for s in exhaustive]
    pool += [("distributive", lat) for lat in _random_distributive_lattices(rng, 100)]
    booleans = [lattices.boolean_lattice(k) for k in range(5)]
    pool += [("boolean", lat) for lat in booleans]
    for tag, lat in pool:
        rec.instances += 1
        try:
            rep = lattices.waybelow_and_stability(lat)
        except spaces.OracleMismatch as exc:
            rec.check(False, {"check": "waybelow_internal", "kind": tag, "error": str(exc)})
            continue
        rec.check(rep.continuous, {"check": "continuous", "kind": tag, "m": lat.m})
        rec.check(rep.stable, {"check": "stable", "kind": tag, "m": lat.m})
        rec.check(
            rep.locally_temperate is None or rep.locally_temperate == rep.stable,
            {"check": "stable_iff_locally_temperate", "kind": tag, "m": lat.m},
        )
        oracle = lattices.waybelow_directed_oracle(
            lat, max_family=None if lat.m <= 12 else 2
        )
        rec.check(oracle == rep.waybelow,
                  {"check": "waybelow_directed_oracle", "kind": tag, "m": lat.m})
    for lat in booleans:
        rec.check(
            lattices.temperance_report(lat).locally_temperate,
            {"check": "boolean_locally_temperate", "m": lat.m},
        )
    return rec


def suite_counterexamples(rng=None, **_):
    """The symbolic backends reproduce every negative claim: the cofinite
    battery, the shipped certificates, the quasi-lens classification on all
    small-support pairs plus seeded ones, hull-operator laws, and the
    declared-order check for the two-bottoms dcpo."""
    rec = SuiteRecord()
    rng = rng or random.Random(0)
    rec.instances += 1
    for name, entry in symbolic.cn_counterexample_suite().items():
        rec.check(entry["pass"], {"check": "cofinite:" + name, "witness": entry["witness"]})

    for cert in symbolic.builtin_certificates():
        rec.check(
            symbolic.certificate_check(cert.space, cert),
            {"check": "certificate", "kind": cert.kind, "space": cert.space},
        )

    universe = list(range(7))
    from itertools import combinations

    small = []
    for size in range(len(universe) + 1):
        for comb in combinations(universe, size):
            small.append(symbolic.CofinSet.finite(comb))
            small.append(symbolic.CofinSet.cofinite(comb))
    agreement = 0
    for q in small:
        for c in small:
            try:
                symbolic.cn_quasi_lens(q, c)
                agreement += 1
            except spaces.OracleMismatch as exc:
                rec.check(False, {"check": "quasi_lens_classification",
                                  "q": str(q), "c": str(c), "error": str(exc)})
    rec.check(agreement > 0, {"check": "quasi_lens_classification_ran"})
    for _i in range(200):
        q = symbolic.random_cofinset(rng, max_support=40)
        c = symbolic.random_cofinset(rng, max_support=40)
        try:
            symbolic.cn_quasi_lens(q, c)
            rec.check(True, None)
        except spaces.OracleMismatch as exc:
            rec.check(False, {"check": "quasi_lens_classification_random",
                              "q": str(q), "c": str(c), "error": str(exc)})

    backends = (
        (symbolic.CofiniteNat, None),
        (symbolic.ScottNatAB, symbolic.ScottNatAB.SPECIALS),
        (symbolic.AlexNatOmega, symbolic.AlexNatOmega.SPECIALS),
    )
    for backend, specials in backends:
        ok = True
        for _i in range(500):
            if specials is None:
                s = symbolic.random_cofinset(rng)
                t = symbolic.random_cofinset(rng)
                sets = {"up": backend.upset(s), "cl": backend.closure(s)}
                ok &= sets["up"] == s  # the cofinite space is T1
                ok &= s.subset_of(sets["up"]) and s.subset_of(sets["cl"])
                ok &= backend.upset(sets["up"]) == sets["up"]
                ok &= backend.closure(sets["cl"]) == sets["cl"]
                ok &= backend.is_compact(s, "open-cover") == backend.is_compact(
                    s, "filtered-closed"
                )
                if s.subset_of(t):
                    ok &= backend.upset(s).subset_of(backend.upset(t))
                    ok &= backend.closure(s).subset_of(backend.closure(t))
            else:
                s = symbolic.random_extset(rng, specials)
                t = symbolic.random_extset(rng, specials)
                up, cl = backend.upset(s), backend.closure(s)
                ok &= s.subset_of(up) and s.subset_of(cl)
                ok &= backend.upset(up) == up and backend.closure(cl) == cl
                if s.subset_of(t):
                    ok &= backend.upset(s).subset_of(backend.upset(t))
                    ok &= backend.closure(s).subset_of(backend.closure(t))
        rec.check(ok, {"check": "hull_laws", "space": backend.space_id})

    declared = symbolic.ScottNatAB.leq
    sampled = ["a", "b", 0, 1, 5, 17]
    order_ok = all(
        declared(x, y) == symbolic.ScottNatAB.specialization_leq(x, y)
        for x in sampled for y in sampled
    )
    rec.check(order_ok, {"check": "scott_nat_ab_specialization_matches_order"})
    rec.check(
        symbolic.ScottNatAB.double_upset_of_bottoms() == symbolic.ExtSet.make(nat=symbolic.NAT),
        {"check": "upset_intersection_is_naturals"},
    )
    rec.check(
        symbolic.cn_quasi_lens(symbolic.CofinSet.finite([0]), symbolic.NAT)
        and not symbolic.cn_image_of_iota(symbolic.CofinSet.finite([0]), symbolic.NAT),
        {"check": "iota_not_surjective"},
    )
    return rec


SUITE_FUNCTIONS = {
    "lss_equivalence": suite_lss_equivalence,
    "dual_oracles": suite_dual_oracles,
    "hofmann_mislove": suite_hofmann_mislove,
    "stone_duality": suite_stone_duality,
    "opens_temperance": suite_opens_temperance,
    "powerdomain": suite_powerdomain,
    "waybelow_stability": suite_waybelow_stability,
    "counterexamples": suite_counterexamples,
}


def run_suite(config):
    """Run the configured suites over shared populations; returns the report
    dict (deterministic for a fixed config, no timestamps)."""
    exhaustive, random_large, random_small, counts = build_populations(config)
    suites_out = {}
    failures_total = 0
    for name in SUITE_NAMES:
        if name not in config.suites:
            continue
        rng = random.Random(f"{config.seed}:{name}")
        rec = SUITE_FUNCTIONS[name](
            exhaustive=exhaustive,
            random_large=random_large,
            random_small=random_small,
            rng=rng,
        )
        rec.failures = [f for f in rec.failures if f is not None]
        suites_out[name] = rec.as_dict()
        failures_total += len(rec.failures)
    return {
        "schema": REPORT_SCHEMA,
        "command": "suite",
        "config": {
            "seed": config.seed,
            "max_points": config.max_points,
            "sample_count": config.sample_count,
            "suites": sorted(config.suites),
        },
        "populations": counts,
        "suites": suites_out,
        "failures_total": failures_total,
    }
