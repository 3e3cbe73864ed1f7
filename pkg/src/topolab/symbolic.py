"""Effective backends for the infinite counterexample spaces.

Three spaces get exact symbolic representations: the naturals with the
cofinite topology, the flat dcpo with two bottoms a and b, and the chain
of naturals plus a top point in its up-set (not Scott) topology.  Sets are
finite-or-cofinite over the naturals, possibly extended with the special
points, so the set algebra is exact and the per-space hull operators are
decidable.  Global negative properties that would quantify over all opens
are established by checking machine-verifiable certificates instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .spaces import InputError, OracleMismatch


@dataclass(frozen=True)
class CofinSet:
    """Finite or cofinite subset of the naturals, canonical by tag.

    support is the set itself when finite, the complement when cofinite.
    """

    tag: str
    support: frozenset

    def __post_init__(self):
        if self.tag not in ("finite", "cofinite"):
            raise InputError(f"bad tag {self.tag!r}")
        if not all(isinstance(x, int) and x >= 0 for x in self.support):
            raise InputError("support must hold naturals")

    @classmethod
    def finite(cls, items=()):
        return cls("finite", frozenset(items))

    @classmethod
    def cofinite(cls, excluded=()):
        return cls("cofinite", frozenset(excluded))

    @property
    def is_finite(self):
        return self.tag == "finite"

    @property
    def is_empty(self):
        return self.is_finite and not self.support

    @property
    def is_all(self):
        return self.tag == "cofinite" and not self.support

    def contains(self, x):
        return (x in self.support) == self.is_finite

    def complement(self):
        return CofinSet("cofinite" if self.is_finite else "finite", self.support)

    def union(self, other):
        if self.is_finite and other.is_finite:
            return CofinSet.finite(self.support | other.support)
        if self.is_finite:
            return CofinSet.cofinite(other.support - self.support)
        if other.is_finite:
            return CofinSet.cofinite(self.support - other.support)
        return CofinSet.cofinite(self.support & other.support)

    def intersection(self, other):
        return self.complement().union(other.complement()).complement()

    def minus(self, other):
        return self.intersection(other.complement())

    def subset_of(self, other):
        return self.minus(other).is_empty

    def sample(self, count=3):
        """A few members, smallest first (for witness output)."""
        if self.is_finite:
            return sorted(self.support)[:count]
        out = []
        x = 0
        while len(out) < count:
            if x not in self.support:
                out.append(x)
            x += 1
        return out

    def least(self):
        if self.is_empty:
            raise InputError("empty set has no least member")
        return self.sample(1)[0]


NAT = CofinSet.cofinite()
EMPTY = CofinSet.finite()


def cofin_algebra(a, b=None, op="union"):
    """Dispatcher over the set algebra (the wire-level entry point)."""
    binary = {"union", "intersection", "subset"}
    if op in binary and not isinstance(b, CofinSet):
        raise InputError(f"{op} needs two sets")
    if op == "union":
        return a.union(b)
    if op == "intersection":
        return a.intersection(b)
    if op == "complement":
        return a.complement()
    if op == "subset":
        return a.subset_of(b)
    if op == "is_finite":
        return a.is_finite
    raise InputError(f"unknown set operation {op!r}")


@dataclass(frozen=True)
class SpaceSetReport:
    is_open: bool
    is_closed: bool
    is_compact_saturated: bool
    closure: CofinSet


class CofiniteNat:
    """The naturals with the cofinite topology: T1, Noetherian, coherent."""

    space_id = "cofinite_nat"
    capabilities = {
        "compactness": "decidable",
        "sobriety": "certificate",
        "weak_hausdorffness": "certificate",
        "monotone_convergence": "decidable",
    }

    @staticmethod
    def is_open(a):
        return a.is_empty or a.tag == "cofinite"

    @staticmethod
    def is_closed(a):
        return a.is_finite or a.is_all

    @staticmethod
    def closure(a):
        return a if a.is_finite else NAT

    @staticmethod
    def upset(a):
        return a  # T1: specialization is equality

    @staticmethod
    def downset(a):
        return a

    @staticmethod
    def is_compact(a, method="open-cover"):
        """Every representable set is compact; the two methods mirror the
        finite-space interface.

        open-cover: any cover contains a member around some point of a;
        a non-empty open is cofinite, so it covers all but finitely many
        points of a and finitely many more members absorb the leftovers.

        filtered-closed: closed sets are finite (or everything), and a
        filtered family of finite sets contains a least member (one of
        minimal cardinality bounds every other below itself), so an empty
        trace already happens at a single member.
        """
        if method not in ("open-cover", "filtered-closed"):
            raise InputError(f"unknown compactness method {method!r}")
        return True


def cofinite_space_ops(a):
    """Open/closed/compact flags and the closure of a representable set."""
    backend = CofiniteNat
    return SpaceSetReport(
        is_open=backend.is_open(a),
        is_closed=backend.is_closed(a),
        is_compact_saturated=backend.is_compact(a) and backend.upset(a) == a,
        closure=backend.closure(a),
    )


def _cn_quasi_lens_conditions(q, c):
    """The three quasi-lens conditions over the cofinite naturals, decided
    through the finite-or-cofinite structure.

    The trapping condition (closure of U & c covers c for every open U
    around q) collapses exactly: for finite c the intersection of all
    cofinite opens around a non-empty q is q itself, so it reads c <= q;
    for infinite closed c (the whole space) any non-empty open around q
    meets it in an infinite, hence dense, set.
    """
    if not CofiniteNat.is_closed(c):
        return False, "c is not closed"
    if q.intersection(c).is_empty:
        return False, "q does not meet c"
    if not q.subset_of(q.intersection(c)):  # upset(q & c) = q & c here
        return False, "q escapes the upward closure of q & c"
    if c.is_finite:
        if not c.subset_of(q):
            return False, "a cofinite open around q loses part of c"
    else:
        if q.is_empty:
            return False, "the empty open around q has empty trace"
    return True, ""


def cn_quasi_lens(q, c):
    """Quasi-lens test over the cofinite naturals, cross-checked against the
    closed-form classification: q = c finite non-empty, or q non-empty with
    c the whole space."""
    decided, _ = _cn_quasi_lens_conditions(q, c)
    classified = (
        (q == c and q.is_finite and not q.is_empty)
        or (not q.is_empty and c.is_all)
    )
    if CofiniteNat.is_closed(c) and decided != classified:
        raise OracleMismatch(
            f"quasi-lens decision {decided} disagrees with the classification {classified}"
        )
    return decided


def cn_quasi_lens_detail(q, c):
    return _cn_quasi_lens_conditions(q, c)


def cn_iota(lens):
    """(upset, closure) of a lens; upsets are identities here."""
    if lens.is_empty:
        raise InputError("a lens is non-empty")
    return CofiniteNat.upset(lens), CofiniteNat.closure(lens)


def cn_image_of_iota(q, c):
    """Whether (q, c) arises from some lens, two ways: the closed-form image
    predicate, and the direct preimage search (the only candidate is q)."""
    predicate = (
        (q == c and q.is_finite and not q.is_empty)
        or (not q.is_finite and c.is_all)
    )
    search = (not q.is_empty) and cn_iota(q) == (q, c)
    if predicate != search:
        raise OracleMismatch("image predicate disagrees with the preimage search")
    return predicate


def cn_tem_leq(l1, l2):
    """Hyperspace ordering comparing upsets one way, closures the other;
    cross-checked against its closed form (equal finite sets, or l2
    infinite and inside l1)."""
    definitional = l2.subset_of(l1) and CofiniteNat.closure(l1).subset_of(
        CofiniteNat.closure(l2)
    )
    closed_form = (l1 == l2 and l1.is_finite) or (not l2.is_finite and l2.subset_of(l1))
    if definitional != closed_form:
        raise OracleMismatch("orderings disagree with the closed form")
    return definitional


def cn_em_leq(l1, l2):
    """Plain hyperspace ordering (upsets and downsets); here simply equality."""
    definitional = l2.subset_of(l1) and l1.subset_of(l2)
    closed_form = l1 == l2
    if definitional != closed_form:
        raise OracleMismatch("orderings disagree with the closed form")
    return definitional


def cn_counterexample_suite():
    """The cofinite-naturals counterexample battery.

    (a) the whole space is irreducible closed with no generic point, so the
        space is not sober;
    (b) two distinct points with the empty open witness the failure of the
        weak Hausdorff trapping property;
    (c) the closure of a cofinite proper subset exceeds its downset;
    (d) the two hyperspace orderings disagree on a concrete lens pair.

    Returns a dict of check records; every one must pass on a sound build.
    """
    report = {}

    whole_closed = CofiniteNat.is_closed(NAT)
    # opens meeting the whole space are the non-empty, hence cofinite, ones;
    # two cofinite sets always intersect (the union of two finite complements
    # is finite), which is the pairwise irreducibility test
    pairwise = not NAT.is_empty and whole_closed
    sampled = [0, 1, 5, 40]
    no_generic = all(
        CofiniteNat.closure(CofinSet.finite([x])) != NAT for x in sampled
    )
    # schema argument for all points: every point-closure is finite
    schema = all(
        CofiniteNat.closure(CofinSet.finite([x])).is_finite for x in sampled
    )
    report["non_sober"] = {
        "pass": pairwise and no_generic and schema,
        "witness": {"irreducible_closed": "N", "sampled_points": sampled},
    }

    cert = Certificate(
        kind="non_weakly_hausdorff_pair",
        space="cofinite_nat",
        payload={"x": 0, "y": 1, "w": EMPTY},
    )
    report["non_weakly_hausdorff"] = {
        "pass": certificate_check("cofinite_nat", cert),
        "witness": {"x": 0, "y": 1, "w": "empty"},
    }

    lens = CofinSet.cofinite([0])
    closure_gap = CofiniteNat.closure(lens) == NAT and CofiniteNat.downset(lens) == lens
    report["closure_exceeds_downset"] = {
        "pass": closure_gap and CofiniteNat.closure(lens) != lens,
        "witness": {"lens": "N minus {0}"},
    }

    tem = cn_tem_leq(NAT, lens)
    em = cn_em_leq(NAT, lens)
    report["tem_differs_from_em"] = {
        "pass": tem and not em,
        "witness": {"l1": "N", "l2": "N minus {0}", "tem": tem, "em": em},
    }

    ql_outside = cn_quasi_lens(CofinSet.finite([0]), NAT) and not cn_image_of_iota(
        CofinSet.finite([0]), NAT
    )
    report["iota_not_surjective"] = {
        "pass": ql_outside,
        "witness": {"q": "{0}", "c": "N"},
    }
    return report


@dataclass(frozen=True)
class ExtSet:
    """Representable subset of the naturals plus special points."""

    nat: CofinSet
    extras: frozenset

    @classmethod
    def make(cls, nat=EMPTY, extras=()):
        return cls(nat=nat, extras=frozenset(extras))

    def union(self, other):
        return ExtSet(self.nat.union(other.nat), self.extras | other.extras)

    def intersection(self, other):
        return ExtSet(self.nat.intersection(other.nat), self.extras & other.extras)

    def subset_of(self, other):
        return self.nat.subset_of(other.nat) and self.extras <= other.extras

    @property
    def is_empty(self):
        return self.nat.is_empty and not self.extras


class ScottNatAB:
    """The dcpo of incomparable naturals over two incomparable bottom points
    a and b, in its Scott topology (which is the up-set topology: every
    directed set here contains its supremum)."""

    space_id = "scott_nat_ab"
    points = "naturals plus 'a' and 'b'"
    capabilities = {
        "weak_coherence": "certificate",
        "compactness": "certificate",
        "sobriety": "untested",
    }
    SPECIALS = frozenset({"a", "b"})

    @classmethod
    def _check(cls, s):
        if not s.extras <= cls.SPECIALS:
            raise InputError(f"unsupported special points {set(s.extras)}")
        return s

    @classmethod
    def upset(cls, s):
        cls._check(s)
        if s.extras:
            return ExtSet(NAT, s.extras)
        return s

    @classmethod
    def downset(cls, s):
        cls._check(s)
        extras = s.extras | (cls.SPECIALS if not s.nat.is_empty else frozenset())
        return ExtSet(s.nat, extras)

    @classmethod
    def closure(cls, s):
        return cls.downset(s)  # up-set topology: closed = down-closed

    @classmethod
    def is_open(cls, s):
        cls._check(s)
        return cls.upset(s) == s

    @classmethod
    def is_closed(cls, s):
        cls._check(s)
        return cls.downset(s) == s

    @classmethod
    def leq(cls, x, y):
        """Declared order: a, b below every natural, all else trivial."""
        if x == y:
            return True
        return x in cls.SPECIALS and isinstance(y, int)

    @classmethod
    def specialization_leq(cls, x, y):
        """x <= y iff y sits in the minimal open around x (its upset)."""
        sx = ExtSet.make(
            nat=CofinSet.finite([x]) if isinstance(x, int) else EMPTY,
            extras=() if isinstance(x, int) else (x,),
        )
        up = cls.upset(sx)
        if isinstance(y, int):
            return up.nat.contains(y)
        return y in up.extras

    @classmethod
    def double_upset_of_bottoms(cls):
        """Intersection of the upsets of a and b: the naturals exactly."""
        ua = cls.upset(ExtSet.make(extras=("a",)))
        ub = cls.upset(ExtSet.make(extras=("b",)))
        inter = ua.intersection(ub)
        if inter != ExtSet.make(nat=NAT):
            raise OracleMismatch("upset intersection is not the naturals")
        return inter


class AlexNatOmega:
    """The chain of naturals below a top point, in the up-set topology of
    the order (deliberately not the Scott topology)."""

    space_id = "alex_nat_omega"
    points = "naturals plus 'omega'"
    capabilities = {
        "monotone_convergence": "certificate",
        "compactness": "decidable",
    }
    SPECIALS = frozenset({"omega"})

    @classmethod
    def _check(cls, s):
        if not s.extras <= cls.SPECIALS:
            raise InputError(f"unsupported special points {set(s.extras)}")
        return s

    @staticmethod
    def _tail(start):
        return CofinSet.cofinite(range(start))

    @classmethod
    def upset(cls, s):
        cls._check(s)
        if not s.nat.is_empty:
            return ExtSet(cls._tail(s.nat.least()), cls.SPECIALS)
        return s

    @classmethod
    def downset(cls, s):
        cls._check(s)
        if "omega" in s.extras:
            return ExtSet(NAT, cls.SPECIALS)
        if s.nat.is_empty:
            return s
        if not s.nat.is_finite:
            return ExtSet(NAT, frozenset())  # unbounded below the top point
        return ExtSet(CofinSet.finite(range(max(s.nat.support) + 1)), frozenset())

    @classmethod
    def closure(cls, s):
        return cls.downset(s)

    @classmethod
    def is_open(cls, s):
        cls._check(s)
        return cls.upset(s) == s

    @classmethod
    def is_closed(cls, s):
        cls._check(s)
        return cls.downset(s) == s

    @classmethod
    def leq(cls, x, y):
        if y == "omega":
            return True
        if x == "omega":
            return False
        return x <= y

    @classmethod
    def chain_sup(cls, chain):
        """Supremum of a representable set of naturals under the chain order:
        its maximum when finite, the top point when unbounded."""
        cls._check(chain)
        if "omega" in chain.extras:
            return "omega"
        if chain.nat.is_empty:
            raise InputError("empty family has no supremum")
        if chain.nat.is_finite:
            return max(chain.nat.support)
        return "omega"


BACKENDS = {
    CofiniteNat.space_id: CofiniteNat,
    ScottNatAB.space_id: ScottNatAB,
    AlexNatOmega.space_id: AlexNatOmega,
}


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable witness of a negative claim about a backend space."""

    kind: str
    space: str
    payload: dict

    KINDS = (
        "non_compact_singleton_cover",
        "non_sober_irreducible",
        "non_weakly_hausdorff_pair",
        "non_monotone_convergence_directed",
    )


def _as_ext(value, backend):
    if isinstance(value, ExtSet):
        return backend._check(value)
    if isinstance(value, CofinSet):
        return ExtSet.make(nat=value)
    raise InputError("expected a representable set")


def certificate_check(space_id, cert):
    """Validate a certificate against its backend's sound checking rule.

    Raises InputError on malformed payloads or kinds the backend does not
    support; returns True only when every clause of the rule holds.
    """
    if space_id not in BACKENDS:
        raise InputError(f"unknown space {space_id!r}")
    if cert.space != space_id:
        raise InputError("certificate names a different space")
    if cert.kind not in Certificate.KINDS:
        raise InputError(f"unknown certificate kind {cert.kind!r}")
    backend = BACKENDS[space_id]
    payload = cert.payload

    if cert.kind == "non_compact_singleton_cover":
        if space_id != ScottNatAB.space_id:
            raise InputError(f"{cert.kind} is only supported on {ScottNatAB.space_id}")
        target = _as_ext(payload["target"], backend)
        cover_of = _as_ext(payload["cover_of"], backend)
        if cover_of.extras:
            return False  # singletons of the bottom points are not open
        if not target.subset_of(cover_of):
            return False
        # each {n} is open (naturals are maximal); singletons are pairwise
        # disjoint, so an infinite target defeats every finite subfamily
        singleton_open = backend.is_open(ExtSet.make(nat=CofinSet.finite([0])))
        if not singleton_open:
            return False
        return not target.nat.is_finite

    if cert.kind == "non_sober_irreducible":
        if space_id != CofiniteNat.space_id:
            raise InputError(f"{cert.kind} is only supported on {CofiniteNat.space_id}")
        c = payload["irreducible_closed"]
        if not isinstance(c, CofinSet):
            raise InputError("expected a representable closed set")
        if not CofiniteNat.is_closed(c):
            return False
        # irreducible closeds here are the singletons and the whole space;
        # only the whole space can lack a generic point
        if not c.is_all:
            return False
        samples = payload.get("sampled_points", [])
        if not samples:
            raise InputError("need sampled points")
        if any(CofiniteNat.closure(CofinSet.finite([x])) == c for x in samples):
            return False
        # schema: every point-closure is finite, the target is not
        return True

    if cert.kind == "non_weakly_hausdorff_pair":
        if space_id != CofiniteNat.space_id:
            raise InputError(f"{cert.kind} is only supported on {CofiniteNat.space_id}")
        x, y, w = payload["x"], payload["y"], payload["w"]
        if not (isinstance(x, int) and isinstance(y, int) and isinstance(w, CofinSet)):
            raise InputError("expected two points and a representable open")
        if x == y or not CofiniteNat.is_open(w):
            return False
        target = CofiniteNat.upset(CofinSet.finite([x])).intersection(
            CofiniteNat.upset(CofinSet.finite([y]))
        )
        if not target.subset_of(w):
            return False
        # every open around x and around y is cofinite; two cofinite sets
        # intersect in a cofinite set, which fits inside w only if w is
        # cofinite, so an empty w can never trap an intersection
        return w.is_empty

    if cert.kind == "non_monotone_convergence_directed":
        if space_id != AlexNatOmega.space_id:
            raise InputError(f"{cert.kind} is only supported on {AlexNatOmega.space_id}")
        chain = _as_ext(payload["chain"], backend)
        u = _as_ext(payload["open"], backend)
        if chain.extras or chain.is_empty:
            return False  # the witness family lives in the naturals
        if not backend.is_open(u):
            return False
        sup = backend.chain_sup(chain)
        declared = payload.get("sup")
        if declared is not None and declared != sup:
            return False
        sup_in_u = "omega" in u.extras if sup == "omega" else u.nat.contains(sup)
        if not sup_in_u:
            return False
        # naturals form a chain under the total order, hence directed
        member_hits = not chain.intersection(u).is_empty
        return not member_hits

    raise InputError(f"unhandled certificate kind {cert.kind!r}")


def builtin_certificates():
    """The counterexample certificates shipped with the backends."""
    return [
        Certificate(
            kind="non_compact_singleton_cover",
            space="scott_nat_ab",
            payload={
                "target": ScottNatAB.double_upset_of_bottoms(),
                "cover_of": ExtSet.make(nat=NAT),
            },
        ),
        Certificate(
            kind="non_monotone_convergence_directed",
            space="alex_nat_omega",
            payload={
                "chain": ExtSet.make(nat=NAT),
                "sup": "omega",
                "open": ExtSet.make(extras=("omega",)),
            },
        ),
        Certificate(
            kind="non_sober_irreducible",
            space="cofinite_nat",
            payload={"irreducible_closed": NAT, "sampled_points": [0, 1, 7, 100]},
        ),
        Certificate(
            kind="non_weakly_hausdorff_pair",
            space="cofinite_nat",
            payload={"x": 0, "y": 1, "w": EMPTY},
        ),
    ]


def random_cofinset(rng, max_support=12):
    tag = "finite" if rng.random() < 0.5 else "cofinite"
    size = rng.randrange(0, 5)
    support = frozenset(rng.randrange(0, max_support) for _ in range(size))
    return CofinSet(tag, support)


def random_extset(rng, specials, max_support=12):
    extras = frozenset(s for s in sorted(specials) if rng.random() < 0.4)
    return ExtSet(nat=random_cofinset(rng, max_support), extras=extras)
