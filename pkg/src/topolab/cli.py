"""Batch front door: load instances, run checker batteries, verify
certificates, and emit JSON reports, DOT graphs, CSV summaries and figure
files.

Exit codes: 0 all checks passed, 1 a property or invariant failed (the
report carries a replayable witness), 2 malformed input.  Reports are
byte-identical for a fixed seed and config; wall-clock timing goes to
stderr only.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from . import dot as dotmod
from . import iojson, lattices, lenses, spaces, symbolic, viz
from .bitsets import points_of
from .suites import SUITE_NAMES, SuiteConfig, run_suite


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(value)
    if hasattr(value, "__dataclass_fields__"):
        return {k: _jsonable(getattr(value, k)) for k in value.__dataclass_fields__}
    return value


def _load_instance(path, reject_nontransitive=False):
    """Sniff the input kind from its fields."""
    data = iojson.load_json_file(path)
    if not isinstance(data, dict):
        raise spaces.InputError("input JSON must be an object")
    if "kind" in data and "payload" in data:
        return "certificate", iojson.certificate_from_json(data)
    if "m" in data:
        return "lattice", iojson.lattice_from_json(data)
    if "opens" in data or "subbasis" in data:
        return "space", iojson.space_from_json(data)
    if "leq" in data and "n" in data:
        p = iojson.preorder_from_json(data, reject_nontransitive=reject_nontransitive)
        return "space", spaces.alexandroff_space(p)
    raise spaces.InputError("input JSON matches no known schema")


def _write_output(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_csv(rows, header, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


SPACE_CHECKS = ("properties", "duality", "hyperspace", "closure-implication")
LATTICE_CHECKS = ("frame", "filters", "temperance", "waybelow")


def _check_space(space, checks):
    results = {}
    if "properties" in checks:
        props = spaces.property_report(space)
        results["properties"] = _jsonable(props.flags())
        results["properties"]["strongly_sober_presumptive"] = spaces.strongly_sober_presumed(props)
        results["properties_note"] = (
            "strongly_sober_presumptive reads the unlocalized notion as compact plus locally strongly sober"
        )
        results["consistency_violations"] = spaces.property_violations(props)
    if "duality" in checks:
        stone = lattices.stone_round_trip(space)
        hm = lattices.hofmann_mislove_report(space)
        results["stone"] = _jsonable(stone)
        results["hofmann_mislove"] = _jsonable(hm)
    if "hyperspace" in checks:
        emb = lenses.check_embedding(space)
        results["hyperspace"] = _jsonable(emb)
    if "closure-implication" in checks:
        ok, pair = lenses.neighborhood_closure_implication(space)
        results["closure_implication"] = {
            "holds": ok,
            "witness": None if pair is None else [points_of(pair[0]), points_of(pair[1])],
        }
    return results


def _check_lattice(lat, checks):
    results = {}
    if "frame" in checks:
        rep = lattices.frame_report(lat)
        results["frame"] = {
            "is_frame": rep.is_frame,
            "is_boolean": rep.is_boolean,
            "witness": list(rep.witness) if rep.witness else None,
        }
    if "filters" in checks:
        results["filters"] = {
            "all": [points_of(f.members) for f in lattices.filters_of(lat)],
            "completely_prime": [
                points_of(f.members)
                for f in lattices.filters_of(lat, kind="completely_prime")
            ],
        }
    if "temperance" in checks:
        results["temperance"] = _jsonable(lattices.temperance_report(lat))
    if "waybelow" in checks:
        rep = lattices.waybelow_and_stability(lat)
        results["waybelow"] = {
            "continuous": rep.continuous,
            "stable": rep.stable,
            "locally_temperate": rep.locally_temperate,
            "waybelow_pairs": [
                [u, v] for u in range(lat.m) for v in points_of(rep.waybelow[u])
            ],
        }
    return results


def _space_failures(results):
    out = []
    for name in results.get("consistency_violations", []):
        out.append({"check": "consistency:" + name})
    hyper = results.get("hyperspace", {})
    for key in ("iota_homeomorphism", "tem_equals_em",
                "tem_equals_vietoris_specialization", "all_downsets_closed"):
        if hyper.get(key) is False:
            out.append({"check": "hyperspace:" + key})
    closure = results.get("closure_implication")
    if closure and not closure["holds"]:
        out.append({"check": "closure_implication", "witness": closure["witness"]})
    return out


def cmd_check(args):
    kind, instance = _load_instance(args.input, args.reject_nontransitive)
    if kind == "certificate":
        ok = symbolic.certificate_check(instance.space, instance)
        report = {
            "schema": iojson.REPORT_SCHEMA,
            "command": "check",
            "kind": "certificate",
            "certificate": iojson.certificate_to_json(instance),
            "valid": ok,
        }
        _write_output(iojson.dump_json(report), args.out)
        return 0 if ok else 1

    requested = args.checks.split(",") if args.checks else None
    if kind == "space":
        checks = requested or ["properties"]
        unknown = set(checks) - set(SPACE_CHECKS)
        if unknown:
            raise spaces.InputError(f"unknown space checks: {sorted(unknown)}")
        results = _check_space(instance, checks)
        failures = _space_failures(results)
        instance_json = iojson.space_to_json(instance)
    else:
        checks = requested or ["frame"]
        unknown = set(checks) - set(LATTICE_CHECKS)
        if unknown:
            raise spaces.InputError(f"unknown lattice checks: {sorted(unknown)}")
        results = _check_lattice(instance, checks)
        failures = []
        instance_json = iojson.lattice_to_json(instance)

    report = {
        "schema": iojson.REPORT_SCHEMA,
        "command": "check",
        "kind": kind,
        "instance": instance_json,
        "checks": checks,
        "results": results,
        "failures": failures,
    }
    if args.format == "dot":
        if kind == "space":
            text = dotmod.hasse_dot(
                spaces.specialization_preorder(instance).up, name="specialization"
            )
        else:
            text = dotmod.lattice_dot(instance)
        _write_output(text, args.out)
    else:
        _write_output(iojson.dump_json(report), args.out)
    if args.csv:
        rows = [[c, "ok"] for c in checks] + [[f["check"], "fail"] for f in failures]
        _write_csv(rows, ["check", "status"], args.csv)
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        if kind == "space":
            viz.render_space_hasse(
                instance, os.path.join(args.figures, "specialization.png")
            )
        else:
            viz.render_lattice_hasse(instance, os.path.join(args.figures, "lattice.png"))
    return 1 if failures else 0


def cmd_enumerate(args):
    kind, instance = _load_instance(args.input, args.reject_nontransitive)
    what = args.what
    if kind == "space" and what == "lenses":
        carrier, order = lenses.vietoris_specialization(instance, "lens_vietoris")
        listing = [points_of(l) for l in carrier]
        dot_text = dotmod.lens_order_dot(carrier, order)
        render = lambda p: viz.render_lens_order(carrier, order, p)
    elif kind == "space" and what == "quasi-lenses":
        carrier, order = lenses.vietoris_specialization(instance, "quasi_vietoris")
        listing = [
            {"q": points_of(ql.q), "c": points_of(ql.c)} for ql in carrier
        ]
        dot_text = dotmod.quasi_lens_order_dot(carrier, order)
        render = lambda p: viz.render_quasi_lens_order(carrier, order, p)
    elif kind == "lattice" and what == "filters":
        filts = lattices.filters_of(instance)
        listing = [
            {
                "members": points_of(f.members),
                "proper": f.proper,
                "scott_open": f.scott_open,
                "completely_prime": f.completely_prime,
            }
            for f in filts
        ]
        rows = tuple(
            sum(1 << j for j, g in enumerate(filts) if f.members & ~g.members == 0)
            for f in filts
        )
        order = spaces.Preorder(len(filts), rows)
        labels = ["{" + ",".join(map(str, points_of(f.members))) + "}" for f in filts]
        dot_text = dotmod.hasse_dot(order.up, labels=labels, name="filters")
        render = lambda p: viz.render_hasse(order.up, labels, p, "filter inclusion")
    else:
        raise spaces.InputError(
            f"cannot enumerate {what!r} from a {kind} input"
        )
    if args.format == "dot":
        _write_output(dot_text, args.out)
    else:
        report = {
            "schema": iojson.REPORT_SCHEMA,
            "command": "enumerate",
            "what": what,
            "count": len(listing),
            "items": listing,
        }
        _write_output(iojson.dump_json(report), args.out)
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        render(os.path.join(args.figures, f"{what.replace('-', '_')}.png"))
    return 0


def cmd_duality(args):
    kind, instance = _load_instance(args.input, args.reject_nontransitive)
    if kind == "lattice":
        space = lattices.points_space(instance)
    elif kind == "space":
        space = instance
    else:
        raise spaces.InputError("duality needs a space or lattice input")
    stone = lattices.stone_round_trip(space)
    hm = lattices.hofmann_mislove_report(space)
    report = {
        "schema": iojson.REPORT_SCHEMA,
        "command": "duality",
        "instance": iojson.space_to_json(space),
        "stone": _jsonable(stone),
        "hofmann_mislove": _jsonable(hm),
    }
    _write_output(iojson.dump_json(report), args.out)
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        viz.render_space_hasse(space, os.path.join(args.figures, "specialization.png"))
        viz.render_lattice_hasse(
            lattices.lattice_of_opens(space),
            os.path.join(args.figures, "opens_lattice.png"),
        )
    return 0


def cmd_examples(args):
    battery = symbolic.cn_counterexample_suite()
    certs = []
    for cert in symbolic.builtin_certificates():
        certs.append(
            {
                "certificate": iojson.certificate_to_json(cert),
                "valid": symbolic.certificate_check(cert.space, cert),
            }
        )
    failures = [name for name, entry in battery.items() if not entry["pass"]]
    failures += [
        c["certificate"]["kind"] for c in certs if not c["valid"]
    ]
    report = {
        "schema": iojson.REPORT_SCHEMA,
        "command": "examples",
        "cofinite_battery": _jsonable(battery),
        "certificates": certs,
        "failures": failures,
    }
    _write_output(iojson.dump_json(report), args.out)
    return 1 if failures else 0


def cmd_suite(args):
    config = SuiteConfig(
        seed=args.seed,
        max_points=args.max_points,
        sample_count=args.samples,
        suites=tuple(args.suites.split(",")) if args.suites else SUITE_NAMES,
    )
    if config.max_points >= 5:
        print(
            "note: exhaustive sweeps on 5 points enumerate 6942 preorders; "
            "expect a long run",
            file=sys.stderr,
        )
    started = time.monotonic()
    report = run_suite(config)
    elapsed = time.monotonic() - started
    _write_output(iojson.dump_json(report), args.out)
    if args.csv:
        rows = [
            [name, rec["instances"], rec["checks"], len(rec["failures"])]
            for name, rec in sorted(report["suites"].items())
        ]
        _write_csv(rows, ["suite", "instances", "checks", "failures"], args.csv)
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        viz.render_suite_summary(report, os.path.join(args.figures, "suite_summary.png"))
    print(f"suite finished in {elapsed:.1f}s", file=sys.stderr)
    return 1 if report["failures_total"] else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="topolab",
        description="checker batteries for finite spaces, frames and hyperspaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, figures=True):
        p.add_argument("--out", help="write the main output to this path")
        p.add_argument(
            "--reject-nontransitive",
            action="store_true",
            help="reject preorder input instead of closing it transitively",
        )
        p.add_argument("--format", choices=("json", "dot"), default="json")
        p.add_argument("--csv", help="write a delimited summary to this path")
        if figures:
            p.add_argument("--figures", help="directory for rendered figure files")

    p_check = sub.add_parser("check", help="run checkers on one instance file")
    p_check.add_argument("input", help="space, lattice or certificate JSON")
    p_check.add_argument(
        "--checks",
        help="comma list; spaces: %s; lattices: %s"
        % (",".join(SPACE_CHECKS), ",".join(LATTICE_CHECKS)),
    )
    common(p_check)

    p_enum = sub.add_parser("enumerate", help="list lenses, quasi-lenses or filters")
    p_enum.add_argument("input")
    p_enum.add_argument("--what", choices=("lenses", "quasi-lenses", "filters"),
                        required=True)
    common(p_enum)

    p_dual = sub.add_parser("duality", help="unit/counit and filter correspondences")
    p_dual.add_argument("input")
    common(p_dual)

    p_ex = sub.add_parser("examples", help="run the symbolic certificate battery")
    common(p_ex, figures=False)
    p_ex.set_defaults(figures=None)

    p_suite = sub.add_parser("suite", help="exhaustive and randomized theorem sweeps")
    p_suite.add_argument("--seed", type=int, default=0)
    p_suite.add_argument("--max-points", type=int, default=4)
    p_suite.add_argument("--samples", type=int, default=1000)
    p_suite.add_argument("--suites", help="comma list, default all: " + ",".join(SUITE_NAMES))
    common(p_suite)
    return parser


COMMANDS = {
    "check": cmd_check,
    "enumerate": cmd_enumerate,
    "duality": cmd_duality,
    "examples": cmd_examples,
    "suite": cmd_suite,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except spaces.InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except spaces.OracleMismatch as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
