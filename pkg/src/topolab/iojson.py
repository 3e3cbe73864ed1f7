"""JSON wire formats for spaces, preorders, lattices and certificates.

Spaces travel as {"n": int, "opens": [[points]]} or {"n": int,
"subbasis": [[points]]} (exactly one of the two); preorders as {"n": int,
"leq": [[x, y], ...]} with reflexive pairs optional; lattices as
{"m": int, "leq": [[i, j], ...]} with meet/join derived and validated;
certificates as {"kind": str, "space": str, "payload": {...}} where sets
are {"tag": ..., "support": [...]} plus an optional "extras" list.
"""

from __future__ import annotations

import json

from .bitsets import mask_of, points_of
from .lattices import lattice_from_leq
from .spaces import FinSpace, InputError, Preorder, build_space
from .symbolic import Certificate, CofinSet, ExtSet

REPORT_SCHEMA = "topolab-report/1"


def load_json_file(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def dump_json(data, path=None):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path is None:
        return text
    with open(path, "w") as fh:
        fh.write(text)
    return text


def _point_lists_to_masks(n, lists, what):
    if not isinstance(lists, list) or not all(isinstance(s, list) for s in lists):
        raise InputError(f"{what} must be a list of point lists")
    masks = []
    for s in lists:
        for x in s:
            if not isinstance(x, int) or not 0 <= x < n:
                raise InputError(f"{what} point {x!r} outside 0..{n - 1}")
        masks.append(mask_of(s))
    return masks


def space_from_json(data):
    if not isinstance(data, dict) or not isinstance(data.get("n"), int):
        raise InputError("space JSON needs an integer field 'n'")
    n = data["n"]
    has_opens = "opens" in data
    has_subbasis = "subbasis" in data
    if has_opens == has_subbasis:
        raise InputError("space JSON needs exactly one of 'opens' or 'subbasis'")
    if has_subbasis:
        return build_space(n, _point_lists_to_masks(n, data["subbasis"], "subbasis"))
    masks = _point_lists_to_masks(n, data["opens"], "opens")
    return FinSpace(n, tuple(sorted(set(masks)))).validate()


def space_to_json(space):
    return {"n": space.n, "opens": [points_of(u) for u in space.opens]}


def preorder_from_json(data, reject_nontransitive=False):
    if not isinstance(data, dict) or not isinstance(data.get("n"), int):
        raise InputError("preorder JSON needs an integer field 'n'")
    pairs = data.get("leq")
    if not isinstance(pairs, list) or not all(
        isinstance(p, list) and len(p) == 2 for p in pairs
    ):
        raise InputError("preorder JSON needs 'leq' as a list of pairs")
    return Preorder.from_pairs(
        data["n"],
        [tuple(p) for p in pairs],
        transitive_close=not reject_nontransitive,
    )


def preorder_to_json(p):
    return {
        "n": p.n,
        "leq": [
            [x, y]
            for x in range(p.n)
            for y in points_of(p.up[x])
        ],
    }


def lattice_from_json(data):
    if not isinstance(data, dict) or not isinstance(data.get("m"), int):
        raise InputError("lattice JSON needs an integer field 'm'")
    m = data["m"]
    pairs = data.get("leq")
    if not isinstance(pairs, list) or not all(
        isinstance(p, list) and len(p) == 2 for p in pairs
    ):
        raise InputError("lattice JSON needs 'leq' as a list of pairs")
    rows = [1 << i for i in range(m)]
    for i, j in pairs:
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < m and 0 <= j < m):
            raise InputError(f"lattice pair [{i}, {j}] out of range")
        rows[i] |= 1 << j
    from .spaces import transitive_closure

    return lattice_from_leq(m, transitive_closure(rows))


def lattice_to_json(lat):
    return {
        "m": lat.m,
        "leq": [[i, j] for i in range(lat.m) for j in points_of(lat.up[i])],
    }


def symbolic_set_from_json(data):
    if not isinstance(data, dict) or data.get("tag") not in ("finite", "cofinite"):
        raise InputError("symbolic set JSON needs tag 'finite' or 'cofinite'")
    support = data.get("support", [])
    if not all(isinstance(x, int) and x >= 0 for x in support):
        raise InputError("symbolic set support must hold naturals")
    base = CofinSet(data["tag"], frozenset(support))
    extras = data.get("extras")
    if extras is None:
        return base
    if not all(isinstance(e, str) for e in extras):
        raise InputError("extras must be point names")
    return ExtSet.make(nat=base, extras=extras)


def symbolic_set_to_json(value):
    if isinstance(value, ExtSet):
        out = symbolic_set_to_json(value.nat)
        out["extras"] = sorted(value.extras)
        return out
    return {"tag": value.tag, "support": sorted(value.support)}


def certificate_from_json(data):
    if not isinstance(data, dict):
        raise InputError("certificate JSON must be an object")
    for key in ("kind", "space", "payload"):
        if key not in data:
            raise InputError(f"certificate JSON needs field '{key}'")
    payload = {}
    for key, value in data["payload"].items():
        if isinstance(value, dict) and "tag" in value:
            payload[key] = symbolic_set_from_json(value)
        else:
            payload[key] = value
    return Certificate(kind=data["kind"], space=data["space"], payload=payload)


def certificate_to_json(cert):
    payload = {}
    for key, value in cert.payload.items():
        if isinstance(value, (CofinSet, ExtSet)):
            payload[key] = symbolic_set_to_json(value)
        else:
            payload[key] = value
    return {"kind": cert.kind, "space": cert.space, "payload": payload}
