"""Deterministic DOT emitters for Hasse diagrams.

Nodes and edges are emitted in sorted index order so output is diffable.
Equivalent elements of a preorder (cycles) get a dashed two-way edge.
"""

from __future__ import annotations

from .bitsets import iter_points, points_of


def _cover_edges(up_rows):
    n = len(up_rows)
    strict = [
        [bool(up_rows[i] >> j & 1) and not up_rows[j] >> i & 1 for j in range(n)]
        for i in range(n)
    ]
    covers = []
    for i in range(n):
        for j in range(n):
            if not strict[i][j]:
                continue
            if any(strict[i][k] and strict[k][j] for k in range(n)):
                continue
            covers.append((i, j))
    return covers


def _equivalent_pairs(up_rows):
    n = len(up_rows)
    return [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if up_rows[i] >> j & 1 and up_rows[j] >> i & 1
    ]


def hasse_dot(up_rows, labels=None, name="hasse"):
    """DOT text for the Hasse diagram of the order given by up-set rows."""
    n = len(up_rows)
    if labels is None:
        labels = [str(i) for i in range(n)]
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(n):
        lines.append(f'  n{i} [label="{labels[i]}"];')
    for i, j in sorted(_cover_edges(up_rows)):
        lines.append(f"  n{i} -> n{j};")
    for i, j in sorted(_equivalent_pairs(up_rows)):
        lines.append(f"  n{i} -> n{j} [dir=both, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def point_set_label(mask):
    return "{" + ",".join(str(x) for x in points_of(mask)) + "}"


def lens_order_dot(carrier, order, name="lens_order"):
    """Hasse diagram of the lens carrier under its hyperspace ordering."""
    labels = [point_set_label(l) for l in carrier]
    return hasse_dot(order.up, labels=labels, name=name)


def quasi_lens_order_dot(carrier, order, name="quasi_lens_order"):
    labels = [
        f"({point_set_label(ql.q)},{point_set_label(ql.c)})" for ql in carrier
    ]
    return hasse_dot(order.up, labels=labels, name=name)


def lattice_dot(lat, name="lattice"):
    if lat.labels is not None:
        labels = [
            point_set_label(l) if isinstance(l, int) else str(l)
            for l in lat.labels
        ]
    else:
        labels = None
    return hasse_dot(lat.up, labels=labels, name=name)


def ranks(up_rows):
    """Longest-path layer of each element above the minimal ones (for
    layouts); cycles share the rank of their class representative."""
    n = len(up_rows)
    down_counts = [0] * n
    for i in range(n):
        for j in iter_points(up_rows[i]):
            if i != j and not up_rows[j] >> i & 1:
                down_counts[j] += 1
    rank = [0] * n
    covers = _cover_edges(up_rows)
    changed = True
    while changed:
        changed = False
        for i, j in covers:
            if rank[j] < rank[i] + 1:
                rank[j] = rank[i] + 1
                changed = True
    for i, j in _equivalent_pairs(up_rows):
        rank[j] = rank[i]
    return rank
