"""Matplotlib renderings for the report path: Hasse diagrams and suite
summaries, written straight to image files (no interactive backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dot import _cover_edges, _equivalent_pairs, point_set_label, ranks


def render_hasse(up_rows, labels=None, path="hasse.png", title=""):
    """Layered Hasse diagram; nodes keep their index order inside a layer so
    the output is reproducible."""
    n = len(up_rows)
    if labels is None:
        labels = [str(i) for i in range(n)]
    layer = ranks(up_rows)
    by_layer = {}
    for i in range(n):
        by_layer.setdefault(layer[i], []).append(i)
    pos = {}
    for lvl, members in sorted(by_layer.items()):
        width = len(members)
        for k, i in enumerate(sorted(members)):
            pos[i] = (k - (width - 1) / 2.0, lvl)

    fig, ax = plt.subplots(figsize=(max(4, n * 0.7), max(3, (max(layer) + 1) * 1.1)))
    for i, j in _cover_edges(up_rows):
        ax.plot(
            [pos[i][0], pos[j][0]], [pos[i][1], pos[j][1]],
            color="0.55", lw=1.2, zorder=1,
        )
    for i, j in _equivalent_pairs(up_rows):
        ax.plot(
            [pos[i][0], pos[j][0]], [pos[i][1], pos[j][1]],
            color="0.55", lw=1.0, ls="--", zorder=1,
        )
    for i in range(n):
        ax.scatter(*pos[i], s=900, color="white", edgecolor="0.2", zorder=2)
        ax.annotate(
            labels[i], pos[i], ha="center", va="center", fontsize=9, zorder=3,
        )
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_space_hasse(space, path, title=""):
    from .spaces import specialization_preorder

    p = specialization_preorder(space)
    labels = [str(i) for i in range(space.n)]
    return render_hasse(p.up, labels, path, title or "specialization preorder")


def render_lattice_hasse(lat, path, title=""):
    if lat.labels is not None and all(isinstance(l, int) for l in lat.labels):
        labels = [point_set_label(l) for l in lat.labels]
    else:
        labels = [str(i) for i in range(lat.m)]
    return render_hasse(lat.up, labels, path, title or "lattice")


def render_lens_order(carrier, order, path, title="lens ordering"):
    labels = [point_set_label(l) for l in carrier]
    return render_hasse(order.up, labels, path, title)


def render_quasi_lens_order(carrier, order, path, title="quasi-lens specialization"):
    labels = [
        f"({point_set_label(ql.q)},{point_set_label(ql.c)})" for ql in carrier
    ]
    return render_hasse(order.up, labels, path, title)


def render_suite_summary(report, path):
    """Horizontal bars of executed checks per suite, failures highlighted."""
    suites = sorted(report.get("suites", {}))
    checks = [report["suites"][s]["checks"] for s in suites]
    fails = [len(report["suites"][s]["failures"]) for s in suites]
    fig, ax = plt.subplots(figsize=(7, max(2.5, 0.5 * len(suites) + 1)))
    ys = range(len(suites))
    ax.barh(ys, checks, color="#7fb285", label="checks run")
    ax.barh(ys, fails, color="#c23b22", label="failures")
    ax.set_yticks(list(ys))
    ax.set_yticklabels(suites)
    ax.set_xlabel("checks")
    ax.legend(loc="lower right")
    ax.set_title("suite results")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
