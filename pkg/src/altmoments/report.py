"""Report bundle: figures rendered to files, each next to a delimited
data file carrying the plotted numbers.

Four views of one LaplaceExponentData input:

* the exponent curve with its integer nodes and the Newton interpolant,
* the first-part probability matrix as a heatmap,
* the exact composition distribution against an empirical histogram,
* the reconstructed convex CDF (after normalization) with its exact overlay.

Figures are PNG via the Agg backend; the CSVs render decimals to 12
significant digits, matching the delimited conventions used elsewhere.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import compstruct, momentrep, serialize, subord
from .subord import LaplaceExponentData

RECONSTRUCT_DEPTH = 120


def _save(fig, outdir: str, name: str) -> str:
    path = os.path.join(outdir, name)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return name


def _write(outdir: str, name: str, text: str) -> str:
    with open(os.path.join(outdir, name), "w", encoding="utf-8") as fh:
        fh.write(text)
    return name


def phi_view(data: LaplaceExponentData, n: int, outdir: str) -> list[str]:
    """Exponent at integer nodes plus the Newton interpolant between them."""
    nodes = subord.laplace_exponent_sequence(data, n)
    grid = np.linspace(0.0, float(n), 40 * n + 1)
    interp = [subord.newton_interpolate(nodes, x) for x in grid]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(grid, interp, lw=1.2, label="Newton interpolant")
    ax.plot(range(n + 1), [float(v) for v in nodes], "o", ms=4, label="integer nodes")
    ax.set_xlabel("lam")
    ax.set_ylabel("phi(lam)")
    ax.legend(loc="lower right")
    fig.tight_layout()

    lines = ["kind,lam,phi"]
    lines.extend(
        f"node,{i},{serialize.decimal12(v)}" for i, v in enumerate(nodes)
    )
    lines.extend(
        f"interp,{serialize.decimal12(x)},{serialize.decimal12(y)}"
        for x, y in zip(grid, interp)
    )
    return [
        _save(fig, outdir, "phi.png"),
        _write(outdir, "phi.csv", "\n".join(lines) + "\n"),
    ]


def qmatrix_view(data: LaplaceExponentData, n: int, outdir: str) -> list[str]:
    """Heatmap of the first-part probabilities q(i, m) for i = 1..n."""
    rows = [compstruct.q_row_from_phi(data, i) for i in range(1, n + 1)]
    matrix = np.full((n, n), np.nan)
    for i, row in enumerate(rows):
        matrix[i, : row.n] = [float(q) for q in row.entries]

    fig, ax = plt.subplots(figsize=(5, 4.5))
    image = ax.imshow(
        matrix,
        origin="lower",
        extent=(0.5, n + 0.5, 0.5, n + 0.5),
        vmin=0.0,
        vmax=1.0,
    )
    fig.colorbar(image, ax=ax, label="q(n, m)")
    ax.set_xlabel("first part m")
    ax.set_ylabel("n")
    fig.tight_layout()

    lines = ["n,m,q"]
    for row in rows:
        lines.extend(
            f"{row.n},{m},{serialize.decimal12(q)}"
            for m, q in enumerate(row.entries, start=1)
        )
    return [
        _save(fig, outdir, "qmatrix.png"),
        _write(outdir, "qmatrix.csv", "\n".join(lines) + "\n"),
    ]


def pmf_view(
    data: LaplaceExponentData,
    n: int,
    count: int,
    rng: np.random.Generator,
    outdir: str,
    cap: int = compstruct.DEFAULT_CAP,
) -> list[str]:
    """Exact composition probabilities next to an empirical histogram."""
    dist = compstruct.composition_pmf(data, n, cap=cap)
    support = sorted(dist.support())
    counts = dict.fromkeys(support, 0)
    for _ in range(count):
        drawn = compstruct.sample_composition_recursive(data, n, rng)
        counts[drawn] = counts.get(drawn, 0) + 1

    labels = ["+".join(map(str, parts)) for parts in support]
    exact = [float(dist.prob(parts)) for parts in support]
    empirical = [counts[parts] / count if count else 0.0 for parts in support]

    positions = np.arange(len(support))
    fig, ax = plt.subplots(figsize=(max(6, 0.4 * len(support)), 4))
    ax.bar(positions - 0.2, exact, width=0.4, label="exact")
    ax.bar(positions + 0.2, empirical, width=0.4, label="empirical")
    ax.set_xticks(positions)
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_ylabel("probability")
    ax.legend()
    fig.tight_layout()

    lines = ["parts,exact,empirical"]
    lines.extend(
        f"{label},{serialize.decimal12(e)},{serialize.decimal12(f)}"
        for label, e, f in zip(labels, exact, empirical)
    )
    return [
        _save(fig, outdir, "pmf.png"),
        _write(outdir, "pmf.csv", "\n".join(lines) + "\n"),
    ]


def reconstruct_view(
    data: LaplaceExponentData, outdir: str, depth: int = RECONSTRUCT_DEPTH
) -> list[str]:
    """Step CDF reconstructed from the moments, with the exact CDF overlaid.

    The input is normalized first so the moment formula applies.
    """
    scaled = subord.normalized(data)
    moments = subord.moments_from_laplace_exponent(scaled, depth)
    points = momentrep.hausdorff_reconstruct(moments, depth)
    cdf = momentrep.ConvexCdf(subord.mixing_measure(scaled))
    exact = [cdf.cdf(x) for x, _ in points]

    xs = [float(x) for x, _ in points]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.step(xs, [float(f) for _, f in points], where="post", label="reconstructed")
    ax.plot(xs, [float(f) for f in exact], lw=1.0, label="exact")
    ax.set_xlabel("x")
    ax.set_ylabel("F(x)")
    ax.legend(loc="upper left")
    fig.tight_layout()

    lines = ["x,F_step,F_exact"]
    lines.extend(
        f"{serialize.decimal12(x)},{serialize.decimal12(f)},{serialize.decimal12(g)}"
        for (x, f), g in zip(points, exact)
    )
    return [
        _save(fig, outdir, "reconstruct.png"),
        _write(outdir, "reconstruct.csv", "\n".join(lines) + "\n"),
    ]


def render_report(
    data: LaplaceExponentData,
    n: int,
    outdir: str,
    seed: int,
    count: int = 20000,
    cap: int = compstruct.DEFAULT_CAP,
) -> dict:
    """Render every view into outdir and return the manifest object.

    The manifest (also written as manifest.json) echoes the seed and lists
    the files produced, figures and delimited data alike.
    """
    os.makedirs(outdir, exist_ok=True)
    rng = np.random.default_rng(seed)
    outputs: list[str] = []
    outputs += phi_view(data, n, outdir)
    outputs += qmatrix_view(data, n, outdir)
    outputs += pmf_view(data, n, count, rng, outdir, cap=cap)
    outputs += reconstruct_view(data, outdir)
    manifest = {"seed": seed, "outputs": outputs}
    _write(outdir, "manifest.json", serialize.dump_json(manifest))
    return manifest
