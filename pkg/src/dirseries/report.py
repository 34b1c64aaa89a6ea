"""Report rendering: CSV tables plus matplotlib figures for one series.

`ds report --series S --out DIR` drops, next to each other:

    coeffs.csv / coeffs.png           leading coefficients
    abscissa.json / abscissa.png      partial-sum growth and checkpoint slopes
    convergence.csv / convergence.png partial sums at a few sigma values
    rho.csv / rho.png                 smooth-restricted roots (recip series only)
"""

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .abscissa import convergence_table, estimate_sigma_a
from .constructions import rho_sequence
from .serialize import coeffs_csv_lines, json_dumps, table_csv_lines
from .specparse import build_base_sequence, build_sequence, parse_series_spec


def _write_lines(path, lines):
    with open(path, "w") as fh:
        for line in lines:
            fh.write(line + "\n")


def write_report(series_text, limit, out_dir, smooth_max=3, checkpoints=8):
    node = parse_series_spec(series_text)
    seq = build_sequence(node)
    os.makedirs(out_dir, exist_ok=True)
    written = []

    def path(name):
        p = os.path.join(out_dir, name)
        written.append(p)
        return p

    values = seq.materialize(limit)
    shown = values[: min(limit, 200)]
    _write_lines(path("coeffs.csv"), coeffs_csv_lines(shown))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.stem([float(v) for v in shown])
    ax.set_xlabel("n")
    ax.set_ylabel("a_n")
    ax.set_title(f"coefficients of {node.to_text()}")
    fig.tight_layout()
    fig.savefig(path("coeffs.png"), dpi=120)
    plt.close(fig)

    report = estimate_sigma_a(seq, limit, checkpoints)
    with open(path("abscissa.json"), "w") as fh:
        fh.write(json_dumps(report) + "\n")
    fig, ax = plt.subplots(figsize=(6, 4))
    marks = [m for m, _ in report.checkpoint_slopes]
    slopes = [s for _, s in report.checkpoint_slopes]
    ax.semilogx(marks, slopes, "o-")
    ax.axhline(report.estimate, color="gray", ls="--", lw=0.8)
    ax.set_xlabel("checkpoint N")
    ax.set_ylabel("two-point slope")
    ax.set_title(f"growth exponent of partial sums, estimate {report.estimate:.3f}")
    fig.tight_layout()
    fig.savefig(path("abscissa.png"), dpi=120)
    plt.close(fig)

    sigmas = [0.5, 1.0, 1.5, 2.0]
    marks = sorted({max(1, round(limit * 2.0 ** (k - checkpoints))) for k in range(1, checkpoints + 1)})
    table = convergence_table(seq, sigmas, marks)
    header = ["N"] + [f"sigma={s}" for s in sigmas]
    rows = [[n] + row for n, row in zip(table.ns, table.values)]
    _write_lines(path("convergence.csv"), table_csv_lines(header, rows))
    fig, ax = plt.subplots(figsize=(6, 4))
    for col, sigma in enumerate(sigmas):
        ax.loglog(table.ns, [row[col] for row in table.values], "o-", label=f"sigma={sigma}")
    ax.set_xlabel("N")
    ax.set_ylabel("partial sum")
    ax.legend()
    ax.set_title(f"partial sums of {node.to_text()}")
    fig.tight_layout()
    fig.savefig(path("convergence.png"), dpi=120)
    plt.close(fig)

    if node.kind == "recip":
        base = build_base_sequence(node)
        roots = rho_sequence(base, node.params["alpha"], smooth_max, tol=1e-8, limit=limit)
        header = ["n", "rho_n", "residual", "iterations"]
        rows = [[r.smooth_index, r.rho, r.residual, r.iterations] for r in roots]
        _write_lines(path("rho.csv"), table_csv_lines(header, rows))
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot([r.smooth_index for r in roots], [r.rho for r in roots], "o-")
        ax.set_xlabel("smooth index n")
        ax.set_ylabel("rho_n")
        ax.set_title("smooth-restricted roots")
        fig.tight_layout()
        fig.savefig(path("rho.png"), dpi=120)
        plt.close(fig)

    return written
