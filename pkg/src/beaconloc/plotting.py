"""Heatmaps of swept ``e_ps`` values, rendered to SVG with matplotlib."""

import csv

import matplotlib
import numpy as np
from matplotlib.figure import Figure

CSV_HEADER = ("x_m", "y_m", "eps_theory_m", "eps_mc_m", "mc_stderr_m", "degenerate_trials")
PANELS = (("eps_theory_m", "theory"), ("eps_mc_m", "Monte Carlo"))


def format_row(rec):
    nums = (rec.x, rec.y, rec.e_ps_theory, rec.e_ps_mc, rec.mc_std_err)
    return [f"{v:.17e}" if np.isfinite(v) else "nan" for v in nums] + [str(rec.degenerate_trials)]


def write_csv(result, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in result.records:
        w.writerow(format_row(rec))


def read_csv(path):
    """Parse a sweep CSV into a dict of float columns; raises ValueError if malformed."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError(f"{path}: header must be {','.join(CSV_HEADER)}")
    if len(rows) < 2:
        raise ValueError(f"{path}: no data rows")
    body = rows[1:]
    for i, row in enumerate(body, start=2):
        if len(row) != len(CSV_HEADER):
            raise ValueError(f"{path}:{i}: expected {len(CSV_HEADER)} fields")
    data = np.array(body, dtype=float)
    return {name: data[:, j] for j, name in enumerate(CSV_HEADER)}


def _grid(cols, name):
    xs = np.unique(cols["x_m"])
    ys = np.unique(cols["y_m"])
    z = np.full((len(ys), len(xs)), np.nan)
    ix = np.searchsorted(xs, cols["x_m"])
    iy = np.searchsorted(ys, cols["y_m"])
    z[iy, ix] = cols[name]
    return xs, ys, z


def _edges(c):
    if len(c) == 1:
        return np.array([c[0] - 0.5, c[0] + 0.5])
    mid = (c[1:] + c[:-1]) / 2
    return np.concatenate([[2 * c[0] - mid[0]], mid, [2 * c[-1] - mid[-1]]])


def render_svg(cols, out_path, estimators=()):
    """Two-panel heatmap (theory, Monte Carlo) of ``e_ps`` in cm.

    ``estimators`` are (x, y) pairs marked with stars. Output bytes depend
    only on the inputs.
    """
    fig = Figure(figsize=(10, 4.2))
    axes = fig.subplots(1, len(PANELS))
    values = np.concatenate([cols[name] for name, _ in PANELS]) * 100
    finite = values[np.isfinite(values)]
    vmin, vmax = (finite.min(), finite.max()) if finite.size else (0.0, 1.0)
    for ax, (name, title) in zip(axes, PANELS):
        xs, ys, z = _grid(cols, name)
        mesh = ax.pcolormesh(_edges(xs), _edges(ys), np.ma.masked_invalid(z * 100),
                             cmap="viridis", shading="flat", vmin=vmin, vmax=vmax)
        mid = (xs[0] + xs[-1]) / 2
        fig.colorbar(mesh, ax=ax, label="$e_{ps}$ (cm)")
        for x, y in estimators:
            ax.plot([x], [y], marker="*", color="tab:blue", markersize=16,
                    markeredgecolor="white", linestyle="none", clip_on=False)
            right = x > mid
            ax.annotate(f"({x:g}, {y:g})", (x, y), textcoords="offset points",
                        xytext=(-8 if right else 8, 8), ha="right" if right else "left",
                        color="white", fontsize=8)
        ax.set_title(f"LED positioning error, {title}")
        ax.set_xlabel("x (m)")
        ax.set_ylabel("y (m)")
        ax.set_aspect("equal")
    fig.tight_layout()
    with matplotlib.rc_context({"svg.hashsalt": "beaconloc", "svg.fonttype": "path"}):
        fig.savefig(out_path, format="svg", metadata={"Date": None})
