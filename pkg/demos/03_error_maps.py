# %% [markdown]
# # Error maps for two estimator layouts
#
# Analytical ``e_ps`` over the ceiling for widely spaced (0, 2, 0) /
# (4, 2, 0) heads and closely spaced (1.5, 2, 0) / (2.5, 2, 0) heads,
# checked against Monte Carlo sweeps. Heatmaps are written next to this
# script.

# %%
import os
from pathlib import Path

import numpy as np

from beaconloc import config
from beaconloc.montecarlo import ExperimentSpec, sweep
from beaconloc.plotting import read_csv, render_svg, write_csv

OUT = Path(os.environ.get("BEACONLOC_DEMO_OUT", Path(__file__).parent))
TRIALS = int(os.environ.get("BEACONLOC_DEMO_TRIALS", 5_000))
STEP = float(os.environ.get("BEACONLOC_DEMO_STEP", 0.25))

# %%
results = {}
for name in ("fig3", "fig4"):
    scene, spec = config.load_preset(name)
    spec = ExperimentSpec(scene, step=STEP, trials_per_point=TRIALS, seed=1)
    results[name] = res = sweep(spec)
    th, mc = res.column("e_ps_theory"), res.column("e_ps_mc")
    worst = res.records[int(np.argmax(th))]
    best = res.records[int(np.argmin(th))]
    print(f"{name}: theory max {th.max() * 100:.2f} cm at ({worst.x:g}, {worst.y:g}), "
          f"min {th.min() * 100:.2f} cm at ({best.x:g}, {best.y:g}); "
          f"largest theory/MC gap {np.max(np.abs(mc - th) / th) * 100:.1f}%")

# %% [markdown]
# Save CSV and SVG for each layout.

# %%
for name, res in results.items():
    csv_path = OUT / f"{name}_sweep.csv"
    with open(csv_path, "w", newline="") as fh:
        write_csv(res, fh)
    cols = read_csv(csv_path)
    stars = [tuple(e.position[:2]) for e in res.spec.scene.estimators]
    render_svg(cols, OUT / f"{name}_eps.svg", stars)
    print("wrote", csv_path.name, f"{name}_eps.svg")

# %% [markdown]
# Bringing the heads together makes every corner worse.

# %%
g3, g4 = results["fig3"].as_grid("e_ps_theory"), results["fig4"].as_grid("e_ps_theory")
for (i, j) in [(0, 0), (0, -1), (-1, 0), (-1, -1)]:
    print(f"corner: {g3[i, j] * 100:.2f} cm -> {g4[i, j] * 100:.2f} cm")
