# Density grids in (tau, delta) with the analytic maximum curves on top,
# written as CSV/JSON for plotting elsewhere.

import sys
from pathlib import Path

import numpy as np

from drivenqubit import GridSpec, export, grid, overlay_extrema

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")

frames = {
    "witness_grid": GridSpec(omega0=0.0, gamma=0.1, target="witness"),
    "steering_grid": GridSpec(omega0=1.0, gamma=0.1, target="steering"),
}
for name, spec in frames.items():
    g = grid(spec)
    g.overlays = overlay_extrema(spec, range(0, 4))
    export(g, "json", out / f"{name}.json")
    export(g, "csv", out / f"{name}.csv")

    # where is the ridge at the last time slice?
    j = int(np.argmax(g.values[-1]))
    print(f"{name}: {g.values.shape}, row tau={spec.taus[-1]:.2f} peaks at delta={spec.deltas[j]:.4f}")
    for o in g.overlays[:3]:
        print(f"  overlay {o.branch} k={o.k}: {len(o.points)} points")
