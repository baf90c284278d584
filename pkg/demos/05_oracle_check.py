# Cross-check of the closed forms against brute-force density-matrix
# integration (RK4, step 1e-3) on seeded random parameters.

import json

from drivenqubit.cli import run_verify

report = run_verify(samples=40, seed=7)
print(json.dumps(report, indent=1))
