# Quantum witness of the undriven and the chirped qubit along time.
#
# Undriven, the witness oscillates at omega0 and drops to zero every full
# turn tau = 2 pi n.  A chirp moves the maxima around; the envelope
# exp(-gamma tau)/2 (half the l1-coherence) caps it either way.

import math

import numpy as np

from drivenqubit import sweep

omega0, gamma = 1.0, 0.2
taus = np.linspace(0.0, 15.0, 16)

undriven = sweep.trace("witness", taus, 0.0, omega0, gamma)
driven = sweep.trace("witness", taus, 0.95, omega0, gamma)

print(f"{'tau':>6} {'W (delta=0)':>12} {'W (delta=0.95)':>15} {'bound':>8}")
for t, w0, w1, b in zip(taus, undriven.value, driven.value, undriven.bound):
    print(f"{t:6.2f} {w0:12.5f} {w1:15.5f} {b:8.5f}")

# the zeros of the undriven witness
for n in range(1, 4):
    w = sweep.evaluate("witness", 2 * math.pi * n, 0.0, omega0, gamma)
    print(f"W(2 pi * {n}, delta=0) = {w:.1e}")
