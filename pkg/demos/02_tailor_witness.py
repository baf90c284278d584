# Turning a witness zero into a maximum.
#
# At tau = 2 pi the undriven witness vanishes.  Scan the chirp rate for
# stationary points and pick the one that reaches the dephasing limit.

import math

from drivenqubit import SearchWindow, find_extrema, tailor

tau, omega0, gamma = 2 * math.pi, 1.0, 0.2

window = SearchWindow(0.5, 1.5)
for e in find_extrema("witness", tau, omega0, gamma, window):
    print(f"delta = {e.delta:.6f}  {e.kind:8s}  W = {e.value:.6f}")

best = tailor("witness", tau, omega0, gamma, window)
print(f"\ndelta* = {best.delta_star:.6f}  (3/pi = {3 / math.pi:.6f})")
print(f"W(delta*) = {best.target_value:.6f} of the bound {best.bound_value:.6f}")

# With the default window the weakest saturating drive wins instead: at
# omega0 tau = 2 pi the witness looks exactly like the omega0 = 0 case,
# whose first maximum sits at 4 pi / tau^2 = 1/pi.
print(f"default window: delta* = {tailor('witness', tau, omega0, gamma).delta_star:.6f}")
