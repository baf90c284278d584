# Temporal steering: violating S_2 <= 1 on demand.
#
# The undriven S_2 is zero at tau = 3 pi / 2.  Setting the chirp to
# (2 k pi - 2 omega0 tau) / tau^2 with k = 2 restores the full value
# 2 exp(-2 gamma tau), above the classical bound.

import math

from drivenqubit import DrivingProtocol, NoiseModel, steering_point, steering_extrema, tailor

tau, omega0, gamma = 1.5 * math.pi, 1.0, 0.06
noise = NoiseModel(gamma)

print("undriven:", steering_point(tau, DrivingProtocol(omega0, 0.0), noise))

res = tailor("steering", tau, omega0, gamma)
print(f"delta* = {res.delta_star:.8f}   4/(9 pi) = {4 / (9 * math.pi):.8f}")
print("driven:  ", steering_point(tau, DrivingProtocol(omega0, res.delta_star), noise))

for k in range(0, 4):
    d0, d1 = steering_extrema(k, tau, omega0, noise)
    print(f"k={k}: max at {d1.delta:+.4f}, min at {d0.delta:+.4f}")
