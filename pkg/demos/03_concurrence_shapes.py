"""
How much entanglement can two detectors pull out of the vacuum?
===============================================================

Detector A flies at height dz, B sits dd above it on the same axis.
The concurrence C = 2 max(0, |X| - sqrt(P_A P_B)) is what survives.
"""

import numpy as np

from udw_harvest import PairConfig, harvest_pair
from udw_harvest.sweep import interior_peaks, rises_then_falls_to_zero, zero_window


def C(a, Om, dz, dd, R, traj="circular"):
    return harvest_pair(PairConfig(traj, a, Om, dz, dd, R)).concurrence


# -- against the mirror distance: up, down, then flat
zs = np.geomspace(0.01, 10, 120)
c = np.array([C(1.0, 0.1, z, 0.2, 1.0) for z in zs])
top = int(np.argmax(c))
print(f"C(dz): starts {c[0]:.4f}, peaks {c[top]:.4f} at dz={zs[top]:.2f}, ends {c[-1]:.4f}")

# wider pair, a=2: the same sweep now has two bumps
c = np.array([C(2.0, 0.1, z, 1.05, 0.5) for z in np.geomspace(0.01, 10, 200)])
print(f"dd=1.05: {len(interior_peaks(c))} peaks")

# -- against the radius, large gap: a stretch of exactly zero
R = np.geomspace(0.01, 10, 200)
c = np.array([C(3.0, 1.8, 0.2, 0.2, r) for r in R])
lo, hi = zero_window(c)
print(f"Omega=1.8: C vanishes for R in [{R[lo]:.4f}, {R[hi]:.4f}], recovers to {c[-1]:.4f}")

# -- against the acceleration: rise, then death
acc = np.geomspace(0.05, 40, 200)
c = np.array([C(a, 0.1, 0.2, 0.2, 0.2) for a in acc])
dead = acc[np.argmax(c == 0)]
print(f"C(a): peak {c.max():.4f} at a={acc[np.argmax(c)]:.2f}, zero from a~{dead:.1f};"
      f" rise-then-fall-to-zero: {rises_then_falls_to_zero(c)}")

# the uniformly accelerated pair as a reference
print(f"uniform pair at a=1: C = {C(1.0, 0.1, 0.2, 0.2, None, 'uniform'):.4f}")
