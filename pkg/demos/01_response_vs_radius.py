"""
Transition probability against orbit radius
===========================================

A detector on a circular orbit at height 0.2 above the mirror, gap 0.1.
For gentle accelerations P(R) climbs, peaks and settles; push the
acceleration past about 7 and the peak disappears.
"""

import numpy as np

from udw_harvest import CriticalQuery, DetectorSpec, derive_circular, find_critical, transition_circular
from udw_harvest.sweep import interior_peaks

det = DetectorSpec(gap_Omega=0.1)
R = np.geomspace(0.01, 10, 200)

for a in (2.0, 4.0, 8.0, 16.0):
    P = np.array([transition_circular(derive_circular(a, r, 0.2), det).p_over_lambda2 for r in R])
    peaks = interior_peaks(P)
    where = ", ".join(f"R={R[i]:.3f}" for i in peaks) or "none"
    print(f"a={a:5.1f}  P(0.01)={P[0]:.4e}  P(10)={P[-1]:.4e}  peaks: {where}")

# Where does the peak vanish?  Bisect on "P(R) has no interior maximum".
crit = find_critical(CriticalQuery("accel_monotonicity", {"Omega_sigma": 0.1, "dz_over_sigma": 0.2},
                                   (4.0, 16.0), tolerance=0.02))
print(f"\ncritical acceleration ~ {crit.value:.3f}  (bracket {crit.bracket[0]:.3f}..{crit.bracket[1]:.3f})")
