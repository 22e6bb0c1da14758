"""
Circular orbit versus straight-line acceleration
================================================

Same gap and mirror distance, R = 2.  At low acceleration the circular
detector clicks more; somewhere above a = 20 the uniformly accelerated
one overtakes it.
"""

import numpy as np

from udw_harvest import (CriticalQuery, DetectorSpec, UniformKinematics, derive_circular,
                         find_critical, transition_circular, transition_uniform)

det = DetectorSpec(0.1)
for a in np.array([1, 5, 10, 20, 25, 40.0]):
    pc = transition_circular(derive_circular(a, 2.0, 0.05), det).p_over_lambda2
    pu = transition_uniform(UniformKinematics(a, 0.05), det).p_over_lambda2
    print(f"a={a:5.1f}   circular {pc:.6f}   uniform {pu:.6f}   diff {pu - pc:+.2e}")

root = find_critical(CriticalQuery("circ_uniform_crossing",
                                   {"R_over_sigma": 2.0, "Omega_sigma": 0.1, "dz_over_sigma": 0.05},
                                   (10.0, 30.0), tolerance=1e-3))
print(f"\ncurves cross at a = {root.value:.3f}")

# the mirror's influence shows up as two extra pieces of P
r = transition_circular(derive_circular(root.value, 2.0, 0.05), det)
print(f"free {r.term_free_oscillatory:+.5f}  static {r.term_static:+.5f}  "
      f"image PV {r.term_boundary_pv:+.5f}  residue {r.term_residue:+.5f}")
