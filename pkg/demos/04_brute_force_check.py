"""
Checking the fast formulas against brute force
==============================================

The oracle never sees the reduced formulas: it integrates the regulated
Wightman function over both proper times at a few finite epsilons and
extrapolates to zero.  Expect a few seconds per point.
"""

from udw_harvest import DetectorSpec, PairGeometry, derive_circular, transition_circular, x_comoving_circular
from udw_harvest.oracle import CircularWorldline, EpsilonLadder, oracle_transition, oracle_x

ladder = EpsilonLadder()
print("ladder", ladder.eps_values, "digest", ladder.digest())

fast = transition_circular(derive_circular(2, 1, 0.3), DetectorSpec(0.5)).p_over_lambda2
slow = oracle_transition(CircularWorldline.from_accel(2, 1, 0.3), 0.5, ladder)
print(f"P  fast {fast:.10f}  oracle {slow.real:.10f}  rel {abs(fast - slow.real) / fast:.1e}")
for e, v in zip(ladder.eps_values, slow.per_eps):
    print(f"   eps={e:.2e}  P_eps={v.real:.10f}")

kin = derive_circular(1, 1, 0.2)
fast = x_comoving_circular(kin, PairGeometry(0.2, 0.2), DetectorSpec(0.1)).value
slow = oracle_x(CircularWorldline.from_accel(1, 1, 0.2), CircularWorldline.from_accel(1, 1, 0.4), 0.1)
print(f"X  fast {fast:.8f}\n   oracle {slow.value:.8f}  rel {abs(fast - slow.value) / abs(fast):.1e}")

# detectors turning at different rates: only the oracle can do this one
gen = oracle_x(CircularWorldline(1, 0.3, 0.5), CircularWorldline(1, 0.5, 1.0), 0.1)
print(f"X(omega_A=0.3, omega_B=0.5) = {gen.value:.6f}  (last increment {gen.increment:.1e})")
