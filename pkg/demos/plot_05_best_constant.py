"""
Upper bounds on the best constant
=================================

Minimising the ratio over truncated sequences gives upper bounds on the best
constant.  The bounds improve slowly with ``N`` because near-extremal
sequences have heavy tails.
"""

import numpy as np

from copson import (
    OptimizerConfig,
    WeightFamily,
    brute_force_oracle,
    estimate_schedule,
    extremal_probe,
    minimize_ratio,
    stationarity_check,
)

unit = WeightFamily.unit()

# N = 2, p = 1/2: the ratio drops below 1, so no constant >= 1 is valid
o = brute_force_oracle(unit, 0.5, 2)
r = minimize_ratio(unit, 0.5, OptimizerConfig(N=2))
print(f"grid {o.value:.8f}  descent {r.value:.8f}  x2/x1 = {r.x[1] / r.x[0]:.4f}")
print("stationarity:", stationarity_check(unit, r.x, 0.5))

# schedule in N against (p/(1-p))^p
p = 0.2
for est in estimate_schedule(unit, p, (50, 100, 200)):
    print(f"N={est.x.size:4d} value={est.value:.6f} target={(p / (1 - p)) ** p:.6f} iters={est.iterations}")

# extremal probe x_n = n^(-1/p - eps): the truncation error decays slowly
pd2 = WeightFamily.power_diff(2)
for N in (10**3, 10**4, 10**5, 10**6):
    print(N, extremal_probe(pd2, 1 / 16, 1e-3, N), (1 / 7) ** (1 / 16))
