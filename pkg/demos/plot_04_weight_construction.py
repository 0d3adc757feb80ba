"""
Building the auxiliary weights
==============================

The recursion ``w_{n+1} = (1 + (L/p - 2) lambda_n/Lambda_n) w_n`` makes a
weighted average identity exact.  The Hoelder step on these weights is then
equivalent to the per-index condition; the two margin sequences coincide.
"""

import numpy as np

from copson import WeightFamily, build_weights, check_cond_16, verify_21, verify_22
from copson.weight_builder import margins_21
from copson.conditions import cond_16_margins

fam = WeightFamily.power_kernel(2)
L, p, N = 0.5, 1 / 16, 20_000

trace = build_weights(fam, L, p, N)
print("log w at n = 1, 10, 100, N+1:", trace.log_w[[0, 9, 99, N]])

# the averaged identity holds to rounding
print("max relative residual:", verify_22(fam, L, p, trace))

# margins agree index by index
diff = np.max(np.abs(margins_21(trace) - cond_16_margins(fam, L, p, N)))
print("max |margin difference|:", diff)
print(verify_21(fam, L, p, trace).passed, check_cond_16(fam, L, p, N).passed)
