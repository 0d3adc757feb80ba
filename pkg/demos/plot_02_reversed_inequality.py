"""
Evaluating both sides of the reversed inequality
================================================

For ``0 < p < 1`` the weighted tail averages dominate ``sum x_n^p`` up to a
constant.  Here we evaluate both sides on a few sequences.
"""

import numpy as np

from copson import WeightFamily, copson_constant, dual_sides, ratio_functional, verify_inequality

unit = WeightFamily.unit()
p, L = 0.25, 1.0
rng = np.random.default_rng(1)

# the ratio never drops below p^p for unit weights
for name, x in [("ones", np.ones(50)),
                ("geometric", 0.5 ** np.arange(50)),
                ("random", rng.exponential(size=50))]:
    print(f"{name:10s} ratio={ratio_functional(unit, x, p):.6f}  p^p={p**p:.6f}  "
          f"constant={copson_constant(p, L):.6f}")

# verify_inequality reports both sides and the margin against the constant
print(verify_inequality(unit, rng.exponential(size=200), p, L))

# the dual form, with q = p/(p-1) < 0
lhs, rhs = dual_sides(unit, rng.exponential(size=200), p, L)
print(f"dual: lhs={lhs:.6g} <= rhs={rhs:.6g}")
