"""
Weight families and their gap sequences
=======================================

Each family gives weights ``lambda_n`` and partial sums ``Lambda_n``.  The
gap ``Lambda_{n+1}/lambda_{n+1} - Lambda_n/lambda_n`` controls which
exponents the reversed inequality can be certified for.
"""

import numpy as np

from copson import WeightFamily, l_gaps, sup_l_gap

families = [
    WeightFamily.unit(),
    WeightFamily.power_diff(2),
    WeightFamily.power_kernel(2),
    WeightFamily.power_kernel(3),
]

# first few weights and partial sums
for fam in families:
    print(fam.spec, np.round(fam.weights(5), 4), np.round(fam.partial_sums(5), 4))

# gaps: unit is exactly 1, the power families approach 1/alpha
N = 100_000
for fam in families:
    sup = sup_l_gap(fam, N)
    print(f"{fam.spec:16s} gap[1..3]={np.round(l_gaps(fam, 3), 5)}  "
          f"sup~{sup.estimate:.6f}  monotone={sup.monotone}")

# powerdiff:2 has the closed form (2n^2 - 1)/(4n^2 - 1)
n = np.arange(1, 11)
print(np.max(np.abs(l_gaps(WeightFamily.power_diff(2), 10) - (2 * n**2 - 1) / (4 * n**2 - 1))))
