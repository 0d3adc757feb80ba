"""
Sign scans of the auxiliary functions
=====================================

The sufficiency arguments reduce to sign statements about one-variable
functions on ``(0, 1]``.  A scan reports the minimum on a grid and flags an
anomaly only where the statement is claimed to hold.
"""

import numpy as np

from copson import aux_sign_scan
from copson.auxiliary import amgm_lower_bound, f_prime_mean

for fn, L, M, p in [("g", 1.0, 0.0, 0.2), ("u", 1.0, 0.0, 0.2),
                    ("v", 0.5, 0.0, 1 / 16), ("h", 0.5, 0.0, 1 / 16),
                    ("ineq_3_1", 0.8, 0.05, 0.05), ("f", 1.0, 0.0, 0.5)]:
    s = aux_sign_scan(fn, L, M, p)
    print(f"{s.function_id:9s} min={s.min_value:+.4e} at x={s.argmin_x:.4f} "
          f"certified={s.certified} anomaly={s.anomaly()}")

# AM-GM step: arithmetic mean of three terms >= their geometric mean
x = np.linspace(0.01, 1, 5)
print(f_prime_mean(0.8, 0.05, 0.05, x) - amgm_lower_bound(0.8, 0.05, 0.05, x))
