"""
Finite-horizon certificates
===========================

The per-index condition, the gap bound and the polynomial test each return a
``Certificate``.  Passing means every checked index has margin above
``-tol``; it is numerical evidence up to ``N``, not a proof.
"""

from fractions import Fraction as F

from copson import (
    WeightFamily,
    a1,
    a2,
    check_cond_16,
    check_cond_17,
    theorem1_applicable,
    theorem1prime_certificate,
)

unit = WeightFamily.unit()

# unit weights with L = 1: the polynomial test covers p <= 1/3 exactly
for p in (F(1, 10), F(1, 5), F(1, 3)):
    d = theorem1_applicable(1, p)
    print(p, d.applicable, d.reason)
print("a1(1, 1/3) =", a1(1, F(1, 3)), "  a2(1/2, 1/16) =", a2(F(1, 2), F(1, 16)))

# per-index condition for the same cases, N = 100000
for p in (0.1, 0.2, 1 / 3):
    c = check_cond_16(unit, 1, p, 100_000)
    print(f"p={p:.4f} passed={c.passed} min_margin={c.min_margin:.3e} at n={c.argmin_n}")

# p = 1/2 sits outside every sufficient condition
print(check_cond_16(unit, 1, 0.5, 1000).passed)

# power-difference weights with L = 1/2
pd2 = WeightFamily.power_diff(2)
print(check_cond_17(pd2, 0.5, 100_000).to_json())
print(theorem1prime_certificate(pd2, 0.5, 1 / 16, 100_000).passed)
