"""Both sides of the reversed Copson inequality on finite sequences.

For ``0 < p < 1``, ``L > p`` and a weight family the inequality reads::

    sum_n ( (1/Lambda_n) sum_{k>=n} lambda_k x_k )^p >= (p/(L-p))^p sum_n x_n^p

and its dual, with ``q = p/(p-1) < 0`` and strictly positive ``x``::

    sum_n ( lambda_n sum_{k<=n} x_k/Lambda_k )^q <= (p/(L-p))^q sum_n x_n^q
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .weights import WeightFamily


def _check_p(p):
    if not (0 < p < 1):
        raise ValueError(f"p must lie in (0, 1), got {p}")


@dataclass(frozen=True)
class Exponents:
    """Exponent ``p``, its conjugate ``q`` and the parameters ``L``, ``M``."""

    p: float
    L: float
    M: float = 0.0

    def __post_init__(self):
        _check_p(self.p)
        if not self.L > self.p:
            raise ValueError(f"need L > p, got L={self.L}, p={self.p}")
        if self.M < 0:
            raise ValueError(f"need M >= 0, got {self.M}")

    @property
    def q(self):
        return self.p / (self.p - 1.0)

    @property
    def constant(self):
        return copson_constant(self.p, self.L)


def copson_constant(p, L):
    """The constant ``(p/(L-p))**p``."""
    _check_p(p)
    if not L > p:
        raise ValueError(f"need L > p, got L={L}, p={p}")
    return (p / (L - p)) ** p


class TruncatedSequence(np.ndarray):
    """Finite, non-negative, not identically zero sequence ``x_1..x_N``.

    A thin ndarray subclass; construct it with :func:`as_sequence`.
    """


def as_sequence(x, strictly_positive=False) -> TruncatedSequence:
    arr = np.array(x, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("sequence must have at least one entry")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sequence entries must be finite")
    if np.any(arr < 0):
        raise ValueError("sequence entries must be non-negative")
    if strictly_positive:
        if np.any(arr <= 0):
            raise ValueError("sequence entries must be strictly positive")
    elif not np.any(arr > 0):
        raise ValueError("sequence must have a positive entry")
    return arr.view(TruncatedSequence)


def tail_sums(family: WeightFamily, x) -> np.ndarray:
    """``S_n = sum_{k=n..N} lambda_k x_k`` by one backward accumulation."""
    x = np.asarray(x, dtype=float)
    lam = family.weights(x.shape[0])
    return np.cumsum((lam * x)[::-1])[::-1]


def copson_lhs(family: WeightFamily, x, p: float) -> float:
    """Left side of the inequality truncated at ``N = len(x)``."""
    _check_p(p)
    x = as_sequence(x)
    S = tail_sums(family, x)
    Lam = family.partial_sums(x.shape[0])
    # 0**p == 0 handles trailing zeros
    return math.fsum(((S / Lam) ** p).tolist())


def power_sum(x, p):
    return math.fsum((np.asarray(x, dtype=float) ** p).tolist())


def ratio_functional(family: WeightFamily, x, p: float) -> float:
    """Scale invariant quotient ``copson_lhs / sum x_n**p``."""
    x = as_sequence(x)
    return copson_lhs(family, x, p) / power_sum(x, p)


def verify_inequality(family: WeightFamily, x, p: float, L: float) -> float:
    """Return ``ratio - (p/(L-p))**p``; non-negative means ``x`` satisfies it."""
    c = copson_constant(p, L)
    return ratio_functional(family, x, p) - c


def dual_sides(family: WeightFamily, x, p: float, L: float):
    """Return ``(lhs, rhs)`` of the dual inequality; it holds when ``lhs <= rhs``.

    Zero entries are rejected: with ``q < 0`` they would be singular.
    """
    c = copson_constant(p, L)
    x = as_sequence(x, strictly_positive=True)
    q = p / (p - 1.0)
    N = x.shape[0]
    lam = family.weights(N)
    Lam = family.partial_sums(N)
    heads = np.cumsum(x / Lam)
    lhs = math.fsum(((lam * heads) ** q).tolist())
    rhs = c ** q * math.fsum((x ** q).tolist())
    return lhs, rhs
