"""The auxiliary weights ``w`` behind the per-index condition.

``w_1 = 1`` and ``w_{n+1} = (1 + (L/p - 2) lambda_n/Lambda_n) w_n``.  With
this choice the averaged identity

    (1/Lambda_n) sum_{i<=n} lambda_i w_i = p/(L-p) * w_{n+1}

holds for every ``n``, and the Hoelder-type inequality that the weights have
to satisfy turns into the per-index condition checked by
:func:`copson.conditions.check_cond_16`.

The weights grow like a power of ``n`` (exponent up to ``alpha*(L/p-2)``), so
they are stored and manipulated as logarithms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._summation import compensated_cumsum, log_cumsum
from .conditions import COND_2_1, DEFAULT_TOL, Certificate, _from_margins
from .weights import WeightFamily


@dataclass(frozen=True)
class WeightTrace:
    """``log w_1 .. log w_{N+1}`` together with the parameters used."""

    family: WeightFamily
    L: float
    p: float
    log_w: np.ndarray

    @property
    def N(self):
        return self.log_w.shape[0] - 1

    @property
    def w(self):
        return np.exp(self.log_w)


def _check(L, p):
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if not L > p:
        raise ValueError(f"need L > p, got L={L}, p={p}")


def build_weights(family: WeightFamily, L, p, N) -> WeightTrace:
    L, p = float(L), float(p)
    _check(L, p)
    lam = family.weights(N)
    Lam = family.partial_sums(N)
    factors = 1 + (L / p - 2) * (lam / Lam)
    bad = np.flatnonzero(factors <= 0)
    if bad.size:
        raise ValueError(f"non-positive weight factor at n={int(bad[0]) + 1}")
    log_w = np.concatenate([[0.0], compensated_cumsum(np.log(factors))])
    return WeightTrace(family, L, p, log_w)


def _log_weighted_sums(trace):
    lam = trace.family.weights(trace.N)
    return log_cumsum(np.log(lam) + trace.log_w[:-1])


def residuals_22(trace: WeightTrace) -> np.ndarray:
    """Relative residual of the averaged identity for ``n = 1..N``."""
    c = trace.p / (trace.L - trace.p)
    Lam = trace.family.partial_sums(trace.N)
    log_avg = _log_weighted_sums(trace) - np.log(Lam)
    return np.expm1(log_avg - np.log(c) - trace.log_w[1:])


def verify_22(family: WeightFamily, L, p, trace: WeightTrace) -> float:
    """Max relative residual of the averaged identity over ``n <= N``."""
    if trace.family != family or trace.L != float(L) or trace.p != float(p):
        raise ValueError("trace was built with different parameters")
    return float(np.max(np.abs(residuals_22(trace))))


def margins_21(trace: WeightTrace) -> np.ndarray:
    """Per-index margins of the Hoelder-step inequality, ``n = 1..N``.

    With ``r = 1/(1-p)`` the inequality is ``S_n^{-r} <= RHS_n`` where
    ``S_n = sum_{i<=n} lambda_i w_i``.  The returned margin is
    ``(x_n / c) * (RHS_n * S_n^r - 1)`` with ``x_n = lambda_n/Lambda_n`` and
    ``c = p/(L-p)``: a positive rescaling that puts it on the same scale as
    the per-index condition margins.
    """
    L, p, N = trace.L, trace.p, trace.N
    r = 1 / (1 - p)
    c = p / (L - p)
    lam = trace.family.weights(N + 1)
    Lam = trace.family.partial_sums(N + 1)
    ll, lL, lw = np.log(lam), np.log(Lam), trace.log_w
    log_S = _log_weighted_sums(trace)
    common = -p * r * np.log(c) + p * r * ll[:-1] + r * log_S
    t1 = np.exp(common - r * ll[:-1] - r * lw[:-1] - p * r * lL[:-1])
    t2 = np.exp(common - r * ll[1:] - r * lw[1:] - p * r * lL[1:])
    x = lam[:-1] / Lam[:-1]
    return x / c * ((t1 - 1) - t2)


def verify_21(family: WeightFamily, L, p, trace: WeightTrace, N=None,
              tol=DEFAULT_TOL) -> Certificate:
    if trace.family != family or trace.L != float(L) or trace.p != float(p):
        raise ValueError("trace was built with different parameters")
    N = trace.N if N is None else int(N)
    if N > trace.N:
        raise ValueError(f"trace covers n <= {trace.N}, asked for {N}")
    with np.errstate(all="ignore"):
        margins = margins_21(trace)[:N]
    return _from_margins(COND_2_1, margins,
                         {"family": family.spec, "L": L, "p": p}, tol)
