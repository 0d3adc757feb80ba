"""Upper bounds on the best constant via the ratio functional.

The best constant of the inequality for a given family and ``p`` is the
infimum of ``ratio_functional`` over all non-negative sequences.  Anything
computed here on a truncated sequence is an upper bound on that infimum.

All evaluations work with ``t = log x`` so that fast-decaying sequences such
as ``n**(-1/p)`` with small ``p`` neither underflow nor lose the tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .inequality import as_sequence
from .weights import WeightFamily

DEFAULT_SCHEDULE = (250, 500, 1000, 2000)


def _logsumexp(a):
    m = np.max(a)
    if not np.isfinite(m):
        return m
    return m + math.log(np.sum(np.exp(a - m)))


def _log_ratio(log_lam, log_Lam, t, p, with_grad=False):
    """``log ratio`` at ``x = exp(t)``, optionally with its gradient in ``t``."""
    t = t - np.max(t)
    log_terms = log_lam + t
    log_S = np.logaddexp.accumulate(log_terms[::-1])[::-1]
    log_A = p * (log_S - log_Lam)
    log_num = _logsumexp(log_A)
    log_den = _logsumexp(p * t)
    value = log_num - log_den
    if not with_grad:
        return value
    # d num / d t_j = lambda_j x_j sum_{n<=j} p A_n / S_n
    log_G = np.logaddexp.accumulate(log_A - log_S)
    grad = p * np.exp(log_terms + log_G - log_num) - p * np.exp(p * t - log_den)
    return value, grad - grad.mean()


def _logs(family, N):
    return np.log(family.weights(N)), np.log(family.partial_sums(N))


def _check_p(p):
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")


def extremal_probe(family: WeightFamily, p, eps, N) -> float:
    """Ratio at ``x_n = n**(-1/p - eps)``, ``n <= N``."""
    _check_p(p)
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    t = (-1 / p - eps) * np.log(np.arange(1, N + 1, dtype=float))
    return math.exp(_log_ratio(*_logs(family, N), t, p))


def ratio_gradient(family: WeightFamily, x, p) -> np.ndarray:
    """Gradient of ``log ratio_functional`` with respect to ``x``."""
    _check_p(p)
    x = as_sequence(x, strictly_positive=True)
    _, g = _log_ratio(*_logs(family, x.shape[0]), np.log(x), p, with_grad=True)
    return np.asarray(g / x)


def lhs_gradient(family: WeightFamily, x, p) -> np.ndarray:
    """Gradient of the left side: ``sum_{n<=j} p (S_n/Lambda_n)**(p-1) lambda_j/Lambda_n``."""
    x = as_sequence(x, strictly_positive=True)
    N = x.shape[0]
    lam, Lam = family.weights(N), family.partial_sums(N)
    S = np.cumsum((lam * x)[::-1])[::-1]
    return lam * np.cumsum(p * (S / Lam) ** (p - 1) / Lam)


def stationarity_check(family: WeightFamily, x, p) -> float:
    """Norm of the gradient of ``log ratio`` in log-coordinates.

    Rescaling ``x`` moves along ``(1, ..., 1)`` in log-coordinates; that
    component is projected out, leaving the gradient on the quotient.
    """
    _check_p(p)
    x = as_sequence(x, strictly_positive=True)
    if x.shape[0] == 1:
        return 0.0
    _, g = _log_ratio(*_logs(family, x.shape[0]), np.log(x), p, with_grad=True)
    return float(np.linalg.norm(g))


@dataclass(frozen=True)
class OptimizerConfig:
    N: int
    max_iters: int = 20_000
    step_rule: str = "backtracking"
    init: str = "extremal"
    eps: float = 0.1
    tol_stationarity: float = 1e-9
    seed: int = 0
    step: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.max_iters < 0:
            raise ValueError("max_iters must be >= 0")
        if self.step_rule not in ("fixed", "backtracking"):
            raise ValueError(f"unknown step rule {self.step_rule!r}")
        if self.init not in ("uniform", "extremal", "random"):
            raise ValueError(f"unknown init {self.init!r}")
        if not (self.eps > 0 and self.tol_stationarity > 0 and self.step > 0):
            raise ValueError("eps, tol_stationarity and step must be positive")


@dataclass
class RatioEstimate:
    value: float
    x: np.ndarray
    iterations: int
    residual: float
    initial_value: float
    converged: bool
    trace: list = field(default_factory=list, repr=False)


def _initial_t(config, p):
    n = np.arange(1, config.N + 1, dtype=float)
    if config.init == "uniform":
        return np.zeros(config.N)
    if config.init == "extremal":
        return (-1 / p - config.eps) * np.log(n)
    rng = np.random.default_rng(config.seed)
    return rng.normal(0.0, 2.0, size=config.N)


def _normalise(t, p):
    # sum x**p == 1
    return t - _logsumexp(p * t) / p


def minimize_ratio(family: WeightFamily, p, config: OptimizerConfig) -> RatioEstimate:
    """Gradient descent on ``log ratio`` over ``x = exp(t)``.

    With ``step_rule="backtracking"`` each step starts from a
    Barzilai-Borwein guess and is halved (at most 50 times) until the
    Armijo condition holds; when no halving succeeds the run stops.  The
    best point visited is returned, so ``value`` never exceeds the
    starting ratio.
    """
    _check_p(p)
    logs = _logs(family, config.N)
    t = _normalise(_initial_t(config, p), p)
    f, g = _log_ratio(*logs, t, p, with_grad=True)
    initial = math.exp(f)
    trace = [initial]
    best_f, best_t, best_g = f, t, g
    step = config.step
    converged = config.N == 1
    it = 0
    t_prev = g_prev = None
    while not converged and it < config.max_iters:
        gnorm2 = float(g @ g)
        if math.sqrt(gnorm2) <= config.tol_stationarity:
            converged = True
            break
        if config.step_rule == "fixed":
            t_new = t - config.step * g
            f_new, g_new = _log_ratio(*logs, t_new, p, with_grad=True)
        else:
            if t_prev is not None:
                s, y = t - t_prev, g - g_prev
                sy = float(s @ y)
                if sy > 0:
                    step = float(s @ s) / sy
            for _ in range(50):
                t_new = t - step * g
                f_new, g_new = _log_ratio(*logs, t_new, p, with_grad=True)
                # strict decrease too: below rounding the Armijo slack vanishes
                if f_new <= f - 1e-4 * step * gnorm2 and f_new < f:
                    break
                step *= 0.5
            else:
                break
        it += 1
        t_prev, g_prev = t, g
        t, f, g = _normalise(t_new, p), f_new, g_new
        trace.append(math.exp(f))
        if not np.isfinite(f):
            break
        if f < best_f:
            best_f, best_t, best_g = f, t, g
    x = np.exp(best_t)
    return RatioEstimate(math.exp(best_f), x, it, float(np.linalg.norm(best_g)),
                         initial, converged, trace)


def estimate_schedule(family: WeightFamily, p, Ns=DEFAULT_SCHEDULE,
                      config: Optional[OptimizerConfig] = None):
    """Run :func:`minimize_ratio` at each truncation length in ``Ns``.

    No extrapolation in ``N`` is attempted; the list shows how the upper
    bound moves as the truncation grows.
    """
    base = config or OptimizerConfig(N=1)
    out = []
    for N in Ns:
        cfg = OptimizerConfig(N=int(N), max_iters=base.max_iters,
                              step_rule=base.step_rule, init=base.init,
                              eps=base.eps, tol_stationarity=base.tol_stationarity,
                              seed=base.seed, step=base.step)
        out.append(minimize_ratio(family, p, cfg))
    return out


class OracleResult(NamedTuple):
    value: float
    x: np.ndarray


def _simplex_grid(N, res):
    if N == 1:
        return np.ones((1, 1))
    if N == 2:
        k = np.arange(res + 1)
        return np.stack([k, res - k], axis=1) / res
    i, j = np.triu_indices(res + 1)
    # i <= j: u1 = i, u2 = j - i, u3 = res - j
    return np.stack([i, j - i, res - j], axis=1) / res


def brute_force_oracle(family: WeightFamily, p, N, resolution=None) -> OracleResult:
    """Exhaustive grid search for the minimal ratio with ``N <= 3``.

    Sequences are parametrised by ``u_n = x_n**p`` on the unit simplex, so
    the denominator is 1 and every direction is covered once.
    """
    _check_p(p)
    if N not in (1, 2, 3):
        raise ValueError("brute_force_oracle supports N in {1, 2, 3}")
    if resolution is None:
        resolution = {1: 1, 2: 20_000, 3: 1_000}[N]
    if N == 2 and resolution < 1000:
        raise ValueError("resolution must be >= 1000 for N = 2")
    u = _simplex_grid(N, int(resolution))
    x = u ** (1 / p)
    lam, Lam = family.weights(N), family.partial_sums(N)
    S = np.cumsum((lam * x)[:, ::-1], axis=1)[:, ::-1]
    vals = np.sum((S / Lam) ** p, axis=1) / np.sum(u, axis=1)
    k = int(np.argmin(vals))
    return OracleResult(float(vals[k]), x[k])
