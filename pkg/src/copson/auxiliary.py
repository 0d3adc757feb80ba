"""Auxiliary one-variable functions from the sufficiency proofs and sign scans.

Each function takes ``(L, M, p, x)`` and is vectorised in ``x``.  Functions
that do not depend on ``M`` ignore it.  ``x`` plays the role of
``lambda_n / Lambda_n`` and lives in ``(0, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conditions import a1, a2, p_116, theorem1_applicable


def _A(L, p, x):
    return 1 + (L / p - 2) * x


def _B(L, M, x):
    return 1 + (L - 1) * x + M * x * x


def _C(L, M, x):
    return 1 + L * x + M * x * x


def f_LMp(L, M, p, x):
    r = 1 / (1 - p)
    return (_A(L, p, x) ** r
            - _B(L, M, x) ** ((1 + p) * r) * _C(L, M, x) ** (-p * r)
            - (L - p) / p * x)


def _quad(L, p, x, x2):
    return L**2 * (L - 1)**2 * x2 + 2 * L * (L - 1) * (L - p - 1) * x + L**2 - 2 * (L - 1) * (p + 1)


def g_Lp(L, M, p, x):
    k = L / p - 2
    return (k**2 * (1 + (L - 1) * x) ** ((1 - 3 * p) / (1 - p)) * (1 + L * x) ** ((2 - p) / (1 - p))
            - _A(L, p, x) ** ((1 - 2 * p) / (1 - p)) * _quad(L, p, x, x * x))


def u_Lp(L, M, p, x):
    """Linearised lower bound for ``g_Lp``; concave, and equal to ``a1`` at 1."""
    k = L / p - 2
    return (k**2 * (1 + L * (2 - p) / (1 - p) * x)
            - (1 + k * (1 - 2 * p) / (1 - p) * x) * _quad(L, p, x, x))


def h_Lp(L, M, p, x):
    return (_A(L, p, x) ** (L - 2 * p)
            * (1 + (L - 1) * x) ** (p * (1 + p) * (2 - L))
            * (1 + L * x) ** (-p * (1 + p - p * L)))


def v_Lp(L, M, p, x):
    k = L / p - 2
    A = _A(L, p, x)
    return ((L - 2 * p) * k * (1 + (L - 1) * x) * (1 + L * x)
            - p * (1 + p) * (2 - L) * (1 - L) * A * (1 + L * x)
            - p * (1 + p - p * L) * L * A * (1 + (L - 1) * x))


def ineq_3_1(L, M, p, x):
    return (_A(L, p, x) ** (L - 2 * p)
            * (1 - 2 * M * x / (1 - L)) ** ((1 - p * p) * (1 - L))
            * (1 + 2 * M * x / L) ** (p * (1 - p) * L)
            * _B(L, M, x) ** (p * (1 + p) * (2 - L))
            * _C(L, M, x) ** (-p * (1 + p - p * L)))


def _E(L, p):
    return L - 2 * p - (1 - p * p) * (1 - L)


def h_LMp(L, M, p, x):
    return (_A(L, p, x) ** _E(L, p)
            * _B(L, M, x) ** (p * (1 + p) * (2 - L))
            * _C(L, M, x) ** (-p * (1 + p - p * L)))


def u_LMp(L, M, p, x):
    k = L / p - 2
    A, B, C = _A(L, p, x), _B(L, M, x), _C(L, M, x)
    return (_E(L, p) * k * B * C
            - p * (1 + p) * (2 - L) * (1 - L) * A * (1 - 2 * M * x / (1 - L)) * C
            - p * (1 + p - p * L) * L * A * (1 + 2 * M * x / L) * B)


def v_LMp(L, M, p, x):
    k = L / p - 2
    A = _A(L, p, x)
    return (_E(L, p) * k * (1 + (L - 1) * x) * (1 + L * x)
            - p * (1 + p) * (2 - L) * (1 - L) * A * (1 + (L + M) * x)
            - p * (1 + p - p * L) * L * A * (1 + 2 * M / L) * (1 + (L + M - 1) * x))


FUNCTIONS = {
    "f_LMp": f_LMp,
    "g_Lp": g_Lp,
    "u_Lp": u_Lp,
    "v_Lp": v_Lp,
    "h_Lp": h_Lp,
    "h_LMp": h_LMp,
    "u_LMp": u_LMp,
    "v_LMp": v_LMp,
    "ineq_3_1": ineq_3_1,
}

# value each function is claimed to stay above on (0, 1]
BOUNDS = {name: 1.0 if name in ("h_Lp", "h_LMp", "ineq_3_1") else 0.0
          for name in FUNCTIONS}

ALIASES = {"f": "f_LMp", "g": "g_Lp", "u": "u_Lp", "v": "v_Lp", "h": "h_Lp",
           "hM": "h_LMp", "uM": "u_LMp", "vM": "v_LMp"}


def resolve(function_id):
    name = ALIASES.get(function_id, function_id)
    if name not in FUNCTIONS:
        raise ValueError(f"unknown auxiliary function {function_id!r}")
    return name


class NonFiniteValue(ValueError):
    def __init__(self, function_id, x):
        super().__init__(f"{function_id} is not finite at x={x!r}")
        self.x = x


def aux_eval(function_id, L, M, p, x):
    """Evaluate an auxiliary function by direct transcription."""
    name = resolve(function_id)
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    xs = np.asarray(x, dtype=float)
    with np.errstate(all="ignore"):
        val = FUNCTIONS[name](float(L), float(M), float(p), xs)
    val = np.asarray(val, dtype=float)
    bad = np.flatnonzero(~np.isfinite(val.ravel()))
    if bad.size:
        raise NonFiniteValue(name, float(np.broadcast_to(xs, val.shape).ravel()[bad[0]]))
    return float(val) if val.ndim == 0 else val


def sign_grid(G):
    """Uniform grid ``k/G``, ``k = 1..G``, skipping the removable point 0."""
    if G < 1:
        raise ValueError("grid size must be >= 1")
    return np.arange(1, G + 1, dtype=float) / G


def certified_regime(function_id, L, M, p):
    """Whether the proofs claim the function stays above its bound here."""
    name = resolve(function_id)
    L, M, p = float(L), float(M), float(p)
    if not (0 < p < 1 and L > p):
        return False

    def thm1():
        return theorem1_applicable(L, p).applicable

    def thm1prime_relaxed():
        if not (0.5 < L < 1 and 0 < M < 1 and L + 2 * M < 1):
            return False
        return p <= p_116(L, M)

    if name == "f_LMp":
        return thm1() if M == 0 else thm1prime_relaxed()
    if name in ("g_Lp", "u_Lp"):
        return L >= 1 and p <= 1 / 3 and a1(L, p) >= 0
    if name in ("v_Lp", "h_Lp"):
        return 0 < L < 1 and L >= 4 * p and a2(L, p) >= 0
    return thm1prime_relaxed()


@dataclass
class SignReport:
    function_id: str
    L: float
    M: float
    p: float
    grid: int
    min_value: float
    argmin_x: float
    bound: float
    certified: bool

    @property
    def margin(self):
        return self.min_value - self.bound

    def anomaly(self, tol=1e-9):
        """A negative margin where the proofs claim otherwise."""
        return self.certified and self.margin < -tol


def aux_sign_scan(function_id, L, M, p, grid=10_000) -> SignReport:
    name = resolve(function_id)
    xs = sign_grid(grid)
    vals = aux_eval(name, L, M, p, xs)
    k = int(np.argmin(vals))
    return SignReport(name, float(L), float(M), float(p), int(grid),
                      float(vals[k]), float(xs[k]), BOUNDS[name],
                      certified_regime(name, L, M, p))


def tail_transform(t, p):
    """``(t-1)**((1+p)/(1-p)) * t**(-p/(1-p))`` for ``t >= 1``."""
    t = np.asarray(t, dtype=float)
    return (t - 1) ** ((1 + p) / (1 - p)) * t ** (-p / (1 - p))


def _amgm_parts(L, M, p, x):
    A, B, C = _A(L, p, x), _B(L, M, x), _C(L, M, x)
    d = (1 - p) * (L - p)
    weights = ((L / p - 2) * p / d, p * (1 + p) * (1 - L) / d, L * p * p / d)
    terms = (A ** (p / (1 - p)),
             (1 - 2 * M * x / (1 - L)) * B ** (2 * p / (1 - p)) * C ** (-p / (1 - p)),
             (1 + 2 * M * x / L) * B ** ((1 + p) / (1 - p)) * C ** (-1 / (1 - p)))
    return weights, terms


def f_prime_mean(L, M, p, x):
    """``(p/(L-p)) f'_LMp(x) + 1`` as the weighted arithmetic mean of three terms."""
    w, t = _amgm_parts(L, M, p, np.asarray(x, dtype=float))
    return w[0] * t[0] + w[1] * t[1] + w[2] * t[2]


def amgm_lower_bound(L, M, p, x):
    """Weighted geometric mean of the same three terms.

    Needs ``2p <= L < 1`` so that all weights are non-negative.
    """
    w, t = _amgm_parts(L, M, p, np.asarray(x, dtype=float))
    return t[0] ** w[0] * t[1] ** w[1] * t[2] ** w[2]
