"""Finite-horizon certificates for the sufficient conditions on the weights.

Every check returns a :class:`Certificate`.  A passing certificate only says
that the per-index margins are above ``-tol`` for ``n <= N``; it is evidence,
not a proof.  Ties at exactly ``-tol`` fail.
"""

from __future__ import annotations

import json
import math
import numbers
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .weights import WeightFamily, l_gaps, sup_l_gap

DEFAULT_TOL = 1e-9

COND_1_6 = "COND_1_6"
COND_1_7 = "COND_1_7"
COND_1_15 = "COND_1_15"
COND_2_1 = "COND_2_1"
THM1_POLY = "THM1_POLY"
THM1PRIME = "THM1PRIME"


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, numbers.Integral):
        return int(v)
    if isinstance(v, numbers.Real):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class Certificate:
    condition_id: str
    N: int
    passed: bool
    min_margin: float
    argmin_n: int
    params: dict
    tol: float = DEFAULT_TOL
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return _jsonable(asdict(self))

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _from_margins(condition_id, margins, params, tol, details=None, offset=1):
    """Build a certificate from per-index margins (index ``offset`` first)."""
    margins = np.asarray(margins, dtype=float)
    details = dict(details or {})
    bad = np.flatnonzero(~np.isfinite(margins))
    if bad.size:
        k = int(bad[0])
        details["nonfinite_at"] = k + offset
        return Certificate(condition_id, int(margins.size), False, -math.inf,
                           k + offset, params, tol, details)
    k = int(np.argmin(margins))
    m = float(margins[k])
    return Certificate(condition_id, int(margins.size), m > -tol, m,
                       k + offset, params, tol, details)


def _check_p(p):
    if not (0 < p < 1):
        raise ValueError(f"p must lie in (0, 1), got {p}")


def _check_Lp(L, p):
    _check_p(p)
    if not L > p:
        raise ValueError(f"need L > p, got L={L}, p={p}")


def _check_115_domain(L, M):
    if not (0.5 < L < 1 and 0 < M < 1 and L + 2 * M < 1):
        raise ValueError(
            f"need 1/2 < L < 1, 0 < M < 1, L + 2M < 1; got L={L}, M={M}")


# --- per-index conditions --------------------------------------------------

def cond_16_margins(family: WeightFamily, L, p, N):
    """Right minus left side of the per-index condition, ``n = 1..N``."""
    L = float(L)
    p = float(p)
    _check_Lp(L, p)
    lam = family.weights(N + 1)
    Lam = family.partial_sums(N + 1)
    x = lam[:-1] / Lam[:-1]
    y = lam[1:] / Lam[1:]
    one_minus_y = Lam[:-1] / Lam[1:]
    r = 1.0 / (1.0 - p)
    with np.errstate(all="ignore"):
        rhs = (1 + (L / p - 2) * x) ** r - one_minus_y ** ((1 + p) * r) * x ** r * y ** (-r)
    return rhs - (L - p) / p * x


def check_cond_16(family: WeightFamily, L, p, N, tol=DEFAULT_TOL) -> Certificate:
    margins = cond_16_margins(family, L, p, N)
    details = {
        "tail_margin": float(margins[-1]),
        # margin -> 0 as lambda_n/Lambda_n -> 0; informational only
        "asymptotic_margin_limit": 0.0,
    }
    return _from_margins(COND_1_6, margins,
                         {"family": family.spec, "L": L, "p": p}, tol, details)


def check_cond_17(family: WeightFamily, L, N, tol=DEFAULT_TOL) -> Certificate:
    """``sup_n l_gap(n) <= L`` over ``n <= N``."""
    if N < 2:
        raise ValueError("check_cond_17 needs N >= 2")
    sup = sup_l_gap(family, N)
    margin = float(L) - sup.estimate
    return Certificate(COND_1_7, int(N), margin > -tol, margin, sup.argmax,
                       {"family": family.spec, "L": L}, tol,
                       {"sup_estimate": sup.estimate, "monotone": sup.monotone})


def check_cond_115(family: WeightFamily, L, M, N, tol=DEFAULT_TOL) -> Certificate:
    """``l_gap(n) <= L + M lambda_n/Lambda_n`` for ``n <= N``."""
    _check_115_domain(L, M)
    lam = family.weights(N)
    Lam = family.partial_sums(N)
    margins = float(L) + float(M) * lam / Lam - l_gaps(family, N)
    return _from_margins(COND_1_15, margins,
                         {"family": family.spec, "L": L, "M": M}, tol)


# --- polynomials and thresholds --------------------------------------------

def _exact(*args):
    """Promote to Fraction when every argument is an int or Fraction."""
    if all(isinstance(a, (numbers.Rational)) and not isinstance(a, bool) for a in args):
        return tuple(Fraction(a) for a in args)
    return args


def a1(L, p):
    """First polynomial of the gap-bound test, for ``L >= 1`` (exact for rational input)."""
    L, p = _exact(L, p)
    k = L / p - 2
    quad = L**2 * (L - 1)**2 + 2 * L * (L - 1) * (L - p - 1) + L**2 - 2 * (L - 1) * (p + 1)
    return k**2 * (1 + L * (2 - p) / (1 - p)) - (1 + k * (1 - 2 * p) / (1 - p)) * quad


def a2(L, p):
    """Second polynomial of the gap-bound test, for ``L < 1`` (exact for rational input)."""
    L, p = _exact(L, p)
    return ((1 / p - 1) * L**4 + (1 - p) * (1 - 2 * p) / p * L**3
            - (3 - p) * (1 - p) * L**2 - (p**2 - p + 2) * L + 2 * p * (1 + p))


def p_L(L):
    """Threshold ``L**2/4`` for ``0 < L < 1``."""
    (L,) = _exact(L)
    if not 0 < L < 1:
        raise ValueError(f"need 0 < L < 1, got {L}")
    return L * L / 4


def p_116(L, M):
    """Threshold for the relaxed gap condition with slope ``M``."""
    L, M = _exact(L, M)
    _check_115_domain(L, M)
    return min(L * (2 * L - 1) / (4 * (2 * L + M)),
               L * (1 - L - 2 * M) / (2 * (1 - L - M)))


def thresholds(L, M=None):
    """Return ``(p_L, p_116)``; ``p_116`` is ``None`` when ``M`` is ``None``."""
    return p_L(L), (None if M is None else p_116(L, M))


class Theorem1Decision(NamedTuple):
    applicable: bool
    branch: Optional[int]
    reason: str
    a1: object
    a2: object


def theorem1_applicable(L, p) -> Theorem1Decision:
    """Decide which polynomial branch covers ``(L, p)``.

    Branch 1: ``L >= 1``, ``p <= 1/3``, ``a1 >= 0``.
    Branch 2: ``0 < L < 1``, ``p <= L/4``, ``a2 >= 0``.
    """
    L, p = _exact(L, p)
    _check_Lp(L, p)
    v1 = a1(L, p)
    v2 = a2(L, p)
    if L >= 1:
        if p > Fraction(1, 3):
            return Theorem1Decision(False, None, "L >= 1 but p > 1/3", v1, v2)
        if v1 < 0:
            return Theorem1Decision(False, None, f"a1 = {float(v1):.6g} < 0", v1, v2)
        return Theorem1Decision(True, 1, f"L >= 1, p <= 1/3, a1 = {float(v1):.6g} >= 0", v1, v2)
    if p > L / 4:
        return Theorem1Decision(False, None, "0 < L < 1 but p > L/4", v1, v2)
    if v2 < 0:
        return Theorem1Decision(False, None, f"a2 = {float(v2):.6g} < 0", v1, v2)
    return Theorem1Decision(True, 2, f"0 < L < 1, p <= L/4, a2 = {float(v2):.6g} >= 0", v1, v2)


def theorem1_certificate(L, p, tol=DEFAULT_TOL) -> Certificate:
    """Certificate form of :func:`theorem1_applicable`.

    ``min_margin`` is the best branch's smallest slack among its
    preconditions and polynomial value.
    """
    d = theorem1_applicable(L, p)
    slack1 = min(float(L) - 1, 1 / 3 - float(p), float(d.a1))
    slack2 = min(1 - float(L), float(L) / 4 - float(p), float(d.a2))
    margin = slack1 if d.branch == 1 else slack2 if d.branch == 2 else max(slack1, slack2)
    return Certificate(THM1_POLY, 0, d.applicable, margin, 0,
                       {"L": L, "p": p}, tol,
                       {"branch": d.branch, "reason": d.reason, "a1": d.a1, "a2": d.a2})


def theorem1prime_certificate(family: WeightFamily, L, p, N, M=None,
                              tol=DEFAULT_TOL) -> Certificate:
    """Small-``p`` certificate for ``L < 1`` in either form.

    Without ``M``: gap supremum at most ``L < 1`` and ``p <= L**2/4``.
    With ``M``: relaxed gap condition and ``p <= p_116(L, M)``.
    """
    _check_Lp(float(L), float(p))
    if M is None:
        base = check_cond_17(family, L, N, tol)
        threshold = p_L(L)
    else:
        base = check_cond_115(family, L, M, N, tol)
        threshold = p_116(L, M)
    slack = float(threshold) - float(p)
    margin = min(base.min_margin, slack)
    params = {"family": family.spec, "L": L, "p": p}
    if M is not None:
        params["M"] = M
    return Certificate(THM1PRIME, base.N, base.passed and slack > -tol, margin,
                       base.argmin_n, params, tol,
                       {"threshold": threshold, "threshold_slack": slack,
                        "base_condition": base.condition_id,
                        "base_margin": base.min_margin})


def relaxed_chain(L, M, p):
    """Slacks of the intermediate inequalities behind the relaxed gap test.

    A non-negative slack means the inequality holds; ``k_positive`` and
    ``exponent_positive`` must be strictly positive.
    """
    L, M, p = _exact(L, M, p)
    E = L - 2 * p - (1 - p * p) * (1 - L)
    k = L / p - 2
    return {
        "k_positive": k,
        "slope_factor": (L / p - 1) * (1 - 2 * M / (1 - L)) - 1,
        "exponent_positive": E,
        "mixed_terms": (E * (1 - L) * L + p * (1 + p) * (2 - L) * (1 - L) * (L + M)
                        - p * (1 + p - p * L) * (L + 2 * M) * (1 - L - M)),
        "bound_p": E * k - 2 * p * (1 + p) * (1 + L + M),
        "bound_one": E * k - 2 * (1 + p) * (1 + L + M),
        "bound_ratio": E * L / p - (1 + p) * (1 + L + M),
        "threshold_first": L * (2 * L - 1) / (4 * (2 * L + M)) - p,
        "threshold_second": L * (1 - L - 2 * M) / (2 * (1 - L - M)) - p,
    }
