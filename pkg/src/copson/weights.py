"""Weight sequences ``lambda_n`` and their partial sums ``Lambda_n``.

Four kinds are supported:

``unit``
    ``lambda_n = 1``, ``Lambda_n = n``.
``powerdiff``
    ``lambda_n = n**alpha - (n-1)**alpha``, ``Lambda_n = n**alpha``.
``powerkernel``
    ``lambda_n = n**(alpha-1)``, ``Lambda_n`` by compensated prefix sums.
``custom``
    a finite list of positive weights.

Indices are 1-based everywhere, as in the inequality itself.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Optional

import numpy as np

from ._summation import RunningSum

KINDS = ("unit", "powerdiff", "powerkernel", "custom")


@dataclass(frozen=True)
class WeightFamily:
    """Immutable description of a weight sequence.

    Use the constructors :meth:`unit`, :meth:`power_diff`,
    :meth:`power_kernel`, :meth:`custom` or :func:`parse_family` rather than
    calling the class directly.
    """

    kind: str
    alpha: Optional[float] = None
    values: Optional[tuple] = None
    _cache: dict = field(default_factory=dict, init=False, repr=False,
                         compare=False, hash=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False,
                                  repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight family kind {self.kind!r}")
        if self.kind in ("powerdiff", "powerkernel"):
            if self.alpha is None or not math.isfinite(self.alpha):
                raise ValueError(f"{self.kind} needs a finite alpha")
            if self.alpha < 1:
                raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if self.kind == "custom":
            if not self.values:
                raise ValueError("custom family needs at least one weight")
            arr = np.asarray(self.values, dtype=float)
            if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
                raise ValueError("custom weights must be finite and strictly positive")

    @classmethod
    def unit(cls):
        return cls("unit")

    @classmethod
    def power_diff(cls, alpha):
        return cls("powerdiff", alpha=float(alpha))

    @classmethod
    def power_kernel(cls, alpha):
        return cls("powerkernel", alpha=float(alpha))

    @classmethod
    def custom(cls, values):
        return cls("custom", values=tuple(float(v) for v in values))

    @property
    def length(self):
        """Number of available weights, or ``None`` for infinite families."""
        return len(self.values) if self.kind == "custom" else None

    @property
    def spec(self):
        """Round-trippable string form, e.g. ``powerdiff:2``."""
        if self.kind == "unit":
            return "unit"
        if self.kind == "custom":
            return f"custom[{len(self.values)}]"
        return f"{self.kind}:{self.alpha:g}"

    def _check_horizon(self, N):
        if N < 1:
            raise ValueError(f"horizon must be >= 1, got {N}")
        if self.length is not None and N > self.length:
            raise IndexError(
                f"custom family has {self.length} weights, {N} requested")

    def weights(self, N: int) -> np.ndarray:
        """Return ``lambda_1 .. lambda_N`` as a float array."""
        N = int(N)
        self._check_horizon(N)
        n = np.arange(1, N + 1, dtype=float)
        if self.kind == "unit":
            lam = np.ones(N)
        elif self.kind == "powerdiff":
            a = self.alpha
            # n^a (1 - (1 - 1/n)^a) avoids cancellation for large n
            with np.errstate(divide="ignore"):
                lam = -(n ** a) * np.expm1(a * np.log1p(-1.0 / n))
            lam[0] = 1.0
        elif self.kind == "powerkernel":
            lam = n ** (self.alpha - 1.0)
        else:
            lam = np.asarray(self.values[:N], dtype=float)
        if not np.all(np.isfinite(lam)):
            raise OverflowError(f"non-finite weight in {self.spec} up to n={N}")
        return lam

    def partial_sums(self, N: int) -> np.ndarray:
        """Return ``Lambda_1 .. Lambda_N`` as a float array."""
        N = int(N)
        self._check_horizon(N)
        if self.kind == "unit":
            Lam = np.arange(1, N + 1, dtype=float)
        elif self.kind == "powerdiff":
            Lam = np.arange(1, N + 1, dtype=float) ** self.alpha
        else:
            Lam = self._prefix_sums(N)
        if not np.all(np.isfinite(Lam)):
            raise OverflowError(f"non-finite partial sum in {self.spec} up to n={N}")
        return Lam

    def _prefix_sums(self, N):
        with self._lock:
            table = self._cache.get("prefix")
            have = 0 if table is None else table.shape[0]
            if have < N:
                acc = self._cache.setdefault("acc", RunningSum())
                new = acc.extend(self.weights(N)[have:])
                table = new if table is None else np.concatenate([table, new])
                table.setflags(write=False)
                self._cache["prefix"] = table
        return table[:N]

    def weight(self, n: int) -> float:
        return float(self.weights(n)[-1])

    def partial_sum(self, n: int) -> float:
        return float(self.partial_sums(n)[-1])


def parse_family(text: str) -> WeightFamily:
    """Parse ``unit``, ``powerdiff:A``, ``powerkernel:A`` or ``custom:PATH``."""
    kind, _, arg = text.strip().partition(":")
    kind = kind.lower()
    if kind == "unit" and not arg:
        return WeightFamily.unit()
    if kind in ("powerdiff", "powerkernel") and arg:
        try:
            alpha = float(arg)
        except ValueError:
            raise ValueError(f"bad alpha in family spec {text!r}") from None
        return WeightFamily(kind, alpha=alpha)
    if kind == "custom" and arg:
        return WeightFamily.custom(read_values(arg, strictly_positive=True))
    raise ValueError(f"unrecognised family spec {text!r}")


def read_values(path, strictly_positive=False):
    """Read one decimal per line; blank lines and ``#`` comments are skipped."""
    vals = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            v = float(line)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {line!r}") from None
        if not math.isfinite(v) or v < 0 or (strictly_positive and v == 0):
            raise ValueError(f"{path}:{lineno}: invalid value {v}")
        vals.append(v)
    if not vals:
        raise ValueError(f"{path}: no values")
    return vals


def weight(family: WeightFamily, n: int) -> float:
    """``lambda_n`` of ``family``."""
    return family.weight(n)


def partial_sum(family: WeightFamily, n: int) -> float:
    """``Lambda_n`` of ``family``."""
    return family.partial_sum(n)


def l_gaps(family: WeightFamily, N: int) -> np.ndarray:
    """``Lambda_{n+1}/lambda_{n+1} - Lambda_n/lambda_n`` for ``n = 1..N``."""
    ratio = family.partial_sums(N + 1) / family.weights(N + 1)
    return np.diff(ratio)


def l_gap(family: WeightFamily, n: int) -> float:
    return float(l_gaps(family, n)[-1])


class GapSup(NamedTuple):
    estimate: float
    monotone: bool
    argmax: int


def sup_l_gap(family: WeightFamily, N: int) -> GapSup:
    """Largest L-gap over ``n <= N``.

    ``monotone`` reports whether the scanned gaps never decrease by more than
    the rounding scale of the subtraction that produced them, which is the
    situation where the finite maximum is a good proxy for the true supremum.
    """
    if N < 2:
        raise ValueError("sup_l_gap needs N >= 2")
    ratio = family.partial_sums(N + 1) / family.weights(N + 1)
    gaps = np.diff(ratio)
    noise = 64 * np.finfo(float).eps * ratio[1:]
    monotone = bool(np.all(np.diff(gaps) >= -noise[1:]))
    k = int(np.argmax(gaps))
    return GapSup(float(gaps[k]), monotone, k + 1)
