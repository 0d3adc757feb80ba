"""Compensated running sums.

Both helpers are sequential Python loops; they are only used where the
cumulative rounding of ``np.cumsum`` would be visible in the results.
"""

import math

import numpy as np

# Keep the running log-scale at most this far below the newest term before
# renormalising; exp(300) is comfortably inside double range.
_RESCALE_GAP = 300.0


class RunningSum:
    """Neumaier running sum that can be extended chunk by chunk."""

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def extend(self, values):
        values = np.asarray(values, dtype=float)
        out = np.empty(values.shape[0])
        s, c = self.s, self.c
        for i, v in enumerate(values.tolist()):
            t = s + v
            if abs(s) >= abs(v):
                c += (s - t) + v
            else:
                c += (v - t) + s
            s = t
            out[i] = s + c
        self.s, self.c = s, c
        return out


def compensated_cumsum(values):
    """Prefix sums of ``values`` with Neumaier compensation."""
    return RunningSum().extend(values)


def log_cumsum(log_terms):
    """Return ``log(cumsum(exp(log_terms)))`` without overflow.

    The running sum is kept as ``exp(scale) * (s + c)`` and only rescaled
    when a new term exceeds the scale by a wide margin, so the rounding from
    rescaling is incurred rarely.
    """
    log_terms = np.asarray(log_terms, dtype=float)
    out = np.empty(log_terms.shape[0])
    scale = -math.inf
    s = c = 0.0
    for i, lt in enumerate(log_terms.tolist()):
        if lt > scale + _RESCALE_GAP or scale == -math.inf:
            if scale != -math.inf:
                f = math.exp(scale - lt)
                s *= f
                c *= f
            scale = lt
        v = math.exp(lt - scale) if lt != -math.inf else 0.0
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        total = s + c
        out[i] = scale + math.log(total) if total > 0 else -math.inf
    return out
