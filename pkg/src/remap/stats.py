"""Pearson correlation with two-sided significance testing.

The p-value comes from the t-statistic t = r * sqrt((n-2) / (1-r^2))
referred to a t-distribution with n-2 degrees of freedom. The t CDF is
evaluated through the regularized incomplete beta function (continued
fraction, Lentz's method), accurate to well below 1e-10 absolute; no
interpolation tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateInput, InsufficientSamples, LengthMismatch

DEFAULT_ALPHA = 0.05


@dataclass(frozen=True)
class CorrelationEntry:
    """Pearson r, two-sided p and sample size for one pair of series.

    ``r``/``p`` are None when the correlation is undefined (constant
    input); ``reason`` says why. ``suppressed`` marks entries that failed
    the significance filter but are kept for display.
    """

    r: float | None
    p: float | None
    n: int
    suppressed: bool = False
    reason: str | None = None

    @property
    def defined(self) -> bool:
        return self.r is not None


def pearson(x, y) -> float:
    """Product-moment correlation coefficient of two equal-length vectors."""
    n = len(x)
    if n != len(y):
        raise LengthMismatch(f"length {n} vs {len(y)}")
    if n < 2:
        raise DegenerateInput("need at least 2 samples")
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateInput("correlation undefined for a constant vector")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (Lentz)."""
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 300):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            return h
    raise RuntimeError("incomplete beta continued fraction failed to converge")


def betainc_regularized(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def pearson_pvalue(r: float, n: int) -> float:
    """Two-sided p-value of a Pearson coefficient under the null r = 0."""
    if n < 3:
        raise InsufficientSamples(f"p-value needs n >= 3, got {n}")
    if abs(r) > 1.0:
        raise ValueError(f"|r| must be <= 1, got {r}")
    if abs(r) == 1.0:
        return 0.0
    df = n - 2
    t2 = r * r * df / (1.0 - r * r)
    # two-sided tail of the t-distribution: I_{df/(df+t^2)}(df/2, 1/2)
    return betainc_regularized(df / 2.0, 0.5, df / (df + t2))


def correlate(x, y) -> CorrelationEntry:
    """pearson + pearson_pvalue bundled into one entry."""
    r = pearson(x, y)
    return CorrelationEntry(r=r, p=pearson_pvalue(r, len(x)), n=len(x))


def significance_filter(
    entries: dict[str, CorrelationEntry], alpha: float = DEFAULT_ALPHA
) -> dict[str, CorrelationEntry]:
    """Flag entries with p > alpha as suppressed (boundary p == alpha kept)."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    out = {}
    for key, entry in entries.items():
        if entry.defined and entry.p > alpha:
            out[key] = replace(entry, suppressed=True)
        else:
            out[key] = entry
    return out
