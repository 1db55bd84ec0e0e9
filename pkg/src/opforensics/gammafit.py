"""Gamma distribution by the method of moments, with quantile numerics.

The keyword-selection stage fits a Gamma to a user's word counts via
moments (shape ``mean^2/var``, scale ``var/mean``) and needs its
quantile.  The regularized lower incomplete gamma function is computed
with the usual split: power series below ``shape + 1``, Lentz continued
fraction above; the quantile is then bracketed and bisected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegenerateFitError

__all__ = [
    "GammaFit",
    "fit_gamma_moments",
    "gamma_cdf",
    "gamma_quantile",
]

_EPS = 1e-15
_MAX_ITER = 500


@dataclass(frozen=True)
class GammaFit:
    shape: float  # k = mean^2 / variance
    scale: float  # theta = variance / mean
    mean: float
    variance: float

    def quantile(self, q: float) -> float:
        return gamma_quantile(q, self.shape, self.scale)


def fit_gamma_moments(counts: Sequence[float] | Iterable[float]) -> GammaFit:
    """Moment fit with unbiased (n-1) sample variance.

    Raises :class:`DegenerateFitError` when there is no spread to fit
    (fewer than two values, or zero variance).
    """
    values = [float(c) for c in counts]
    n = len(values)
    if n < 2:
        raise DegenerateFitError(f"need >= 2 counts, got {n}")
    mean = sum(values) / n
    variance = sum((v - mean) ** 2 for v in values) / (n - 1)
    if variance <= 0.0:
        raise DegenerateFitError("zero variance: all counts identical")
    return GammaFit(
        shape=mean * mean / variance,
        scale=variance / mean,
        mean=mean,
        variance=variance,
    )


def _lower_series(a: float, x: float) -> float:
    # P(a, x) via the series x^a e^-x / Gamma(a) * sum_n x^n / (a)_n+1
    term = 1.0 / a
    total = term
    for n in range(1, _MAX_ITER):
        term *= x / (a + n)
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _upper_continued_fraction(a: float, x: float) -> float:
    # Q(a, x) by modified Lentz evaluation of the continued fraction
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def regularized_lower_gamma(a: float, x: float) -> float:
    if a <= 0.0:
        raise ValueError(f"shape must be positive, got {a}")
    if x < 0.0:
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return min(1.0, _lower_series(a, x))
    return min(1.0, max(0.0, 1.0 - _upper_continued_fraction(a, x)))


def gamma_cdf(x: float, shape: float, scale: float) -> float:
    if scale <= 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    if x <= 0.0:
        return 0.0
    return regularized_lower_gamma(shape, x / scale)


def gamma_quantile(q: float, shape: float, scale: float, tol: float = 1e-10) -> float:
    """Invert the CDF by bisection to absolute tolerance ``tol``."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must be in (0, 1), got {q}")
    lo = 0.0
    hi = scale * (shape + 10.0 * math.sqrt(shape) + 10.0)
    while gamma_cdf(hi, shape, scale) < q:
        hi *= 2.0
        if hi > 1e300:
            raise ValueError("quantile bracket overflow")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gamma_cdf(mid, shape, scale) < q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
