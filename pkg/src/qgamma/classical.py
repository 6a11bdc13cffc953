"""Reference classical Gamma, digamma and Euler constant.

Used only to verify the q -> 1 limit behaviour and to evaluate the two
classical ratio inequalities.  Both operations evaluate exactly the limit /
series representations the rest of the package is checked against, rather
than delegating to an external Gamma algorithm, so their provenance is
auditable.  Accuracy target is 1e-7 relative, two orders below the coarsest
limit-check tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .qcore import Evaluation

EULER_GAMMA = 0.5772156649015329


@dataclass(frozen=True)
class ClassicalConfig:
    """Depth of the limit-ratio evaluation and whether to extrapolate it."""

    limit_n: int = 10**6
    extrapolate: bool = True

    def __post_init__(self):
        if self.limit_n < 10:
            raise DomainError(f"limit_n must be >= 10, got {self.limit_n!r}")


DEFAULT_CLASSICAL_CONFIG = ClassicalConfig()

# Index arrays reused across evaluations, keyed by length.
_INDEX_CACHE: dict[int, np.ndarray] = {}


def _indices(n: int) -> np.ndarray:
    arr = _INDEX_CACHE.get(n)
    if arr is None:
        arr = np.arange(1, n + 1, dtype=np.float64)
        _INDEX_CACHE[n] = arr
    return arr


def ln_gamma_classical(x: float, cfg: ClassicalConfig = DEFAULT_CLASSICAL_CONFIG) -> Evaluation:
    """ln Gamma(x) from the limit ratio n! n^x / (x(x+1)...(x+n)).

    The log of the ratio is evaluated with the ln(n!) pieces cancelled:
    sum_{k=0..n} ln(x+k) = ln x + ln(n!) + sum_{k=1..n} ln(1 + x/k), which
    keeps the summed magnitudes small.  The ratio converges like c(x)/n, so
    it is taken at n and 2n (one shared term array) and Richardson-
    extrapolated; the error estimate is the distance between the two raw
    evaluations.
    """
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    n = cfg.limit_n
    terms = np.log1p(x / _indices(2 * n))
    head = float(terms[:n].sum())
    full = float(terms.sum())
    g_n = x * math.log(n) - math.log(x) - head
    g_2n = x * math.log(2 * n) - math.log(x) - full
    value = 2.0 * g_2n - g_n if cfg.extrapolate else g_n
    return Evaluation(value, abs(g_2n - g_n), 3 * n)


# Partial-sum depth for the digamma series; the integral tail patch leaves a
# residual ~ (x-1)/N^3, far below the 1e-7 module target.
_PSI_SERIES_TERMS = 8192


def psi_classical(x: float) -> Evaluation:
    """psi(x) = -gamma + (x-1) sum_{n>=0} 1/((1+n)(n+x)), tail-completed.

    Sums the first 4096 terms and replaces the remainder with the midpoint
    integral of the summand, which collapses to a single logarithm.  The
    reported error estimate is the crude pre-completion tail bound (x-1)/N.
    """
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    n = _indices(_PSI_SERIES_TERMS)  # 1..N, shifted below to cover n=0
    partial = float((1.0 / (n * (n - 1.0 + x))).sum())
    a = _PSI_SERIES_TERMS - 0.5
    tail = math.log((a + x) / (a + 1.0))
    value = -EULER_GAMMA + (x - 1.0) * partial + tail
    return Evaluation(value, abs(x - 1.0) / _PSI_SERIES_TERMS, _PSI_SERIES_TERMS)


def euler_gamma_classical() -> float:
    """The Euler-Mascheroni constant as the nearest double."""
    return EULER_GAMMA
