"""q-arithmetic primitives and the shared convergent-series evaluator.

All higher modules build on two things defined here: the deformation
parameter wrapper ``QParam`` (which pins down how powers of q are computed)
and ``sum_geometric_decay`` (which turns a term function plus a geometric
domination ratio into a value with a certified truncation bound).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, NonConvergence, Overflow

# QParam construction rejects q this close to 1: term counts scale like
# 1/(1-q) and the q->1 regime belongs to the classical module.
_Q_UPPER_CUTOFF = 1.0 - 1e-12


@dataclass(frozen=True)
class QParam:
    """Deformation parameter q, strictly inside (0, 1).

    ``ln_q`` is computed once at construction; every power q^x in the
    package goes through :func:`q_pow` so that identical exponents yield
    bit-identical doubles everywhere.
    """

    q: float
    ln_q: float = 0.0  # derived, set in __post_init__

    def __post_init__(self):
        if not (0.0 < self.q < _Q_UPPER_CUTOFF):
            raise DomainError(f"q must satisfy 0 < q < 1 - 1e-12, got {self.q!r}")
        object.__setattr__(self, "ln_q", math.log(self.q))


@dataclass(frozen=True)
class EvalConfig:
    """Precision contract for series evaluation."""

    rel_tol: float = 1e-13
    abs_tol: float = 1e-300  # underflow floor, not an accuracy target
    max_terms: int = 10**6

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if self.abs_tol < 0.0:
            raise DomainError(f"abs_tol must be >= 0, got {self.abs_tol!r}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms!r}")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class Evaluation:
    """A computed value with an a-posteriori truncation bound.

    ``error_estimate`` bounds the omitted series tail under the geometric
    tail model documented at each call site; it excludes rounding.
    """

    value: float
    error_estimate: float
    terms_used: int


def q_pow(q: QParam, x: float) -> float:
    """q^x as exp(x * ln q); the one place powers of q are computed."""
    return math.exp(x * q.ln_q)


def q_bracket(x: float, q: QParam) -> float:
    """The q-analogue of x: (1 - q^x) / (1 - q)."""
    return (1.0 - q_pow(q, x)) / (1.0 - q.q)


def q_bracket_derivative(x: float, q: QParam) -> float:
    """d/dx of the q-bracket: -(ln q) q^x / (1 - q); positive for all x."""
    return -q.ln_q * q_pow(q, x) / (1.0 - q.q)


def q_factorial(n: int, q: QParam) -> float:
    """prod_{k=1..n} [k]_q with the empty product equal to 1."""
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    acc = 1.0
    for k in range(1, int(n) + 1):
        acc *= q_bracket(float(k), q)
    if math.isinf(acc):
        raise Overflow(f"q-factorial overflowed at n={n}, q={q.q}")
    return acc


def sum_geometric_decay(
    term: Callable[[int], float],
    decay_ratio: float,
    start_index: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> Evaluation:
    """Sum term(n) for n >= start_index under geometric tail domination.

    The caller guarantees |term(n+1)| <= decay_ratio * |term(n)| from some
    index onward (each call site documents its ratio and threshold), which
    makes |term(N+1)| / (1 - decay_ratio) an upper bound on the omitted
    tail after N summed terms.  Summation stops at the first N where that
    bound drops to max(rel_tol * |S_N|, abs_tol).

    Raises NonConvergence, carrying the partial sum, if max_terms is
    reached first.
    """
    if not (0.0 < decay_ratio < 1.0):
        raise DomainError(f"decay_ratio must be in (0, 1), got {decay_ratio!r}")
    inv_gap = 1.0 / (1.0 - decay_ratio)
    rel_tol = cfg.rel_tol
    abs_tol = cfg.abs_tol
    total = 0.0
    used = 0
    n = start_index
    nxt = term(n)
    estimate = abs(nxt) * inv_gap
    while used < cfg.max_terms:
        total += nxt
        used += 1
        n += 1
        nxt = term(n)
        estimate = abs(nxt) * inv_gap
        threshold = rel_tol * total
        if threshold < 0.0:
            threshold = -threshold
        if threshold < abs_tol:
            threshold = abs_tol
        if estimate <= threshold:
            return Evaluation(total, estimate, used)
    raise NonConvergence(
        f"no convergence within {cfg.max_terms} terms (estimate {estimate:.3e})",
        partial_value=total,
        error_estimate=estimate,
        terms_used=used,
    )
