"""The q-special functions: ln Gamma_q, Gamma_q, psi_q, its derivatives,
the q-Euler constant, and the unique positive root of psi_q.

Gamma_q is only ever computed through its logarithm; the raw product over-
and underflows quickly and every downstream inequality works in log space
anyway.  Arguments x <= 0 are rejected: no analytic continuation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BracketFailure, DomainError, Overflow
from .qcore import DEFAULT_CONFIG, EvalConfig, Evaluation, QParam, q_pow, sum_geometric_decay

_MAX_EXP = 709.78  # ln of the largest finite double, rounded down

# The series engine stops on the magnitude of its own partial sum, while the
# accuracy contract is on the full log value (base term included).  Tightening
# the internal stop keeps the exponentiated relative error within cfg.rel_tol
# even when the base term dominates the series part.
_STOP_SAFETY = 1.0 / 16.0


def _series_cfg(cfg: EvalConfig) -> EvalConfig:
    return EvalConfig(cfg.rel_tol * _STOP_SAFETY, cfg.abs_tol, cfg.max_terms)


def _require_positive(x: float, name: str = "x") -> None:
    if not x > 0.0:
        raise DomainError(f"{name} must be positive, got {x!r}")


def ln_gamma_q(x: float, q: QParam, cfg: EvalConfig = DEFAULT_CONFIG) -> Evaluation:
    """ln Gamma_q(x) = (1-x) ln(1-q) + sum_{n>=0} [ln(1-q^(n+1)) - ln(1-q^(n+x))].

    The n-th term has magnitude ~ q^n |q - q^x|, and |term(n+1)| <= q * |term(n)|
    holds for every n (expand both logs as power series in q^n), so the
    geometric tail bound with ratio q is certified from the first term.
    """
    _require_positive(x)

    exp = math.exp
    log1p = math.log1p
    ln_q = q.ln_q

    def term(n: int) -> float:
        return log1p(-exp((n + 1.0) * ln_q)) - log1p(-exp((n + x) * ln_q))

    series = sum_geometric_decay(term, q.q, 0, _series_cfg(cfg))
    base = (1.0 - x) * math.log1p(-q.q)
    return Evaluation(base + series.value, series.error_estimate, series.terms_used)


def gamma_q(x: float, q: QParam, cfg: EvalConfig = DEFAULT_CONFIG) -> Evaluation:
    """Gamma_q(x) = exp(ln Gamma_q(x)); truncation bound scaled by the value."""
    ln_ev = ln_gamma_q(x, q, cfg)
    if ln_ev.value > _MAX_EXP:
        raise Overflow(f"Gamma_q({x}, q={q.q}) exceeds the double range (ln = {ln_ev.value:.6g})")
    value = math.exp(ln_ev.value)
    return Evaluation(value, abs(value) * ln_ev.error_estimate, ln_ev.terms_used)


def psi_q(x: float, q: QParam, cfg: EvalConfig = DEFAULT_CONFIG) -> Evaluation:
    """psi_q(x) = -ln(1-q) + (ln q) sum_{n>=1} q^(nx) / (1-q^n).

    Summand ratio q^x (1-q^n)/(1-q^(n+1)) < q^x for every n, so the decay
    ratio q^x is certified from the first term.  For x near 0 the ratio
    approaches 1 and max_terms is the effective guard.
    """
    _require_positive(x)
    decay = q_pow(q, x)
    if decay >= 1.0:  # x so small the ratio rounds to 1
        decay = math.nextafter(1.0, 0.0)

    # exp(n x ln q) inlined from q_pow; this loop dominates every
    # certification run.
    exp = math.exp
    ln_q = q.ln_q
    x_ln_q = x * ln_q

    def term(n: int) -> float:
        return exp(n * x_ln_q) / (1.0 - exp(n * ln_q))

    series = sum_geometric_decay(term, decay, 1, cfg)
    value = -math.log1p(-q.q) + q.ln_q * series.value
    return Evaluation(value, abs(q.ln_q) * series.error_estimate, series.terms_used)


def psi_q_m(m: int, x: float, q: QParam, cfg: EvalConfig = DEFAULT_CONFIG) -> Evaluation:
    """m-th derivative of psi_q: (ln q)^(m+1) sum_{n>=1} n^m q^(nx) / (1-q^n).

    Sign follows (ln q)^(m+1): positive for odd m, negative for even m.
    The summand ratio (1+1/n)^m q^x (1-q^n)/(1-q^(n+1)) approaches q^x from
    above, so plain q^x does not dominate.  We pass the inflated ratio
        r = min((9/8)^m q^x, (1+q^x)/2),
    valid for all n >= 8 in the first branch and for all n beyond a small
    threshold ~2m/(1-q^x) in the second; the stopping index exceeds both
    whenever the tail estimate is at all significant.
    """
    if m < 1 or m != int(m):
        raise DomainError(f"m must be an integer >= 1, got {m!r}")
    _require_positive(x)
    qx = q_pow(q, x)
    decay = min(1.125**m * qx, 0.5 * (1.0 + qx))
    if decay >= 1.0:
        decay = math.nextafter(1.0, 0.0)

    exp = math.exp
    ln_q = q.ln_q
    x_ln_q = x * ln_q

    def term(n: int) -> float:
        return float(n) ** m * exp(n * x_ln_q) / (1.0 - exp(n * ln_q))

    series = sum_geometric_decay(term, decay, 1, cfg)
    prefactor = q.ln_q ** (m + 1)
    return Evaluation(prefactor * series.value, abs(prefactor) * series.error_estimate, series.terms_used)


def euler_gamma_q(q: QParam, cfg: EvalConfig = DEFAULT_CONFIG) -> Evaluation:
    """q-extension of the Euler-Mascheroni constant: -psi_q(1)."""
    ev = psi_q(1.0, q, cfg)
    return Evaluation(-ev.value, ev.error_estimate, ev.terms_used)


@dataclass(frozen=True)
class PsiRoot:
    """The unique positive zero of psi_q with its certifying bracket."""

    q: QParam
    root: float
    bracket_low: float
    bracket_high: float
    residual: float


_BRACKET_LOW_LIMIT = 1e-8
_BRACKET_HIGH_LIMIT = 1e8
_ROOT_WIDTH_TOL = 1e-12
_ROOT_RESIDUAL_TOL = 1e-10


def psi_q_root(q: QParam, cfg: EvalConfig = DEFAULT_CONFIG) -> PsiRoot:
    """Bracketing bisection for the positive zero of the increasing psi_q.

    Starts from [1, 2], halves the low end / doubles the high end until a
    sign change is enclosed, then bisects to width 1e-12.  Pure bisection:
    psi_q is cheap and bisection inherits the monotonicity guarantee.
    """

    def f(t: float) -> float:
        return psi_q(t, q, cfg).value

    lo, hi = 1.0, 2.0
    while f(lo) >= 0.0:
        lo *= 0.5
        if lo < _BRACKET_LOW_LIMIT:
            raise BracketFailure(f"no negative psi_q value found down to {_BRACKET_LOW_LIMIT} for q={q.q}")
    while f(hi) <= 0.0:
        hi *= 2.0
        if hi > _BRACKET_HIGH_LIMIT:
            raise BracketFailure(f"no positive psi_q value found up to {_BRACKET_HIGH_LIMIT} for q={q.q}")

    while hi - lo > _ROOT_WIDTH_TOL:
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):  # float spacing exhausted
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid

    # Keep a strict sign change across the reported bracket.
    while f(hi) <= 0.0:
        hi += _ROOT_WIDTH_TOL

    root = 0.5 * (lo + hi)
    residual = f(root)
    if abs(residual) > _ROOT_RESIDUAL_TOL:
        raise BracketFailure(
            f"bisection residual {residual:.3e} exceeds {_ROOT_RESIDUAL_TOL} for q={q.q}"
        )
    return PsiRoot(q=q, root=root, bracket_low=lo, bracket_high=hi, residual=residual)
