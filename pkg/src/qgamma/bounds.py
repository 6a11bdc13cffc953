"""One operation per ratio inequality.

Every operation returns a BoundPair holding the lower bound, the exact
ratio, and the upper bound at one point.  All three are computed in log
space (the exponent forms span hundreds of orders of magnitude) and
exponentiated only for presentation; certification compares the log fields.

Log differences are written as log(x) - log(y) rather than log(x/y) so that
swapping the arguments negates every bound exponent exactly in floating
point; the antisymmetry of the main construction then holds to the bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from .classical import ClassicalConfig, DEFAULT_CLASSICAL_CONFIG, ln_gamma_classical, psi_classical
from .errors import AlphaBelowRoot, DomainError
from .qcore import DEFAULT_CONFIG, EvalConfig, QParam, q_bracket, q_bracket_derivative, q_pow
from .qspecial import ln_gamma_q, psi_q, psi_q_root

INEQUALITY_IDS = (
    "thm_main",
    "cor_half_shift",
    "thm_alpha",
    "thm_mvt",
    "cor_mu_lambda",
    "cor_one_half",
    "remark_rearranged",
    "keckic_vasic",
    "zhang_xu_situ",
)

_MAX_EXP = 709.78


def _safe_exp(z: float) -> float:
    return math.inf if z > _MAX_EXP else math.exp(z)


@dataclass(frozen=True)
class BoundPair:
    """Evaluated (lower, ratio, upper) triple of one double inequality.

    The log_* fields are the primary representation; lower/ratio/upper are
    their exponentials.  ``strict`` records whether the source inequality
    is strict.
    """

    inequality_id: str
    lower: float
    ratio: float
    upper: float
    lower_margin: float
    upper_margin: float
    strict: bool
    log_lower: float
    log_ratio: float
    log_upper: float


def _pair(inequality_id: str, log_lower: float, log_ratio: float, log_upper: float, strict: bool) -> BoundPair:
    lower = _safe_exp(log_lower)
    ratio = _safe_exp(log_ratio)
    upper = _safe_exp(log_upper)
    return BoundPair(
        inequality_id=inequality_id,
        lower=lower,
        ratio=ratio,
        upper=upper,
        lower_margin=ratio - lower,
        upper_margin=upper - ratio,
        strict=strict,
        log_lower=log_lower,
        log_ratio=log_ratio,
        log_upper=log_upper,
    )


def ratio_gamma_q(x: float, y: float, q: QParam, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Gamma_q(x) / Gamma_q(y), computed as exp(ln Gamma_q(x) - ln Gamma_q(y))."""
    return _safe_exp(ln_gamma_q(x, q, cfg).value - ln_gamma_q(y, q, cfg).value)


def thm_main_bounds(
    x: float, y: float, q: QParam, cfg: EvalConfig = DEFAULT_CONFIG, force: bool = False
) -> BoundPair:
    """Geometric-convexity bounds on Gamma_q(x)/Gamma_q(y) for x, y >= 1.

    Log form: s(t) * (log x - log y) + (q^x - q^y)/(1 - q), with the slope
    s(t) = t * (d[t]_q/dt + psi_q(t)) taken at t = y for the lower bound and
    t = x for the upper.
    """
    if not force and (x < 1.0 or y < 1.0):
        raise DomainError(f"requires x >= 1 and y >= 1, got x={x!r}, y={y!r}")
    if not (x > 0.0 and y > 0.0):
        raise DomainError(f"requires positive arguments, got x={x!r}, y={y!r}")
    ldiff = math.log(x) - math.log(y)
    shift = (q_pow(q, x) - q_pow(q, y)) / (1.0 - q.q)
    slope_y = y * (q_bracket_derivative(y, q) + psi_q(y, q, cfg).value)
    slope_x = x * (q_bracket_derivative(x, q) + psi_q(x, q, cfg).value)
    log_ratio = ln_gamma_q(x, q, cfg).value - ln_gamma_q(y, q, cfg).value
    return _pair("thm_main", slope_y * ldiff + shift, log_ratio, slope_x * ldiff + shift, strict=False)


def cor_half_shift_bounds(
    x: float, q: QParam, cfg: EvalConfig = DEFAULT_CONFIG, force: bool = False
) -> BoundPair:
    """The main bounds specialized to the ratio Gamma_q(x+1)/Gamma_q(x+1/2).

    Defined for x > 0 by substitution; equality with thm_main_bounds at
    (x+1, x+1/2) is an identity of this implementation, not an approximation.
    """
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    inner = thm_main_bounds(x + 1.0, x + 0.5, q, cfg, force=True)
    return replace(inner, inequality_id="cor_half_shift")


def thm_alpha_bounds(
    x: float,
    y: float,
    alpha: float,
    q: QParam,
    cfg: EvalConfig = DEFAULT_CONFIG,
    force: bool = False,
) -> BoundPair:
    """Shifted-argument bounds on Gamma_q(x+a)/Gamma_q(y+a) for a >= x*.

    x* is the positive root of psi_q; alpha below it (beyond a 1e-9 grace)
    raises AlphaBelowRoot unless force is set for exploratory evaluation.
    """
    if not (x > 0.0 and y > 0.0):
        raise DomainError(f"requires x > 0 and y > 0, got x={x!r}, y={y!r}")
    if not force:
        root = cached_psi_root(q, cfg)
        if alpha < root - 1e-9:
            raise AlphaBelowRoot(alpha, root)
    common = (y - x) + (math.log(x + alpha) - math.log(y + alpha))
    ldiff = math.log(x) - math.log(y)
    slope_y = y * ((y + alpha - 1.0) / (y + alpha) + psi_q(y + alpha, q, cfg).value)
    slope_x = x * ((x + alpha - 1.0) / (x + alpha) + psi_q(x + alpha, q, cfg).value)
    log_ratio = ln_gamma_q(x + alpha, q, cfg).value - ln_gamma_q(y + alpha, q, cfg).value
    return _pair("thm_alpha", common + slope_y * ldiff, log_ratio, common + slope_x * ldiff, strict=False)


def thm_mvt_bounds(
    x: float, y: float, q: QParam, cfg: EvalConfig = DEFAULT_CONFIG, force: bool = False
) -> BoundPair:
    """Mean-value bounds: (x-y) psi_q(y) < ln ratio < (x-y) psi_q(x), x > y > 0."""
    if not (x > 0.0 and y > 0.0):
        raise DomainError(f"requires positive arguments, got x={x!r}, y={y!r}")
    if not force and not x > y:
        raise DomainError(f"requires x > y, got x={x!r}, y={y!r}")
    gap = x - y
    log_lower = gap * psi_q(y, q, cfg).value
    log_upper = gap * psi_q(x, q, cfg).value
    log_ratio = ln_gamma_q(x, q, cfg).value - ln_gamma_q(y, q, cfg).value
    return _pair("thm_mvt", log_lower, log_ratio, log_upper, strict=True)


def cor_mu_lambda_bounds(
    x: float,
    mu: float,
    lam: float,
    q: QParam,
    cfg: EvalConfig = DEFAULT_CONFIG,
    force: bool = False,
) -> BoundPair:
    """Mean-value bounds for Gamma_q(x+mu)/Gamma_q(x+lambda), mu > lambda > 0."""
    if not force:
        if not lam > 0.0:
            raise DomainError(f"lambda must be positive, got {lam!r}")
        if not mu > lam:
            raise DomainError(f"requires mu > lambda, got mu={mu!r}, lambda={lam!r}")
        if not x > 0.0:
            raise DomainError(f"x must be positive, got {x!r}")
    inner = thm_mvt_bounds(x + mu, x + lam, q, cfg, force=force)
    return replace(inner, inequality_id="cor_mu_lambda")


def cor_one_half_bounds(
    x: float, q: QParam, cfg: EvalConfig = DEFAULT_CONFIG, force: bool = False
) -> BoundPair:
    """Mean-value bounds for Gamma_q(x+1)/Gamma_q(x+1/2), x > 0."""
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    inner = thm_mvt_bounds(x + 1.0, x + 0.5, q, cfg)
    return replace(inner, inequality_id="cor_one_half")


def remark_rearranged_bounds(
    x: float, q: QParam, cfg: EvalConfig = DEFAULT_CONFIG, force: bool = False
) -> BoundPair:
    """Rearranged half-shift bounds on Gamma_q(x)/Gamma_q(x+1/2).

    Every component is the corresponding cor_one_half component divided by
    [x]_q, exactly as the functional equation Gamma_q(x+1) = [x]_q Gamma_q(x)
    rearranges the displayed inequality.
    """
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    inner = cor_one_half_bounds(x, q, cfg)
    bracket = q_bracket(x, q)
    log_bracket = math.log(bracket)
    lower = inner.lower / bracket
    ratio = inner.ratio / bracket
    upper = inner.upper / bracket
    return BoundPair(
        inequality_id="remark_rearranged",
        lower=lower,
        ratio=ratio,
        upper=upper,
        lower_margin=ratio - lower,
        upper_margin=upper - ratio,
        strict=inner.strict,
        log_lower=inner.log_lower - log_bracket,
        log_ratio=inner.log_ratio - log_bracket,
        log_upper=inner.log_upper - log_bracket,
    )


def keckic_vasic_bounds(
    x: float,
    y: float,
    cfg: ClassicalConfig = DEFAULT_CLASSICAL_CONFIG,
    force: bool = False,
) -> BoundPair:
    """Classical power-exponential bounds on Gamma(x)/Gamma(y) for x >= y > 1."""
    if not (x > 0.0 and y > 0.0):
        raise DomainError(f"requires positive arguments, got x={x!r}, y={y!r}")
    if not force and not (x >= y > 1.0):
        raise DomainError(f"requires x >= y > 1, got x={x!r}, y={y!r}")
    lx = math.log(x)
    ly = math.log(y)
    log_lower = (x - 1.0) * lx - (y - 1.0) * ly + (y - x)
    log_upper = (x - 0.5) * lx - (y - 0.5) * ly + (y - x)
    log_ratio = ln_gamma_classical(x, cfg).value - ln_gamma_classical(y, cfg).value
    return _pair("keckic_vasic", log_lower, log_ratio, log_upper, strict=False)


def zhang_xu_situ_bounds(
    x: float,
    y: float,
    cfg: ClassicalConfig = DEFAULT_CLASSICAL_CONFIG,
    force: bool = False,
) -> BoundPair:
    """Classical geometric-convexity bounds on Gamma(x)/Gamma(y) for x, y > 0."""
    if not (x > 0.0 and y > 0.0):
        raise DomainError(f"requires positive arguments, got x={x!r}, y={y!r}")
    lx = math.log(x)
    ly = math.log(y)
    ldiff = lx - ly
    base = x * lx - y * ly + (y - x)
    log_lower = base + y * (psi_classical(y).value - ly) * ldiff
    log_upper = base + x * (psi_classical(x).value - lx) * ldiff
    log_ratio = ln_gamma_classical(x, cfg).value - ln_gamma_classical(y, cfg).value
    return _pair("zhang_xu_situ", log_lower, log_ratio, log_upper, strict=False)


# --------------------------------------------------------------------------
# Root cache and sampling domains
# --------------------------------------------------------------------------

# psi_q root per q, computed once per certification run.  Keyed by the exact
# float; concurrent initialization at worst recomputes the same value.
_ROOT_CACHE: dict[float, float] = {}


def cached_psi_root(q: QParam, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    root = _ROOT_CACHE.get(q.q)
    if root is None:
        root = psi_q_root(q, cfg).root
        _ROOT_CACHE[q.q] = root
    return root


_CONSTRAINTS = ("none", "x_greater_than_y", "mu_greater_than_lambda", "alpha_at_least_root")


@dataclass(frozen=True)
class DomainSpec:
    """Sampling region for one inequality.

    ``aux_range`` holds the alpha offset above the psi_q root when the
    constraint is alpha_at_least_root, and the common (mu, lambda) range
    when it is mu_greater_than_lambda.  ``q_range`` is None for the
    classical inequalities.
    """

    x_range: Tuple[float, float]
    y_range: Optional[Tuple[float, float]] = None
    q_range: Optional[Tuple[float, float]] = (0.05, 0.95)
    aux_range: Optional[Tuple[float, float]] = None
    constraint: str = "none"

    def __post_init__(self):
        for name, rng in (("x_range", self.x_range), ("y_range", self.y_range), ("aux_range", self.aux_range)):
            if rng is not None and not rng[0] <= rng[1]:
                raise DomainError(f"{name} is empty: {rng!r}")
        if self.q_range is not None and not (0.0 < self.q_range[0] <= self.q_range[1] < 1.0):
            raise DomainError(f"q_range must sit inside (0, 1), got {self.q_range!r}")
        if self.constraint not in _CONSTRAINTS:
            raise DomainError(f"unknown constraint {self.constraint!r}")


_Q_DEFAULT = (0.05, 0.95)

DEFAULT_DOMAINS: dict[str, DomainSpec] = {
    "thm_main": DomainSpec((1.0, 30.0), (1.0, 30.0), _Q_DEFAULT),
    "cor_half_shift": DomainSpec((0.05, 30.0), None, _Q_DEFAULT),
    "thm_alpha": DomainSpec((0.05, 20.0), (0.05, 20.0), _Q_DEFAULT, (0.0, 10.0), "alpha_at_least_root"),
    "thm_mvt": DomainSpec((0.05, 30.0), (0.05, 30.0), _Q_DEFAULT, None, "x_greater_than_y"),
    "cor_mu_lambda": DomainSpec((0.05, 30.0), None, _Q_DEFAULT, (0.05, 5.0), "mu_greater_than_lambda"),
    "cor_one_half": DomainSpec((0.05, 30.0), None, _Q_DEFAULT),
    "remark_rearranged": DomainSpec((0.05, 30.0), None, _Q_DEFAULT),
    "keckic_vasic": DomainSpec((1.0 + 1e-6, 30.0), (1.0 + 1e-6, 30.0), None, None, "x_greater_than_y"),
    # Capped at 8: this inequality's margin is quadratic in |x - y| near the
    # diagonal with curvature ~1/(12 y^3), and the classical evaluation depth
    # used for certification must keep its truncation error below that.
    "zhang_xu_situ": DomainSpec((0.05, 8.0), (0.05, 8.0), None),
}


def default_domain(inequality_id: str) -> DomainSpec:
    try:
        return DEFAULT_DOMAINS[inequality_id]
    except KeyError:
        raise DomainError(f"unknown inequality id {inequality_id!r}") from None
