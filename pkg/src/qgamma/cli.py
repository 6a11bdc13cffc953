"""Command-line front end: evaluation, bound inspection, certification,
root finding and CSV table emission.

Exit codes: 0 success / all checks pass, 1 certification failures,
2 usage or domain error, 3 numerical trouble (non-convergence, overflow,
bracket failure, or a verify run whose failures are mostly evaluation
errors).

Values print with 17 significant digits so they re-parse to the identical
double.  The environment variable QGAMMA_MAX_TERMS overrides the default
series term cap; an explicit --max-terms flag beats the environment.

JSON report schema (one object per check):
  { "schema_version": 1, "inequality_id": str, "n_samples": int,
    "n_pass": int, "worst_lower_margin": float, "worst_upper_margin": float,
    "failures": [ { "point": {"x","y","q","aux"},
                    "lower": float, "ratio": float, "upper": float } ],
    "wall_time_s": float }

Table CSV: header ``x,lower,ratio,upper,lower_margin,upper_margin``, one
row per grid point, '\\n' newlines, '.' decimal point, no locale formatting.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

import numpy as np

from .classical import ln_gamma_classical, psi_classical
from .constants import CERT_SLACK_LOG
from .errors import (
    AlphaBelowRoot,
    BracketFailure,
    DomainError,
    NonConvergence,
    Overflow,
    QGammaError,
)
from .qcore import EvalConfig, Evaluation, QParam
from .qspecial import euler_gamma_q, gamma_q, ln_gamma_q, psi_q, psi_q_m, psi_q_root
from .bounds import INEQUALITY_IDS
from .propcheck import (
    ALL_CHECK_IDS,
    evaluate_point,
    report_to_dict,
    report_to_text,
    run_check,
)

EXIT_OK = 0
EXIT_CERT_FAILURES = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

ENV_MAX_TERMS = "QGAMMA_MAX_TERMS"

# Argument slots each inequality consumes, used for flag validation and for
# assembling (x, y, q, aux) points.
_INEQ_ARGS = {
    "thm_main": ("x", "y", "q"),
    "cor_half_shift": ("x", "q"),
    "thm_alpha": ("x", "y", "q", "alpha"),
    "thm_mvt": ("x", "y", "q"),
    "cor_mu_lambda": ("x", "mu", "lam", "q"),
    "cor_one_half": ("x", "q"),
    "remark_rearranged": ("x", "q"),
    "keckic_vasic": ("x", "y"),
    "zhang_xu_situ": ("x", "y"),
}


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _eval_config(args) -> EvalConfig:
    max_terms = getattr(args, "max_terms", None)
    if max_terms is None:
        env = os.environ.get(ENV_MAX_TERMS)
        if env is not None:
            try:
                max_terms = int(env)
            except ValueError:
                raise DomainError(f"{ENV_MAX_TERMS} must be an integer, got {env!r}") from None
    cfg = EvalConfig()
    if max_terms is not None or getattr(args, "rel_tol", None) is not None:
        cfg = EvalConfig(
            rel_tol=args.rel_tol if getattr(args, "rel_tol", None) is not None else cfg.rel_tol,
            abs_tol=cfg.abs_tol,
            max_terms=max_terms if max_terms is not None else cfg.max_terms,
        )
    return cfg


def _emit(lines_or_obj, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(lines_or_obj))
    else:
        for key, value in lines_or_obj.items():
            print(f"{key}: {value}")


def _point_from_args(ineq: str, args) -> tuple:
    missing = [name for name in _INEQ_ARGS[ineq] if getattr(args, name, None) is None]
    if missing:
        raise DomainError(f"{ineq} requires --" + ", --".join(missing))
    aux = None
    if ineq == "thm_alpha":
        aux = args.alpha
    elif ineq == "cor_mu_lambda":
        aux = (args.mu, args.lam)
    y = getattr(args, "y", None) if "y" in _INEQ_ARGS[ineq] else None
    q = getattr(args, "q", None) if "q" in _INEQ_ARGS[ineq] else None
    return (args.x, y, q, aux)


def _cmd_eval(args) -> int:
    cfg = _eval_config(args)
    fn = args.fn
    if fn in ("gamma_q", "ln_gamma_q", "psi_q", "psi_q_m", "euler_gamma_q"):
        if args.q is None:
            raise DomainError(f"{fn} requires --q")
        q = QParam(args.q)
        if fn == "euler_gamma_q":
            ev = euler_gamma_q(q, cfg)
        else:
            if args.x is None:
                raise DomainError(f"{fn} requires --x")
            if fn == "gamma_q":
                ev = gamma_q(args.x, q, cfg)
            elif fn == "ln_gamma_q":
                ev = ln_gamma_q(args.x, q, cfg)
            elif fn == "psi_q":
                ev = psi_q(args.x, q, cfg)
            else:
                ev = psi_q_m(args.m, args.x, q, cfg)
    elif fn == "gamma":
        if args.x is None:
            raise DomainError("gamma requires --x")
        ln_ev = ln_gamma_classical(args.x)
        value = math.exp(ln_ev.value)
        ev = Evaluation(value, abs(value) * ln_ev.error_estimate, ln_ev.terms_used)
    elif fn == "psi":
        if args.x is None:
            raise DomainError("psi requires --x")
        ev = psi_classical(args.x)
    else:
        raise DomainError(f"unknown function {fn!r}")
    payload = {
        "value": _fmt(ev.value) if args.format == "plain" else ev.value,
        "error_estimate": _fmt(ev.error_estimate) if args.format == "plain" else ev.error_estimate,
        "terms_used": ev.terms_used,
    }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    cfg = _eval_config(args)
    pair = evaluate_point(args.ineq, _point_from_args(args.ineq, args), cfg, force=args.force)
    satisfied = (
        pair.log_ratio - pair.log_lower >= -CERT_SLACK_LOG
        and pair.log_upper - pair.log_ratio >= -CERT_SLACK_LOG
    )
    if args.format == "json":
        payload = {
            "inequality_id": pair.inequality_id,
            "lower": pair.lower,
            "ratio": pair.ratio,
            "upper": pair.upper,
            "lower_margin": pair.lower_margin,
            "upper_margin": pair.upper_margin,
            "strict": pair.strict,
            "satisfied": satisfied,
        }
    else:
        payload = {
            "inequality_id": pair.inequality_id,
            "lower": _fmt(pair.lower),
            "ratio": _fmt(pair.ratio),
            "upper": _fmt(pair.upper),
            "lower_margin": _fmt(pair.lower_margin),
            "upper_margin": _fmt(pair.upper_margin),
            "strict": pair.strict,
            "satisfied": satisfied,
        }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_verify(args) -> int:
    cfg = _eval_config(args)
    if args.ineq == "all":
        check_ids = ALL_CHECK_IDS
    elif args.ineq in ALL_CHECK_IDS:
        check_ids = (args.ineq,)
    else:
        raise DomainError(f"unknown inequality id {args.ineq!r}")
    reports = [
        run_check(cid, seed=args.seed, samples=args.samples, cfg=cfg, corrupt_upper=args.corrupt_bounds)
        for cid in check_ids
    ]
    if args.format == "json":
        print(json.dumps([report_to_dict(r) for r in reports]))
    else:
        print("\n\n".join(report_to_text(r) for r in reports))
    pervasive = any(
        sum(1 for f in r.failures if "error" in f) > r.n_samples / 2 for r in reports if r.n_samples
    )
    if pervasive:
        return EXIT_NUMERICAL
    if any(r.n_pass < r.n_samples for r in reports):
        return EXIT_CERT_FAILURES
    return EXIT_OK


def _cmd_root(args) -> int:
    cfg = _eval_config(args)
    result = psi_q_root(QParam(args.q), cfg)
    if args.format == "json":
        payload = {
            "root": result.root,
            "bracket_low": result.bracket_low,
            "bracket_high": result.bracket_high,
            "residual": result.residual,
        }
    else:
        payload = {
            "root": _fmt(result.root),
            "bracket_low": _fmt(result.bracket_low),
            "bracket_high": _fmt(result.bracket_high),
            "residual": _fmt(result.residual),
        }
    _emit(payload, args.format)
    return EXIT_OK


_TABLE_HEADER = "x,lower,ratio,upper,lower_margin,upper_margin"


def _cmd_table(args) -> int:
    cfg = _eval_config(args)
    if args.steps < 2:
        raise DomainError(f"steps must be >= 2, got {args.steps!r}")
    if not args.min < args.max:
        raise DomainError(f"requires min < max, got {args.min!r}, {args.max!r}")
    slots = _INEQ_ARGS[args.ineq]
    var_slot = "lam" if args.var == "lambda" else args.var
    if var_slot not in slots and not (var_slot == "alpha" and "alpha" in slots):
        raise DomainError(f"{args.ineq} has no sweep variable {args.var!r}")
    rows = []
    for value in np.linspace(args.min, args.max, args.steps):
        setattr(args, var_slot, float(value))
        pair = evaluate_point(args.ineq, _point_from_args(args.ineq, args), cfg, force=args.force)
        rows.append((float(value), pair))
    if args.format == "json":
        print(json.dumps([
            {
                "x": v,
                "lower": p.lower,
                "ratio": p.ratio,
                "upper": p.upper,
                "lower_margin": p.lower_margin,
                "upper_margin": p.upper_margin,
            }
            for v, p in rows
        ]))
    else:
        lines = [_TABLE_HEADER]
        for v, p in rows:
            lines.append(
                ",".join(_fmt(f) for f in (v, p.lower, p.ratio, p.upper, p.lower_margin, p.upper_margin))
            )
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgamma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("plain", "json"), default="plain")
        p.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
        p.add_argument("--max-terms", dest="max_terms", type=int, default=None)

    p_eval = sub.add_parser("eval", help="evaluate one special function at a point")
    p_eval.add_argument("--fn", required=True,
                        choices=("gamma_q", "ln_gamma_q", "psi_q", "psi_q_m", "euler_gamma_q", "gamma", "psi"))
    p_eval.add_argument("--x", type=float)
    p_eval.add_argument("--q", type=float)
    p_eval.add_argument("--m", type=int, default=1)
    add_common(p_eval)
    p_eval.set_defaults(handler=_cmd_eval)

    p_bounds = sub.add_parser("bounds", help="evaluate one inequality's bound pair at a point")
    p_bounds.add_argument("--ineq", required=True, choices=INEQUALITY_IDS)
    p_bounds.add_argument("--x", type=float)
    p_bounds.add_argument("--y", type=float)
    p_bounds.add_argument("--q", type=float)
    p_bounds.add_argument("--alpha", type=float)
    p_bounds.add_argument("--mu", type=float)
    p_bounds.add_argument("--lam", "--lambda", dest="lam", type=float)
    p_bounds.add_argument("--force", action="store_true",
                          help="evaluate outside the stated hypothesis (exploratory)")
    add_common(p_bounds)
    p_bounds.set_defaults(handler=_cmd_bounds)

    p_verify = sub.add_parser("verify", help="certify inequalities over sampled domains")
    p_verify.add_argument("--ineq", default="all",
                          help="one check id or 'all' (default: all)")
    p_verify.add_argument("--samples", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--corrupt-bounds", dest="corrupt_bounds", action="store_true",
                          help="harness self-test: halve every upper bound, must fail")
    add_common(p_verify)
    p_verify.set_defaults(handler=_cmd_verify)

    p_root = sub.add_parser("root", help="positive root of the q-digamma")
    p_root.add_argument("--q", type=float, required=True)
    add_common(p_root)
    p_root.set_defaults(handler=_cmd_root)

    p_table = sub.add_parser("table", help="sweep one variable, emit CSV or JSON rows")
    p_table.add_argument("--ineq", required=True, choices=INEQUALITY_IDS)
    p_table.add_argument("--var", required=True, choices=("x", "y", "q", "alpha", "mu", "lam", "lambda"))
    p_table.add_argument("--min", type=float, required=True)
    p_table.add_argument("--max", type=float, required=True)
    p_table.add_argument("--steps", type=int, required=True)
    p_table.add_argument("--x", type=float)
    p_table.add_argument("--y", type=float)
    p_table.add_argument("--q", type=float)
    p_table.add_argument("--alpha", type=float)
    p_table.add_argument("--mu", type=float)
    p_table.add_argument("--lam", "--lambda", dest="lam", type=float)
    p_table.add_argument("--force", action="store_true")
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    p_table.add_argument("--max-terms", dest="max_terms", type=int, default=None)
    p_table.set_defaults(handler=_cmd_table)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (DomainError, AlphaBelowRoot) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonConvergence, Overflow, BracketFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except QGammaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
