"""Command-line front end: ``lc eval|diff|integrate|norm|seq|dirac``.

Exit codes: 0 success, 2 syntax or usage error, 3 domain or evaluation
error, 4 a dirac identity outside tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import DEFAULT_HORIZON, LCNumber, coerce, std_part, to_json, to_text
from .dist import (
    dirac_bump,
    dirac_heaviside_product_check,
    heaviside,
    moment_expected,
    moment_identity,
    pair_derivative,
)
from .errors import LCError, LCSyntaxError
from .lp import lp_norm
from .measure import closed, integrate, on
from .parse import eval_expr, free_vars, parse, poly_from_expr
from .sequences import SequenceHandle, weak_limit
from .series import derivatives_at

EXIT_OK, EXIT_SYNTAX, EXIT_DOMAIN, EXIT_IDENTITY = 0, 2, 3, 4
HORIZON_ENV = "LC_DEFAULT_HORIZON"
DEFAULT_SCHEDULE = (2, 4, 8, 16, 32)


@dataclass(frozen=True)
class RunConfig:
    horizon: Fraction = DEFAULT_HORIZON
    tol: float = 1e-9
    output: str = "text"  # text | json
    schedule: tuple[int, ...] = DEFAULT_SCHEDULE

    def __post_init__(self):
        if not self.horizon > 0:
            raise ValueError("horizon must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.output not in ("text", "json"):
            raise ValueError(f"unknown output mode {self.output!r}")
        if not self.schedule or any(n < 0 for n in self.schedule):
            raise ValueError("schedule needs non-negative degrees")


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _schedule(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(f"bad schedule {text!r}") from exc


def config_from_args(ns: argparse.Namespace, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    if ns.horizon is not None:
        horizon = _fraction(ns.horizon)
    elif environ.get(HORIZON_ENV):
        horizon = _fraction(environ[HORIZON_ENV])
    else:
        horizon = DEFAULT_HORIZON
    try:
        return RunConfig(
            horizon=horizon,
            tol=ns.tol,
            output="json" if ns.json else "text",
            schedule=_schedule(ns.schedule) if ns.schedule else DEFAULT_SCHEDULE,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# rendering


def _value_json(v):
    if isinstance(v, LCNumber):
        return to_json(v)
    return "+inf" if v > 0 else "-inf"


def _value_text(v) -> str:
    if isinstance(v, LCNumber):
        return to_text(v)
    return "+inf" if v > 0 else "-inf"


def _num(x: float) -> str:
    return format(x, ".17g")


def _emit(cfg: RunConfig, payload: dict, lines: Sequence[str]):
    if cfg.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _lc(src: str, cfg: RunConfig) -> LCNumber:
    v = eval_expr(parse(src), {}, cfg.horizon)
    if not isinstance(v, LCNumber):
        raise UsageError(f"{src!r} is not a finite field element")
    return v


def _real_function(src: str, var: str = "x"):
    e = parse(src)
    extra = free_vars(e) - {var}
    if extra:
        raise UsageError(f"unbound variables in test function: {', '.join(sorted(extra))}")

    def f(x: float) -> float:
        v = eval_expr(e, {var: LCNumber.real(float(x))}, Fraction(2))
        return std_part(v) if isinstance(v, LCNumber) else v

    return f


# subcommands


def cmd_eval(ns, cfg: RunConfig) -> int:
    v = eval_expr(parse(ns.expr), {}, cfg.horizon)
    text = _value_text(v)
    _emit(cfg, {"command": "eval", "expr": ns.expr, "value": _value_json(v), "text": text}, [text])
    return EXIT_OK


def cmd_diff(ns, cfg: RunConfig) -> int:
    ds = derivatives_at(ns.expr, ns.at, ns.order, var=ns.var)
    payload = {"command": "diff", "expr": ns.expr, "at": ns.at, "order": ns.order, "derivatives": ds}
    _emit(cfg, payload, [", ".join(_num(v) for v in ds)])
    return EXIT_OK


def _poly_on(ns, cfg: RunConfig):
    s = poly_from_expr(ns.expr, ns.var, cfg.horizon)
    lo, hi = _lc(ns.lo, cfg), _lc(ns.hi, cfg)
    iv = closed(lo, hi)
    return on(iv, s), iv


def cmd_integrate(ns, cfg: RunConfig) -> int:
    f, iv = _poly_on(ns, cfg)
    v = integrate(f, iv, cfg.horizon)
    text = to_text(v)
    payload = {"command": "integrate", "expr": ns.expr, "from": ns.lo, "to": ns.hi, "value": to_json(v), "text": text}
    _emit(cfg, payload, [text])
    return EXIT_OK


def cmd_norm(ns, cfg: RunConfig) -> int:
    f, iv = _poly_on(ns, cfg)
    p = "inf" if ns.p in ("inf", "oo") else int(ns.p)
    v = lp_norm(f, iv, p, cfg.horizon)
    text = to_text(v)
    payload = {"command": "norm", "expr": ns.expr, "from": ns.lo, "to": ns.hi, "p": str(p), "value": to_json(v), "text": text}
    _emit(cfg, payload, [text])
    return EXIT_OK


def cmd_seq(ns, cfg: RunConfig) -> int:
    e = parse(ns.expr)
    extra = free_vars(e) - {ns.var}
    if extra:
        raise UsageError(f"unbound variables: {', '.join(sorted(extra))}")
    handle = SequenceHandle(lambda n: coerce(eval_expr(e, {ns.var: LCNumber.real(n)}, cfg.horizon)), ns.expr)
    verdict = weak_limit(handle, cutoff_q=_fraction(ns.cutoff), tol=cfg.tol, n_max=ns.n_max)
    payload = {"command": "seq", "expr": ns.expr, **verdict.to_json()}
    lines = [verdict.verdict if verdict.value is None else f"{verdict.verdict}: {to_text(verdict.value)}"]
    lines.append("evidence: " + json.dumps(verdict.evidence))
    _emit(cfg, payload, lines)
    return EXIT_OK


def _dirac_result(cfg, identity, params, expected, computed, defect, pairing=None, rational=None) -> int:
    ok = defect <= cfg.tol and (pairing is None or pairing.stabilized)
    payload = {"command": "dirac", "identity": identity, "params": params, "expected": expected}
    if rational is not None:
        payload["expected_rational"] = rational
    payload["computed"] = computed if isinstance(computed, float) else to_json(computed)
    payload["defect"] = defect
    payload["ok"] = ok
    lines = [f"identity: {identity}"]
    lines += [f"{k}: {v}" for k, v in params.items()]
    lines.append(f"expected: {rational if rational is not None else _num(expected)}")
    lines.append(f"computed: {_num(computed) if isinstance(computed, float) else to_text(computed)}")
    if pairing is not None:
        payload["pairing"] = pairing.to_json()
        lines.append("degrees: " + ", ".join(str(n) for n in pairing.degrees))
        lines.append("values: " + ", ".join(_num(v) for v in pairing.values))
        lines.append(f"stabilized: {'yes' if pairing.stabilized else 'no'}")
    lines.append(f"defect: {defect:.3g}")
    lines.append("ok" if ok else "FAILED")
    _emit(cfg, payload, lines)
    return EXIT_OK if ok else EXIT_IDENTITY


def cmd_dirac(ns, cfg: RunConfig) -> int:
    r = _lc(ns.at, cfg)
    h = _lc(ns.h, cfg)
    a, b = ns.a, ns.b
    if ns.demo == "moments":
        delta = dirac_bump(r, h, target_horizon=cfg.horizon)
        H = heaviside(delta, a, b)
        v = moment_identity(delta, H, ns.m, ns.n)
        want = moment_expected(ns.m, ns.n)
        defect = max([abs(v[0] - float(want))] + [abs(c) for q, c in v.terms if q != 0])
        params = {"m": ns.m, "n": ns.n}
        return _dirac_result(cfg, "moments", params, float(want), v, defect, rational=str(want))
    f = _real_function(ns.f)
    if ns.demo == "product":
        delta = dirac_bump(r, h, target_horizon=cfg.horizon)
        H = heaviside(delta, a, b)
        rep = dirac_heaviside_product_check(delta, H, f, cfg.schedule, a, b, cfg.tol)
        params = {"f": ns.f, "at": ns.at}
    else:
        order = max(2, ns.k + 1) if ns.order is None else ns.order
        delta = dirac_bump(r, h, order=order, target_horizon=cfg.horizon)
        rep = pair_derivative(delta, ns.k, f, cfg.schedule, a, b, cfg.tol)
        params = {"f": ns.f, "at": ns.at, "k": ns.k, "bump_order": order}
    return _dirac_result(cfg, ns.demo, params, rep.expected, rep.limit, rep.defect, pairing=rep)


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--horizon", default=None, help="target horizon p/q (default 12, or $LC_DEFAULT_HORIZON)")
    common.add_argument("--tol", type=float, default=1e-9, help="tolerance for limits and identities")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--schedule", default=None, help="Chebyshev degrees, e.g. 2,4,8,16,32")

    parser = argparse.ArgumentParser(prog="lc", description="Levi-Civita field calculator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("diff", parents=[common], help="derivatives at a real point")
    p.add_argument("expr")
    p.add_argument("--at", type=float, required=True)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--var", default="x")
    p.set_defaults(func=cmd_diff)

    for name, func, doc in (("integrate", cmd_integrate, "integral of a polynomial"), ("norm", cmd_norm, "L^p norm of a polynomial")):
        p = sub.add_parser(name, parents=[common], help=doc)
        p.add_argument("expr")
        p.add_argument("--from", dest="lo", required=True)
        p.add_argument("--to", dest="hi", required=True)
        p.add_argument("--var", default="x")
        if name == "norm":
            p.add_argument("--p", default="2")
        p.set_defaults(func=func)

    p = sub.add_parser("seq", parents=[common], help="weak limit of a sequence in n")
    p.add_argument("expr")
    p.add_argument("--var", default="n")
    p.add_argument("--cutoff", default="8")
    p.add_argument("--n-max", dest="n_max", type=int, default=512)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("dirac", parents=[common], help="Dirac and Heaviside identities")
    p.add_argument("demo", choices=["product", "moments", "derivative"])
    p.add_argument("--f", default="cos(x)", help="test function of x")
    p.add_argument("--at", default="0", help="centre of the bump")
    p.add_argument("--h", default="d", help="half-width of the bump")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--order", type=int, default=None, help="bump exponent (default k+1, at least 2)")
    p.add_argument("--a", type=float, default=-1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.set_defaults(func=cmd_dirac)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 after --help
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        return ns.func(ns, cfg)
    except UsageError as exc:
        print(f"lc: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except LCSyntaxError as exc:
        print(f"lc: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except (LCError, ZeroDivisionError, ArithmeticError, ValueError) as exc:
        print(f"lc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
