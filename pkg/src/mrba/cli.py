"""The ``mrb`` command line.

Exit status 0 on success, 1 when a check finds a nonzero defect (or a
solve does not converge), 2 on usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .algebra import UnknownDecoration
from .checks import SUITES, run_check
from .parser import ParseError
from .relative import AugmentationError
from .session import EvalError, Session, SessionConfig, load_kernels, parse_coeffs
from .volterra import NotConverged, VolterraModel, picard_residual, picard_solve
from .zinbiel import NotLinear

EXIT_OK, EXIT_DEFECT, EXIT_USAGE = 0, 1, 2
USER_ERRORS = (ParseError, EvalError, UnknownDecoration, NotLinear, AugmentationError, KeyError, ValueError)


def _names(text: str) -> tuple:
    return tuple(p.strip() for p in text.split(",") if p.strip())


def _assignments(items) -> dict:
    out = {}
    for item in items or ():
        name, eq, expr = item.partition("=")
        if not eq or not name.strip():
            raise EvalError(f"--assign expects name=expr, got {item!r}")
        out[name.strip()] = expr
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mrb", description="Exact matching Rota-Baxter and Zinbiel computations.")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate an expression to canonical form")
    ev.add_argument("expr")
    ev.add_argument("--mode", choices=("free", "relative", "zinbiel", "volterra"), default="free")
    ev.add_argument("--omega", default="a", help="comma-separated decoration names")
    ev.add_argument("--base", choices=("volterra", "free"), default="volterra", help="base algebra in relative mode")
    ev.add_argument("--base-vars", default="t", help="base variables when --base free")
    ev.add_argument("--kernels", help="'unit' or a JSON file mapping decoration -> polynomial in x")
    ev.add_argument("--zinbiel", action="store_true", help="allow <: and :> in volterra mode")
    ev.add_argument("--vars", help="comma-separated identifiers (generators in zinbiel mode); others are rejected")
    ev.add_argument("--assign", action="append", metavar="NAME=EXPR", help="images for lift(); repeatable")
    ev.add_argument("--coeffs", help="picard coefficients, e.g. a=1,b=-1/2 (default all 1)")
    ev.add_argument("--json", action="store_true")

    ck = sub.add_parser("check", help="run a randomized defect suite")
    ck.add_argument("suite", choices=(*SUITES, "all"))
    ck.add_argument("--trials", type=int, default=100)
    ck.add_argument("--seed", type=int, default=0, help="overridden by MRB_SEED")
    ck.add_argument("--omega", default="a,b,c")
    ck.add_argument("--jobs", type=int, default=1, help="worker processes")
    ck.add_argument("--corrupt", action="store_true", help="swap in a deliberately wrong Zinbiel product")

    sv = sub.add_parser("solve", help="Picard iteration for u = g + sum_w c_w*Pw(u)")
    sv.add_argument("g")
    sv.add_argument("--kernels", required=True)
    sv.add_argument("--cap", type=int, required=True, help="degree cap")
    sv.add_argument("--iters", type=int, default=100)
    sv.add_argument("--coeffs", help="e.g. a=1,b=-1/2 (default all 1)")
    sv.add_argument("--json", action="store_true")
    return ap


def cmd_eval(args, out) -> int:
    decs = _names(args.omega)
    cfg = SessionConfig(
        mode=args.mode,
        decorations=decs,
        base=args.base,
        base_vars=_names(args.base_vars),
        kernels=load_kernels(args.kernels, decs),
        zinbiel=args.zinbiel,
        variables=_names(args.vars) if args.vars else None,
        assign=_assignments(args.assign),
        coeffs=parse_coeffs(args.coeffs),
    )
    s = Session(cfg)
    value = s.evaluate(args.expr)
    if args.json:
        print(json.dumps(s.to_json(value)), file=out)
    else:
        print(s.render(value), file=out)
    return EXIT_OK


def seed_from_env(default: int) -> int:
    env = os.environ.get("MRB_SEED")
    if env is None or env == "":
        return default
    try:
        return int(env)
    except ValueError:
        raise EvalError(f"MRB_SEED must be an integer, got {env!r}") from None


def cmd_check(args, out) -> int:
    seed = seed_from_env(args.seed)
    decs = _names(args.omega)
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in suites:
        t0 = time.perf_counter()
        report = run_check(name, decs, args.trials, seed, corrupt=args.corrupt, jobs=args.jobs)
        print(report.format(time.perf_counter() - t0), file=out)
        ok = ok and report.ok
    return EXIT_OK if ok else EXIT_DEFECT


def cmd_solve(args, out) -> int:
    kernels = load_kernels(args.kernels, None)
    if not kernels:
        raise EvalError("the kernel file declares no decorations")
    cfg = SessionConfig(mode="volterra", decorations=tuple(kernels), kernels=kernels, coeffs=parse_coeffs(args.coeffs))
    s = Session(cfg)
    g = s.evaluate(args.g)
    coeffs = cfg.coeffs if cfg.coeffs is not None else {w: 1 for w in kernels}
    vol = VolterraModel(kernels)
    try:
        u = picard_solve(g, coeffs, vol.kernels, args.cap, args.iters)
    except NotConverged as exc:
        print(f"not converged: {exc}", file=out)
        return EXIT_DEFECT
    residual = picard_residual(u, g, coeffs, vol.kernels, args.cap)
    if args.json:
        print(json.dumps({**s.to_json(u), "residual": residual.to_text()}), file=out)
    else:
        print(u.to_text(), file=out)
    return EXIT_OK if not residual else EXIT_DEFECT


COMMANDS = {"eval": cmd_eval, "check": cmd_check, "solve": cmd_solve}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except USER_ERRORS as exc:
        msg = exc.args[0] if type(exc) is KeyError and exc.args else exc
        print(f"mrb: error: {msg}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
