"""Command-line interface.

Exit codes: 0 success, 1 semantic failure (not a solution, search found
nothing, oracle mismatch), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .catalog import FAMILIES, FAMILY_PARAMS, catalog_rows, construct, dimension_coverage, format_catalog
from .curvature import (
    DiagCurvature,
    einstein_decompose,
    fixed_point_residual,
    jordan_sharp,
    sharp_bruteforce,
    solution_to_tensor,
)
from .group_ring import phi_to_matrix
from .io import FormatError, dumps, read_solution, solution_to_dict, tensor_to_dict, write_graph, write_solution
from .matrix_core import DEFAULT_FLOAT_TOL, MalformedMatrixError, NotASolutionError, verify_basic
from .search import SearchConfig, search_hopf

log = logging.getLogger("ctw")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _setup_logging() -> None:
    level = os.environ.get("CTW_LOG", "").strip().lower()
    levels = {"debug": logging.DEBUG, "info": logging.INFO}
    logging.basicConfig(level=levels.get(level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _parse_rho(s: str):
    try:
        return float(s) if any(c in s for c in ".eE") else Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rho {s!r}") from exc


def _fmt_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def _report_lines(rep) -> list[str]:
    lines = [
        f"is_solution: {rep.is_solution}",
        f"arithmetic: {rep.arithmetic}",
        f"theta: {_fmt_scalar(rep.theta) if rep.theta is not None else '-'}",
        f"trace_D: {_fmt_scalar(rep.trace_D)}",
        f"hat_theta: {rep.hat_theta!r}",
        f"max_residual: {float(rep.max_residual)!r}",
    ]
    if rep.reason:
        lines.append(f"reason: {rep.reason}")
    if rep.witness is not None:
        lines.append(f"witness: {list(rep.witness)}")
    return lines


# -- subcommands ----------------------------------------------------------------------


def cmd_construct(args) -> int:
    params = {k: getattr(args, k) for k in FAMILY_PARAMS[args.family] if getattr(args, k, None) is not None}
    try:
        c = construct(args.family, **params)
    except NotASolutionError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    meta = {"family": c.family, "params": {k: str(v) for k, v in c.params.items()}}
    if c.srg:
        meta["srg"] = list(c.srg)
    meta.update(c.metadata)
    text = dumps(solution_to_dict(c.S, c.theta, meta))
    # round-trip before anything is written
    S2, theta2, _ = read_solution(text)
    rep = verify_basic(S2)
    if not rep.is_solution:
        raise NotASolutionError(f"round-trip verification failed: {rep.reason}")
    _emit(text, args.out)
    if args.graph_out:
        if c.graph is None:
            raise InputError(f"family {args.family} has no graph")
        write_graph(args.graph_out, c.graph)
    log.info("constructed %s n=%d theta=%s", args.family, c.S.n, _fmt_scalar(c.theta))
    return EXIT_OK


def cmd_verify(args) -> int:
    S, theta, _ = read_solution(args.path)
    if S.is_rational and args.tol not in (None, 0):
        raise InputError("exact verification takes no tolerance")
    rep = verify_basic(S, None if S.is_rational else args.tol)
    lines = _report_lines(rep)
    ok = rep.is_solution
    if ok and not S.is_zero():
        if S.is_rational:
            agree = Fraction(theta) == rep.theta
        else:
            tol = args.tol if args.tol is not None else DEFAULT_FLOAT_TOL
            agree = abs(float(theta) - float(rep.theta)) <= tol * (1 + float(rep.trace_D))
        if not agree:
            lines.append(f"reason: stored theta {_fmt_scalar(theta)} disagrees with the verified value")
            ok = False
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.max_n < 4:
        raise InputError("--max-n must be >= 4")
    rows = catalog_rows(args.max_n)
    _emit(format_catalog(rows), args.out)
    if args.json:
        _emit(json.dumps([r.to_dict() for r in rows], indent=1), args.json)
    return EXIT_OK if all(dimension_coverage(rows, args.max_n).values()) else EXIT_FAIL


def cmd_search(args) -> int:
    try:
        cfg = SearchConfig(
            q=args.q,
            starts=args.starts,
            seed=args.seed,
            max_iters=args.max_iters,
            residual_target=args.target,
            mode=args.mode,
            char_orders=tuple(args.char_orders) if args.char_orders else None,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    try:
        res = search_hopf(cfg)
    except ValueError as exc:  # e.g. no admissible characters for --char-orders
        raise InputError(str(exc)) from exc
    _emit(json.dumps(res.summary(), indent=1), args.out)
    if res.succeeded and args.solution_out:
        write_solution(args.solution_out, phi_to_matrix(res.best_phi), res.best_theta, {"search": {"q": cfg.q, "seed": cfg.seed}})
    return EXIT_OK if res.succeeded else EXIT_FAIL


def cmd_sharp_check(args) -> int:
    if not 2 <= args.n <= 8:
        raise InputError("--n must be in [2, 8]")
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.trials):
        a, b = (rng.normal(size=(args.n, args.n)) for _ in range(2))
        a, b = a + a.T, b + b.T
        np.fill_diagonal(a, 0)
        np.fill_diagonal(b, 0)
        R, T = DiagCurvature(a, exact=False), DiagCurvature(b, exact=False)
        worst = max(worst, float(np.max(np.abs(jordan_sharp(R, T).r - sharp_bruteforce(R, T).r))))
    ident = jordan_sharp(DiagCurvature.identity(args.n), DiagCurvature.identity(args.n))
    id_ok = ident == DiagCurvature.identity(args.n) * (args.n - 2)
    print(f"n={args.n} trials={args.trials} max_deviation={worst!r} id#id=(n-2)id: {id_ok}")
    return EXIT_OK if worst < 1e-10 and id_ok else EXIT_FAIL


def cmd_tensor(args) -> int:
    S, theta, _ = read_solution(args.source)
    try:
        R = solution_to_tensor(S, theta, args.branch)
    except NotASolutionError as exc:
        print(f"not a solution: {exc}", file=sys.stderr)
        return EXIT_FAIL
    res = fixed_point_residual(R, theta).max_abs()
    dec = einstein_decompose(R)
    log.info("fixed-point residual %.3e, einstein=%s", res, dec.is_einstein)
    _emit(dumps(tensor_to_dict(R)), args.out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ctw", description="Construct, verify and search for solutions of S*S + S^2 = theta S + D.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a named solution and write its JSON")
    c.add_argument("--family", required=True, choices=FAMILIES)
    for name in ("m", "l", "q", "k", "variant"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--rho", type=_parse_rho, help="sphere radius; rational unless it has a decimal point")
    c.add_argument("--out", "-o", help="solution JSON path (default stdout)")
    c.add_argument("--graph-out", help="also write the graph JSON (graph families)")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a solution JSON file")
    v.add_argument("path")
    v.add_argument("--tol", type=float, help="float tolerance (float files only)")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("catalog", help="list verified solutions up to a dimension")
    k.add_argument("--max-n", type=int, default=30)
    k.add_argument("--out", "-o", help="text table path (default stdout)")
    k.add_argument("--json", help="also write the rows as JSON")
    k.set_defaults(func=cmd_catalog)

    s = sub.add_parser("search", help="numerical search on (F_q, +)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--starts", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-iters", type=int, default=500)
    s.add_argument("--target", type=float, default=1e-10, help="residual target")
    s.add_argument("--mode", choices=("direct", "chars"), default="direct")
    s.add_argument("--char-orders", type=int, nargs="+", help="character orders allowed in chars mode")
    s.add_argument("--out", "-o", help="report path (default stdout)")
    s.add_argument("--solution-out", help="write the solution JSON on success")
    s.set_defaults(func=cmd_search)

    h = sub.add_parser("sharp-check", help="compare the fast and brute-force # operators")
    h.add_argument("--n", type=int, default=4)
    h.add_argument("--trials", type=int, default=100)
    h.add_argument("--seed", type=int, default=0)
    h.set_defaults(func=cmd_sharp_check)

    t = sub.add_parser("tensor", help="curvature tensor of a solution")
    t.add_argument("--from", dest="source", required=True)
    t.add_argument("--branch", choices=("round", "flat"), default="round")
    t.add_argument("--out", "-o")
    t.set_defaults(func=cmd_tensor)
    return p


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (FormatError, MalformedMatrixError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotASolutionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
