"""Command-line entry point.

Subcommands: run (TOML configs), reproduce (built-in registry), list,
ineq (functional-inequality utilities). Exit codes: 0 success, 1
expectation or check failure, 2 usage error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import math
import sys

from .config import ConfigError, parse_config
from .grids import Grid1D
from .inequalities import (
    InequalityError,
    constant_chain,
    counterexample_ratio,
    phi_negative_power_integral,
    randomized_weighted_poincare_test,
)
from .integrators import IntegratorError
from .runner import (
    EXPERIMENT_IDS,
    RunnerError,
    list_experiments,
    reproduce,
    run,
    write_outputs,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3


def _print_report(report) -> bool:
    v = report.verdict
    if v["status"] == "blowup":
        line = f"{report.id}: blowup t*={v['t_star']:.6g} ({v['trigger']})"
    elif v["status"] == "failed":
        line = f"{report.id}: FAILED ({v.get('reason', 'unknown')})"
    else:
        line = f"{report.id}: completed"
    print(line)
    for cr in report.check_results:
        if not cr["applicable"]:
            status = "not-applicable"
        else:
            status = "holds" if cr["holds"] else "VIOLATED"
        print(f"  {cr['name']}: {status} (worst margin {cr['worst_margin']:.3e})")
    ok = report.passed
    if not report.expect_met:
        print(f"  expectation {report.expect!r} NOT met (got {v['status']})")
    return ok


def _run_one_path(path: str):
    with open(path) as fh:
        cfg = parse_config(fh.read())
    return cfg, run(cfg)


def _cmd_run(args) -> int:
    reports = []
    try:
        if args.jobs > 1 and len(args.config) > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
                for cfg, rep in pool.map(_run_one_path, args.config):
                    reports.append((cfg, rep))
        else:
            for path in args.config:
                reports.append(_run_one_path(path))
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegratorError, RunnerError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    code = EXIT_OK
    for cfg, report in reports:
        out_dir = args.out or cfg.out_dir
        write_outputs(report, out_dir)
        ok = _print_report(report)
        if report.verdict["status"] == "failed":
            code = max(code, EXIT_SOLVER)
        elif not ok:
            code = max(code, EXIT_FAIL)
    return code


def _cmd_reproduce(args) -> int:
    ids = EXPERIMENT_IDS if args.id == "all" else [args.id]
    for exp_id in ids:
        if exp_id not in EXPERIMENT_IDS:
            print(f"unknown experiment id {exp_id!r}; see `blowup-lab list`",
                  file=sys.stderr)
            return EXIT_USAGE
    code = EXIT_OK
    for exp_id in ids:
        try:
            reports = reproduce(exp_id)
        except (IntegratorError, RunnerError) as exc:
            print(f"solver error in {exp_id}: {exc}", file=sys.stderr)
            return EXIT_SOLVER
        for report in reports:
            write_outputs(report, args.out)
            if not _print_report(report):
                code = max(code, EXIT_FAIL)
    return code


def _cmd_list(_args) -> int:
    width = max(len(i) for i in EXPERIMENT_IDS)
    for exp_id, desc in list_experiments():
        print(f"{exp_id:<{width}}  {desc}")
    return EXIT_OK


def _cmd_ineq(args) -> int:
    try:
        if args.what == "alpha":
            value, converged = phi_negative_power_integral(args.alpha, args.levels)
            tag = "converged" if converged else "divergent"
            print(f"integral(sin^-{args.alpha:g}) = {value:.6g} [{tag}]")
            return EXIT_OK
        if args.what == "ratio":
            ok = True
            for eps in args.eps:
                ratio, bound = counterexample_ratio(eps)
                above = ratio >= bound
                ok = ok and above
                flag = "above bound" if above else "BELOW BOUND"
                print(f"eps={eps:g}: ratio={ratio:.6g} bound={bound:.6g} [{flag}]")
            return EXIT_OK if ok else EXIT_FAIL
        if args.what == "chain":
            chain = constant_chain(args.p, Grid1D(0.0, math.pi, 2048))
            print(f"p          = {chain.p:g}")
            print(f"lambda1    = {chain.lambda1:.10g}")
            print(f"C_prime    = {chain.C_prime:.10g}")
            print(f"C_poincare = {chain.C_poincare:.10g}")
            print(f"C_weighted = {chain.C_weighted:.10g}")
            print(f"K          = {chain.K:.10g}  (conservative threshold)")
            return EXIT_OK
        if args.what == "fuzz":
            chain = constant_chain(args.p, Grid1D(0.0, math.pi, 2048))
            result = randomized_weighted_poincare_test(
                args.p, chain, trials=args.trials, seed=args.seed
            )
            print(result.describe())
            return EXIT_OK if result.holds else EXIT_FAIL
    except InequalityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE  # pragma: no cover


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowup-lab",
        description="boundary-condition-dependent blow-up experiments for 1D model PDEs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one or more TOML experiment configs")
    p_run.add_argument("config", nargs="+", help="path(s) to TOML config file(s)")
    p_run.add_argument("--out", default=None, help="output directory override")
    p_run.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_run.set_defaults(fn=_cmd_run)

    p_rep = sub.add_parser("reproduce", help="run a built-in registered experiment")
    p_rep.add_argument("id", help="experiment id E1..E11, or 'all'")
    p_rep.add_argument("--out", default="out", help="output directory")
    p_rep.set_defaults(fn=_cmd_reproduce)

    p_list = sub.add_parser("list", help="list registered experiments")
    p_list.set_defaults(fn=_cmd_list)

    p_ineq = sub.add_parser("ineq", help="functional-inequality utilities")
    ineq_sub = p_ineq.add_subparsers(dest="what", required=True)
    q_alpha = ineq_sub.add_parser("alpha", help="singular eigenfunction integral")
    q_alpha.add_argument("--alpha", type=float, default=0.5)
    q_alpha.add_argument("--levels", type=int, default=6)
    q_ratio = ineq_sub.add_parser("ratio", help="log-plateau counterexample ratio")
    q_ratio.add_argument("--eps", type=float, nargs="+", default=[1e-2, 1e-3, 1e-4])
    q_chain = ineq_sub.add_parser("chain", help="blow-up threshold constant chain")
    q_chain.add_argument("--p", type=float, default=4.0)
    q_fuzz = ineq_sub.add_parser("fuzz", help="randomized weighted inequality test")
    q_fuzz.add_argument("--p", type=float, default=4.0)
    q_fuzz.add_argument("--trials", type=int, default=1000)
    q_fuzz.add_argument("--seed", type=int, default=42)
    p_ineq.set_defaults(fn=_cmd_ineq)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else EXIT_OK
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
