"""Command-line entry point.

Subcommands map one-to-one onto the library surface: generate / solve /
fix / propagate for single formulas, probs / gw / budget for the closed-
form references, sweep / window / trajectory / distcheck for the seeded
experiments.

Exit codes follow sysexits where they apply: 0 success, 10 SAT and 20
UNSAT (solve only), 64 usage, 74 file I/O, 70 any library error.  All
file outputs are atomic; experiment progress goes to stderr so stdout
stays machine-readable.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CritsatError
from .formula import fixed_set, parse_dimacs, write_dimacs
from .harness import (
    SweepConfig,
    TrajectoryConfig,
    _atomic_write,
    emit_plot,
    export_table,
    run_distribution_check,
    run_figure2_sweep,
    run_trajectory_study,
    run_window_study,
    table_payload,
)
from .oracles import (
    BudgetRegime,
    clause_category_probs,
    enumerate_category_counts,
    gw_survival,
    gw_survival_exact,
    rounds_budget,
)
from .propagation import TraceVerdict, partition_clauses, propagate, substitute_fixed
from .sampling import RngStream, SampleSpec, sample_formula
from .solve import solve_2sat

EXIT_OK = 0
EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_USAGE = 64
EXIT_IO = 74
EXIT_INTERNAL = 70


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the contract says 64.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# Accepted --config file keys, one tuple per experiment subcommand.  The same
# tuple drives the --config help text and unknown-key rejection, so the help
# can never drift from what the loader actually honors.
_SWEEP_KEYS = ("n_list", "q_list", "alpha", "trials", "master_seed", "mode",
               "fix_mode", "include_baseline", "experiment_id", "workers", "audit")
_WINDOW_KEYS = ("n_list", "alpha_list", "trials", "master_seed", "workers")
_TRAJECTORY_KEYS = ("n", "q", "alpha", "trials", "master_seed", "mode",
                    "fix_mode", "workers", "round_cap")
_DISTCHECK_KEYS = ("n", "f", "m", "samples", "master_seed", "workers")


def _build_parser() -> _Parser:
    parser = _Parser(prog="critsat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", metavar="subcommand")
    sub.required = True

    p = sub.add_parser("generate", parents=[], help="sample a random formula as DIMACS",
                       description="Sample a uniform random k-SAT formula and print it as DIMACS.")
    p.add_argument("--n", type=int, required=True, help="number of variables")
    p.add_argument("--m", type=int, required=True, help="number of clauses")
    p.add_argument("--k", type=int, default=2, help="clause width (default 2)")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("solve", help="decide a 2-SAT formula; exit 10 SAT / 20 UNSAT",
                       description="Solve a DIMACS 2-SAT file. Prints a witness line when "
                                   "satisfiable; exits 10 for SAT, 20 for UNSAT.")
    p.add_argument("file", help="DIMACS file, or - for stdin")
    p.add_argument("--no-witness", action="store_true", help="suppress the witness line")

    p = sub.add_parser("fix", help="substitute a fixing into a formula",
                       description="Apply fixed literals to a formula. Prints the substituted "
                                   "formula as DIMACS, or the clause partition with --partition.")
    p.add_argument("file", help="DIMACS file, or - for stdin")
    p.add_argument("--fix", required=True, metavar="LITS",
                   help="fixed literals, comma or space separated; write --fix=-3,-5 "
                        "when the first literal is negative")
    p.add_argument("--partition", action="store_true",
                   help="print the clause partition as JSON instead of the substituted formula")
    p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("propagate", help="run round-based propagation, trace as JSON lines",
                       description="Run round-based unit propagation from a fixing. Emits one "
                                   "JSON line per round and a final verdict line.")
    p.add_argument("file", help="DIMACS file, or - for stdin")
    p.add_argument("--fix", required=True, metavar="LITS", help="initial fixed literals")
    p.add_argument("--round-cap", type=int, default=None, help="maximum number of rounds")
    p.add_argument("--solve-residual", action="store_true",
                   help="solve the residual formula and report overall satisfiability")
    p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("probs", help="clause-category probabilities as JSON",
                       description="Exact clause-category probabilities under a size-f fixing.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", dest="enumerate_counts",
                   help="include exhaustive clause counts (small n only)")

    p = sub.add_parser("gw", help="critical branching-process survival as JSON",
                       description="Simulate the critical Poisson branching process.")
    p.add_argument("--x0", type=int, default=1, help="initial population")
    p.add_argument("--gen", type=int, required=True, help="generation to test survival at")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("budget", help="theoretical round budget as JSON",
                       description="Round budget for the two analysis regimes.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--regime", choices=["over", "under"], required=True)

    p = sub.add_parser("sweep", help="P(SAT) over an (n, q) grid",
                       description="Monte Carlo sweep of P(SAT after fixing n^q variables). "
                                   "Flags override --config file keys.")
    _experiment_flags(p, _SWEEP_KEYS)
    p.add_argument("--n", metavar="LIST", help="comma-separated n values")
    p.add_argument("--q", metavar="LIST", help="comma-separated q values")
    p.add_argument("--alpha", type=float, default=None, help="clause density (default 1.0)")
    p.add_argument("--mode", choices=["plain", "proof-faithful"], default=None)
    p.add_argument("--fix-mode", choices=["uniform", "canonical"], default=None)
    p.add_argument("--no-baseline", action="store_true", help="skip the unfixed baseline cells")
    p.add_argument("--no-audit", action="store_true", help="skip the object-layer audit subsample")
    p.add_argument("--plot", metavar="FILE.svg", help="also render the table as an SVG plot")
    p.add_argument("--experiment-id", default=None)

    p = sub.add_parser("window", help="P(SAT) of the raw formula over a density grid",
                       description="Critical-window study: P(SAT) with no fixing across alpha.")
    _experiment_flags(p, _WINDOW_KEYS)
    p.add_argument("--n", metavar="LIST", help="comma-separated n values")
    p.add_argument("--alpha", metavar="LIST", help="comma-separated densities")

    p = sub.add_parser("trajectory", help="per-round unit-count statistics",
                       description="Round-by-round telemetry of the propagation process at one "
                                   "(n, q) cell, as JSON.")
    _experiment_flags(p, _TRAJECTORY_KEYS)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--mode", choices=["plain", "proof-faithful"], default=None)
    p.add_argument("--fix-mode", choices=["uniform", "canonical"], default=None)
    p.add_argument("--round-cap", type=int, default=None)

    p = sub.add_parser("distcheck", help="clause-category counts vs their multinomial law",
                       description="Sample clause categories under a size-f fixing and test "
                                   "against Multinomial(m, p(n, f)); JSON report.")
    _experiment_flags(p, _DISTCHECK_KEYS)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--f", type=int, default=None)
    p.add_argument("--m", type=int, default=None)

    return parser


def _experiment_flags(p: argparse.ArgumentParser, config_keys: tuple[str, ...]) -> None:
    p.add_argument("--config", metavar="FILE.json",
                   help=f"JSON config with keys {', '.join(config_keys)}; flags override")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="master seed")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--format", choices=["csv", "json"], default=None, help="table format for --out")
    p.add_argument("--out", help="write results to this file (atomic)")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help exits 0, usage errors 64
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except OSError as exc:
        print(f"critsat: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CritsatError as exc:
        print(f"critsat: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"critsat: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def _dispatch(args: argparse.Namespace) -> int:
    handler = {
        "generate": _cmd_generate,
        "solve": _cmd_solve,
        "fix": _cmd_fix,
        "propagate": _cmd_propagate,
        "probs": _cmd_probs,
        "gw": _cmd_gw,
        "budget": _cmd_budget,
        "sweep": _cmd_sweep,
        "window": _cmd_window,
        "trajectory": _cmd_trajectory,
        "distcheck": _cmd_distcheck,
    }[args.subcommand]
    return handler(args)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        _atomic_write(out, text)


def _read_formula(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_dimacs(text)


def _parse_fix(raw: str, n: int):
    tokens = raw.replace(",", " ").split()
    if not tokens:
        raise CritsatError("--fix needs at least one literal")
    literals = [int(t) for t in tokens]
    for lit in literals:
        if abs(lit) > n:
            raise CritsatError(f"fixed literal {lit} exceeds declared n={n}")
    return fixed_set(literals)


def _cmd_generate(args) -> int:
    spec = SampleSpec(n=args.n, m=args.m, k=args.k)
    formula = sample_formula(spec, RngStream(args.seed))
    _emit(write_dimacs(formula), getattr(args, "out", None))
    return EXIT_OK


def _cmd_solve(args) -> int:
    verdict = solve_2sat(_read_formula(args.file), want_witness=not args.no_witness)
    if verdict.satisfiable:
        if verdict.witness is not None:
            lits = (i + 1 if v else -(i + 1) for i, v in enumerate(verdict.witness.values))
            print(" ".join(str(x) for x in lits))
        return EXIT_SAT
    print("UNSAT")
    return EXIT_UNSAT


def _cmd_fix(args) -> int:
    formula = _read_formula(args.file)
    fixing = _parse_fix(args.fix, formula.n_vars)
    if args.partition:
        part = partition_clauses(formula, fixing)
        m0, m1, m2, mstar = part.m_counts
        payload = json.dumps({
            "m0": m0, "m1": m1, "m2": m2, "mstar": mstar,
            "unit_literals": list(part.unit_literals),
            "falsified_clauses": list(part.c0),
            "unit_clauses": list(part.c1),
            "untouched_clauses": list(part.c2),
            "satisfied_clauses": list(part.cstar),
        }, indent=2) + "\n"
        _emit(payload, args.out)
        return EXIT_OK
    reduced, falsified = substitute_fixed(formula, fixing)
    header = f"c falsified {falsified}\n" if falsified else ""
    _emit(header + write_dimacs(reduced), args.out)
    return EXIT_OK


def _cmd_propagate(args) -> int:
    formula = _read_formula(args.file)
    fixing = _parse_fix(args.fix, formula.n_vars)
    trace = propagate(formula, fixing, round_cap=args.round_cap,
                      solve_residual=args.solve_residual)
    lines = [json.dumps(r.as_dict()) for r in trace.rounds]
    overall = trace.overall_satisfiable
    lines.append(json.dumps({
        "verdict": trace.verdict.value,
        "rounds": len(trace.rounds),
        "residual_clauses": trace.residual.n_clauses,
        "overall_satisfiable": overall,
    }))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_probs(args) -> int:
    probs = clause_category_probs(args.n, args.f)
    p0, p1, p2, pstar = probs.as_tuple()
    payload = {
        "n": args.n, "f": args.f,
        "p0": str(p0), "p1": str(p1), "p2": str(p2), "pstar": str(pstar),
        "p0_float": float(p0), "p1_float": float(p1),
        "p2_float": float(p2), "pstar_float": float(pstar),
    }
    if args.enumerate_counts:
        c0, c1, c2, cstar = enumerate_category_counts(args.n, args.f)
        payload["counts"] = {"c0": c0, "c1": c1, "c2": c2, "cstar": cstar,
                             "total": c0 + c1 + c2 + cstar}
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_gw(args) -> int:
    result = gw_survival(args.x0, args.gen, args.trials, args.seed)
    print(json.dumps({
        "x0": args.x0, "gen": args.gen, "trials": args.trials, "seed": args.seed,
        "survivors": result.survivors,
        "p_survive": result.estimate,
        "stderr": result.stderr,
        "gen_times_p": args.gen * result.estimate,
        "exact_p_survive": gw_survival_exact(args.gen),
    }, indent=2))
    return EXIT_OK


def _cmd_budget(args) -> int:
    regime = BudgetRegime.OVER if args.regime == "over" else BudgetRegime.UNDER
    budget = rounds_budget(args.n, args.q, regime)
    print(json.dumps({"n": budget.n, "q": budget.q,
                      "regime": budget.regime.value, "rounds": budget.rounds}, indent=2))
    return EXIT_OK


def _load_config(path: str | None, allowed: tuple[str, ...]) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        config = json.load(fh)
    if not isinstance(config, dict):
        raise CritsatError(f"config {path} must hold a JSON object")
    unknown = [key for key in config if key not in allowed]
    if unknown:
        raise CritsatError(
            f"config {path}: unknown key(s) {', '.join(sorted(unknown))}; "
            f"accepted: {', '.join(allowed)}"
        )
    return config


def _merged(config: dict, key: str, flag_value, default):
    """Flag beats config file beats built-in default."""
    if flag_value is not None:
        return flag_value
    if key in config:
        return config[key]
    return default


def _int_list(value) -> tuple[int, ...]:
    if isinstance(value, str):
        return tuple(int(t) for t in value.replace(",", " ").split())
    return tuple(int(v) for v in value)


def _float_list(value) -> tuple[float, ...]:
    if isinstance(value, str):
        return tuple(float(t) for t in value.replace(",", " ").split())
    return tuple(float(v) for v in value)


def _emit_table(table, args) -> None:
    if args.out:
        export_table(table, args.out, fmt=args.format)
    else:
        sys.stdout.write(table_payload(table, args.format or "csv"))


def _cmd_sweep(args) -> int:
    config = _load_config(args.config, _SWEEP_KEYS)
    sweep = SweepConfig(
        n_list=_int_list(_merged(config, "n_list", args.n, (1000, 10000, 100000))),
        q_list=_float_list(_merged(config, "q_list", args.q,
                                   (0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50))),
        alpha=float(_merged(config, "alpha", args.alpha, 1.0)),
        trials=int(_merged(config, "trials", args.trials, 2000)),
        master_seed=int(_merged(config, "master_seed", args.seed, 0)),
        mode=_merged(config, "mode", args.mode, "plain"),
        fix_mode=_merged(config, "fix_mode", args.fix_mode, "uniform"),
        include_baseline=not args.no_baseline and bool(config.get("include_baseline", True)),
        experiment_id=_merged(config, "experiment_id", args.experiment_id, "figure2"),
        workers=_merged(config, "workers", args.workers, None),
        audit=not args.no_audit and bool(config.get("audit", True)),
    )
    total = len(sweep.n_list) * (len(sweep.q_list) + (1 if sweep.include_baseline else 0))
    print(f"sweep: {total} cells x {sweep.trials} trials", file=sys.stderr)
    table = run_figure2_sweep(sweep)
    _emit_table(table, args)
    if args.plot:
        emit_plot(table, args.plot)
    return EXIT_OK


def _cmd_window(args) -> int:
    config = _load_config(args.config, _WINDOW_KEYS)
    table = run_window_study(
        n_list=_int_list(_merged(config, "n_list", args.n, (1000,))),
        alpha_list=_float_list(_merged(config, "alpha_list", args.alpha, (0.8, 0.9, 1.0, 1.1, 1.2))),
        trials=int(_merged(config, "trials", args.trials, 2000)),
        master_seed=int(_merged(config, "master_seed", args.seed, 0)),
        workers=_merged(config, "workers", args.workers, None),
    )
    _emit_table(table, args)
    return EXIT_OK


def _cmd_trajectory(args) -> int:
    config = _load_config(args.config, _TRAJECTORY_KEYS)
    traj = TrajectoryConfig(
        n=int(_merged(config, "n", args.n, 100000)),
        q=float(_merged(config, "q", args.q, 0.20)),
        alpha=float(_merged(config, "alpha", args.alpha, 1.0)),
        trials=int(_merged(config, "trials", args.trials, 2000)),
        master_seed=int(_merged(config, "master_seed", args.seed, 0)),
        mode=_merged(config, "mode", args.mode, "plain"),
        fix_mode=_merged(config, "fix_mode", args.fix_mode, "uniform"),
        workers=_merged(config, "workers", args.workers, None),
        round_cap=_merged(config, "round_cap", args.round_cap, None),
    )
    print(f"trajectory: n={traj.n} q={traj.q} trials={traj.trials}", file=sys.stderr)
    stats = run_trajectory_study(traj)
    _emit(json.dumps(stats.as_dict(), indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_distcheck(args) -> int:
    config = _load_config(args.config, _DISTCHECK_KEYS)
    report = run_distribution_check(
        n=int(_merged(config, "n", args.n, 100)),
        f=int(_merged(config, "f", args.f, 10)),
        m=int(_merged(config, "m", args.m, 100)),
        samples=int(_merged(config, "samples", args.trials, 100000)),
        master_seed=int(_merged(config, "master_seed", args.seed, 0)),
        workers=_merged(config, "workers", args.workers, None),
    )
    _emit(json.dumps(report.as_dict(), indent=2) + "\n", args.out)
    return EXIT_OK


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
