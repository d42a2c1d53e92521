"""Command-line entry point tying the solvers together.

Subcommands:

``frontier``
    Cost/QoS frontier sweep for a single station, emitted as CSV.
``solve``
    Staff a scenario file under one of the solver modes and write a
    run record.
``compare``
    Joint, reduced-enumeration, and decoupled solutions side by side.
``simulate``
    Re-check a solved staffing level against the event simulator.
``validate``
    Parse a scenario file and report its shape.

Exit codes: 0 success, 2 invalid input, 3 numerical solver failure,
4 provably infeasible instance. Human tables round to six significant
digits; JSON and CSV keep full precision.
"""

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from time import perf_counter

from ._version import __version__
from .errors import (
    DomainError,
    EnumerationCapError,
    InfeasibleError,
    KeyScenarioTieError,
    StaffingError,
    ValidationError,
)
from .files import (
    SOLVER_MODES,
    load_scenario_file,
    make_run_record,
    resolve_scenario_path,
    write_run_record,
)
from .frontier import (
    BOUND_CHOICES,
    CostFunction,
    frontier_csv_rows,
    integer_staffing,
    solve_constrained,
    solve_weighted,
    sweep_frontier,
)
from .joint import (
    compare_solutions,
    enumerate_key_scenarios,
    joint_constraint_value,
    solve_decoupled,
    solve_joint,
    solve_weighted_stoch,
)
from .multistation import MultiStationInstance, solve_multi
from .scenarios import ScenarioSet
from .simulate import SimConfig, simulate_scenario_qos
from .stochastic import solve_reduced

__all__ = ["main"]


# ---------------------------------------------------------------------------
# formatting

def _fmt(value):
    """Render one cell for a human table, floats at 6 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


def _csv_cell(value):
    # repr keeps floats round-trippable; vectors flatten with semicolons
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return ";".join(_csv_cell(v) for v in value)
    return str(value)


def _csv_text(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(cell) for cell in row])
    return buffer.getvalue()


def _print_table(header, rows):
    table = [list(header)] + [[_fmt(cell) for cell in row] for row in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        line = "  ".join(cell.ljust(w) for cell, w in zip(row, widths))
        print(line.rstrip())


def _print_pairs(pairs):
    width = max(len(str(key)) for key, _ in pairs)
    for key, value in pairs:
        print(f"{str(key).ljust(width)}  {_fmt(value)}")


def _write_json(path, payload):
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


# ---------------------------------------------------------------------------
# argument resolution

def _load(args):
    path = resolve_scenario_path(args.file)
    return path, load_scenario_file(path)


def _resolve_mode(args, scenario_file):
    mode = getattr(args, "mode", None) or scenario_file.problem.solver
    if mode is None:
        raise ValidationError(
            "no solver mode; pass --mode or set problem.solver",
            pointer="problem.solver",
        )
    return mode


def _cli_epsilon(value):
    if not isinstance(value, float) or not math.isfinite(value) \
            or not 0.0 < value < 1.0:
        raise ValidationError(
            f"epsilon must lie strictly inside (0, 1), got {value!r}",
            pointer="--epsilon",
        )
    return value


def _cli_delta(value):
    if not isinstance(value, float) or not math.isfinite(value) or value <= 0:
        raise ValidationError(
            f"delta must be a positive real, got {value!r}",
            pointer="--delta",
        )
    return value


def _resolve_budget(args, scenario_file):
    """Flags override the file; exactly one budget survives."""
    if args.epsilon is not None and args.delta is not None:
        raise ValidationError(
            "--epsilon and --delta are mutually exclusive", pointer="--delta")
    eps = scenario_file.problem.epsilon
    delta = scenario_file.problem.delta
    if args.epsilon is not None:
        eps, delta = _cli_epsilon(args.epsilon), None
    elif args.delta is not None:
        eps, delta = None, _cli_delta(args.delta)
    return eps, delta


def _resolve_bound(args, scenario_file):
    return args.bound or scenario_file.problem.bound


def _require_exact(mode, bound):
    if bound != "exact":
        raise ValidationError(
            f"{mode} solves on the exact curve only; drop --bound {bound}",
            pointer="--bound",
        )


# ---------------------------------------------------------------------------
# solver dispatch

def _server_cost(costs, staffing):
    return math.fsum(c * n for c, n in zip(costs, staffing))


def _weighted_objective(scenarios, staffing, costs, delta):
    wait = 1.0 - joint_constraint_value(scenarios, staffing)
    return _server_cost(costs, staffing) + delta * wait


def _round_levels(rates, betas):
    return tuple(
        max(integer_staffing(lam + beta * math.sqrt(lam)), 1)
        for lam, beta in zip(rates, betas)
    )


def _single_station_set(joint):
    # collapse duplicate rates; the marginal type wants them ascending
    mass = {}
    for rates, p in joint.pairs():
        mass[rates[0]] = mass.get(rates[0], 0.0) + p
    rates = tuple(sorted(mass))
    return ScenarioSet(rates, tuple(mass[r] for r in rates))


def _solve_mode(scenario_file, mode, eps, delta, bound):
    """Route one budgeted instance to its solver.

    Returns (staffing vector, objective, detail) where the objective is
    the integer server cost for epsilon modes and the exact weighted
    objective at the integer staffing for delta modes.
    """
    joint = scenario_file.joint_set()
    costs = scenario_file.problem.costs
    stations = scenario_file.station_count

    if mode == "det":
        if len(scenario_file.scenarios) != 1:
            raise ValidationError(
                "det mode needs exactly one scenario", pointer="scenarios")
        rates = joint.pairs()[0][0]
        if eps is not None:
            if stations == 1:
                lam = rates[0]
                price = CostFunction("linear-servers", costs[0])
                report = solve_constrained(lam, eps, price, bound=bound)
                staffing = _round_levels(rates, (report.beta,))
                detail = {
                    "beta": report.beta,
                    "n_continuous": lam + report.beta * math.sqrt(lam),
                }
            else:
                _require_exact("multistation det with epsilon", bound)
                report = solve_joint(joint, eps, costs,
                                     key_indices=(0,) * stations)
                staffing = report.decision.n_integer
                detail = {
                    "betas": report.decision.betas,
                    "n_continuous": report.decision.n_continuous,
                    "feasible": report.feasible,
                }
            return staffing, _server_cost(costs, staffing), detail
        if stations == 1:
            lam = rates[0]
            price = CostFunction("linear-servers", costs[0])
            report = solve_weighted(lam, delta, price, bound=bound)
            staffing = _round_levels(rates, (report.beta,))
            detail = {
                "beta": report.beta,
                "continuous_objective": report.objective,
            }
        else:
            instance = MultiStationInstance(
                rates,
                tuple(CostFunction("linear-servers", c) for c in costs),
                delta,
            )
            report = solve_multi(instance, bound=bound)
            staffing = _round_levels(rates, report.betas)
            detail = {
                "betas": report.betas,
                "continuous_objective": report.objective,
            }
        return staffing, _weighted_objective(joint, staffing, costs, delta), detail

    if mode == "stoch-single":
        if stations != 1:
            raise ValidationError(
                "stoch-single mode needs exactly one station",
                pointer="stations",
            )
        if eps is not None:
            marginal = _single_station_set(joint)
            report = solve_reduced(marginal, eps, cost=costs[0], bound=bound)
            staffing = (max(report.decision.n_integer, 1),)
            detail = {
                "beta": report.decision.beta,
                "key_rate": report.decision.key_rate,
                "expected_wait": report.expected_wait,
                "feasible": report.feasible,
            }
            return staffing, _server_cost(costs, staffing), detail
        report = solve_weighted_stoch(joint, delta, costs, bound=bound)
        staffing = report.decision.n_integer
        detail = {
            "beta": report.decision.betas[0],
            "key_rate": report.decision.key_rates[0],
            "continuous_objective": report.objective,
        }
        return staffing, _weighted_objective(joint, staffing, costs, delta), detail

    if mode == "stoch-multi-joint":
        if eps is not None:
            _require_exact(mode, bound)
            report = solve_joint(joint, eps, costs)
            staffing = report.decision.n_integer
            detail = {
                "betas": report.decision.betas,
                "key_rates": report.decision.key_rates,
                "feasible": report.feasible,
            }
            return staffing, _server_cost(costs, staffing), detail
        report = solve_weighted_stoch(joint, delta, costs, bound=bound)
        staffing = report.decision.n_integer
        detail = {
            "betas": report.decision.betas,
            "key_rates": report.decision.key_rates,
            "continuous_objective": report.objective,
        }
        return staffing, _weighted_objective(joint, staffing, costs, delta), detail

    if eps is None:
        raise ValidationError(
            f"{mode} mode needs an epsilon budget", pointer="problem.delta")
    _require_exact(mode, bound)
    if mode == "stoch-multi-decoupled":
        report = solve_decoupled(joint, eps, costs)
        detail = {
            "betas": report.decision.betas,
            "feasible": report.feasible,
        }
    else:  # stoch-multi-reduced, the only mode left
        report = enumerate_key_scenarios(joint, eps, costs)
        detail = {
            "betas": report.decision.betas,
            "key_rates": report.decision.key_rates,
            "key_indices": report.decision.key_indices,
            "feasible": report.feasible,
        }
    staffing = report.decision.n_integer
    return staffing, _server_cost(costs, staffing), detail


# ---------------------------------------------------------------------------
# subcommands

def cmd_frontier(args):
    lam = args.lam
    if not math.isfinite(lam) or lam <= 0:
        raise ValidationError(
            f"lam must be a positive real, got {lam!r}", pointer="--lam")
    start, stop, step = args.grid
    if not all(math.isfinite(v) for v in args.grid) or step <= 0:
        raise ValidationError(
            "grid must be START STOP STEP with a positive step",
            pointer="--grid",
        )
    grid = []
    value = start
    while value <= stop + 1e-12:
        grid.append(round(value, 12))
        value += step
    if not grid:
        raise ValidationError("the epsilon grid is empty", pointer="--grid")

    sweep = sweep_frontier(lam, grid, bound=args.bound)
    for eps, message in sweep.failures:
        print(f"warning: epsilon {eps:g}: {message}", file=sys.stderr)
    if not sweep.points:
        raise StaffingError("every grid point failed to solve")

    rows = frontier_csv_rows(lam, sweep, bound=args.bound)
    header = list(rows[0])
    cells = [[row[key] for key in header] for row in rows]
    if args.out:
        Path(args.out).write_text(_csv_text(header, cells))
    if args.format == "json":
        print(json.dumps(
            {"lam": lam, "bound": args.bound, "points": rows}, indent=2))
    elif args.format == "table":
        _print_table(header, cells)
    else:
        sys.stdout.write(_csv_text(header, cells))
    return 0


def cmd_solve(args):
    _, scenario_file = _load(args)
    mode = _resolve_mode(args, scenario_file)
    eps, delta = _resolve_budget(args, scenario_file)
    bound = _resolve_bound(args, scenario_file)

    start = perf_counter()
    staffing, objective, detail = _solve_mode(
        scenario_file, mode, eps, delta, bound)
    wall = perf_counter() - start

    record = make_run_record(scenario_file, mode, staffing, objective, wall)
    if args.out:
        write_run_record(record, args.out)
    data = record.to_data()
    if args.format == "json":
        print(json.dumps(data, indent=2))
    elif args.format == "csv":
        header = list(data)
        sys.stdout.write(_csv_text(header, [[data[k] for k in header]]))
    else:
        pairs = [
            ("mode", mode),
            ("solution", staffing),
            ("objective", objective),
            ("achieved_qos", record.achieved_qos),
            ("epsilon", eps) if eps is not None else ("delta", delta),
            ("bound", bound),
        ]
        pairs.extend(detail.items())
        pairs.append(("wall_time_s", wall))
        _print_pairs(pairs)
    return 0


def cmd_compare(args):
    _, scenario_file = _load(args)
    eps = scenario_file.problem.epsilon
    if args.epsilon is not None:
        eps = _cli_epsilon(args.epsilon)
    if eps is None:
        raise ValidationError(
            "compare needs an epsilon budget", pointer="problem.epsilon")

    report = compare_solutions(
        scenario_file.joint_set(), eps, scenario_file.problem.costs)
    columns = (report.joint, report.reduced, report.decoupled)
    stations = scenario_file.station_count
    header = ["solver"] + [f"n_{i + 1}" for i in range(stations)]
    header += ["cost", "achieved_qos"]
    rows = [
        [s.label, *s.n, s.cost, s.achieved_qos]
        for s in columns
    ]
    payload = {
        s.label: {
            "n": list(s.n),
            "cost": s.cost,
            "achieved_qos": s.achieved_qos,
            "betas": list(s.betas),
        }
        for s in columns
    }
    payload["epsilon"] = eps
    payload["cost_ratio"] = report.cost_ratio

    if args.out:
        _write_json(args.out, payload)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        ratio_row = ["cost_ratio"] + [""] * stations + [report.cost_ratio, ""]
        sys.stdout.write(_csv_text(header, rows + [ratio_row]))
    else:
        _print_table(header, rows)
        print(f"cost ratio (decoupled/joint): {report.cost_ratio:.6g}")
    return 0


def cmd_simulate(args):
    _, scenario_file = _load(args)
    mode = _resolve_mode(args, scenario_file)
    eps, delta = _resolve_budget(args, scenario_file)
    bound = _resolve_bound(args, scenario_file)
    staffing, _, _ = _solve_mode(scenario_file, mode, eps, delta, bound)

    joint = scenario_file.joint_set()
    # n and lam below are placeholders; the scenario sweep supplies its own
    config = SimConfig(
        n=2,
        lam=1.0,
        warmup_customers=args.warmup,
        measured_customers=args.measured,
        replications=args.replications,
        seed=args.seed,
    )
    estimate = simulate_scenario_qos(joint, staffing, config)
    formula = 1.0 - joint_constraint_value(joint, staffing)
    payload = {
        "solver": mode,
        "solution": list(staffing),
        "seed": args.seed,
        "replications": estimate.replications_used,
        "measured_customers": args.measured,
        "wait_prob_mean": estimate.wait_prob_mean,
        "ci99_halfwidth": estimate.ci99_halfwidth,
        "wait_prob_formula": formula,
        "within_ci": abs(estimate.wait_prob_mean - formula)
        <= estimate.ci99_halfwidth,
    }
    if args.out:
        _write_json(args.out, payload)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        header = list(payload)
        sys.stdout.write(_csv_text(header, [[payload[k] for k in header]]))
    else:
        _print_pairs(list(payload.items()))
    return 0


def cmd_validate(args):
    path, scenario_file = _load(args)
    problem = scenario_file.problem
    budget = ("epsilon", problem.epsilon) if problem.epsilon is not None \
        else ("delta", problem.delta)
    payload = {
        "ok": True,
        "file": str(path),
        "version": scenario_file.version,
        "stations": scenario_file.station_count,
        "scenarios": len(scenario_file.scenarios),
        budget[0]: budget[1],
        "costs": list(problem.costs),
        "solver": problem.solver,
        "bound": problem.bound,
        "digest": scenario_file.digest(),
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        _print_pairs([(k, v if v is not None else "-")
                      for k, v in payload.items()])
    return 0


# ---------------------------------------------------------------------------
# parser and entry point

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qstaff",
        description="Staffing tools for many-server queues under "
                    "arrival-rate uncertainty.",
    )
    parser.add_argument(
        "--version", action="version", version=f"qstaff {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, default_format="table"):
        p.add_argument("--out", help="also write the machine-readable result here")
        p.add_argument("--format", choices=("table", "json", "csv"),
                       default=default_format)

    def add_scenario_args(p):
        p.add_argument("file", help="scenario file path or bundled name (example1)")
        p.add_argument("--mode", choices=SOLVER_MODES,
                       help="solver mode; defaults to problem.solver")
        p.add_argument("--epsilon", type=float,
                       help="override the QoS budget")
        p.add_argument("--delta", type=float,
                       help="override the waiting-cost weight")
        p.add_argument("--bound", choices=BOUND_CHOICES,
                       help="wait-probability curve; defaults to problem.bound")

    p = sub.add_parser(
        "frontier", help="sweep the single-station cost/QoS frontier")
    p.add_argument("--lam", type=float, required=True, help="offered load")
    p.add_argument("--grid", type=float, nargs=3,
                   default=(0.05, 0.95, 0.05),
                   metavar=("START", "STOP", "STEP"),
                   help="epsilon grid (default 0.05 0.95 0.05)")
    p.add_argument("--bound", choices=BOUND_CHOICES, default="exact")
    add_output(p, default_format="csv")
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("solve", help="staff a scenario file")
    add_scenario_args(p)
    add_output(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "compare", help="joint vs reduced vs decoupled on one file")
    p.add_argument("file", help="scenario file path or bundled name")
    p.add_argument("--epsilon", type=float, help="override the QoS budget")
    add_output(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser(
        "simulate", help="simulate the union wait at the solved staffing")
    add_scenario_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replications", type=int, default=8)
    p.add_argument("--measured", type=int, default=10_000,
                   help="post-warmup arrivals measured per replication")
    p.add_argument("--warmup", type=int, default=None,
                   help="warmup arrivals (default: ten times the staffing)")
    add_output(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate", help="check a scenario file")
    p.add_argument("file", help="scenario file path or bundled name")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_validate)

    return parser


def _emit_error(args, exc, code):
    print(f"error: {exc}", file=sys.stderr)
    if getattr(args, "format", None) == "json":
        payload = {"error": {
            "type": type(exc).__name__,
            "message": str(exc),
            "pointer": getattr(exc, "pointer", None),
        }}
        print(json.dumps(payload, indent=2))
    return code


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, DomainError,
            KeyScenarioTieError, EnumerationCapError) as exc:
        return _emit_error(args, exc, 2)
    except InfeasibleError as exc:
        return _emit_error(args, exc, 4)
    except StaffingError as exc:
        return _emit_error(args, exc, 3)


if __name__ == "__main__":
    sys.exit(main())
