"""Single-station deterministic staffing: constrained, bound-approximated,
and weighted solves, plus efficient-frontier sweeps.

The decision variable throughout is the square-root safety factor beta,
with staffing n = lambda + beta*sqrt(lambda). Three model flavors:

* constrained: find the smallest beta with wait probability <= epsilon,
  against the exact curve or one of its sandwich bounds;
* weighted: minimize cost(beta) + delta * wait(beta) for a QoS weight
  delta, trading staffing cost against service level;
* frontier: sweep epsilon over a grid to trace the cost/QoS Pareto set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .erlang import erlang_c_sqrt, halfin_whitt, jvlz_bounds, wait_probability
from .errors import DomainError
from .search import bisect_decreasing, grid_then_golden

__all__ = [
    "CostFunction",
    "FrontierPoint",
    "FrontierSweep",
    "SolveReport",
    "integer_staffing",
    "solve_constrained",
    "solve_weighted",
    "sweep_frontier",
    "frontier_csv_rows",
]

BOUND_CHOICES = ("exact", "upper", "lower", "hw")


def integer_staffing(n_continuous):
    """Integer server count for a continuous staffing level.

    Nearest-integer rounding. With half-integer safety staffing the
    continuous optimum sits within half a server of the intended integer
    decision, and rounding to nearest reproduces the reference integer
    solutions; always rounding up would systematically overshoot.
    """
    return int(round(n_continuous))


@dataclass(frozen=True)
class CostFunction:
    """Strictly increasing staffing cost as a function of beta.

    kind 'linear-beta' charges coefficient * beta; 'linear-servers'
    charges coefficient per server, i.e. coefficient * (lambda +
    beta*sqrt(lambda)); 'table' interpolates a user-supplied piecewise
    linear schedule of (beta, cost) points, extended linearly beyond the
    last point.
    """

    kind: str = "linear-beta"
    coefficient: float = 1.0
    table: tuple = ()

    def __post_init__(self):
        if self.kind not in ("linear-beta", "linear-servers", "table"):
            raise DomainError(f"unknown cost kind {self.kind!r}")
        if self.kind == "table":
            pts = tuple((float(b), float(c)) for b, c in self.table)
            if len(pts) < 2:
                raise DomainError("cost table needs at least two points")
            if any(b2 <= b1 or c2 <= c1 for (b1, c1), (b2, c2) in zip(pts, pts[1:])):
                raise DomainError("cost table must be strictly increasing in beta and cost")
            object.__setattr__(self, "table", pts)
        elif not (isinstance(self.coefficient, (int, float)) and self.coefficient > 0):
            raise DomainError("cost coefficient must be positive")

    def beta_cost(self, beta, lam):
        """Cost of operating at safety factor beta against load lam."""
        if self.kind == "linear-beta":
            return self.coefficient * beta
        if self.kind == "linear-servers":
            return self.coefficient * (lam + beta * math.sqrt(lam))
        pts = self.table
        if beta <= pts[0][0]:
            b0, c0 = pts[0]
            b1, c1 = pts[1]
        elif beta >= pts[-1][0]:
            b0, c0 = pts[-2]
            b1, c1 = pts[-1]
        else:
            for (b0, c0), (b1, c1) in zip(pts, pts[1:]):
                if b0 <= beta <= b1:
                    break
        return c0 + (c1 - c0) * (beta - b0) / (b1 - b0)


@dataclass(frozen=True)
class SolveReport:
    beta: float
    objective: float
    bound_used: str
    evaluations: int
    converged: bool
    residual: float  # constraint residual; 0.0 for weighted solves


@dataclass(frozen=True)
class FrontierPoint:
    epsilon: float
    beta: float
    cost: float
    wait_prob: float  # exact curve at the solution, whatever bound solved it


@dataclass(frozen=True)
class FrontierSweep:
    """Frontier points in epsilon order plus any per-point failures."""

    points: tuple = ()
    failures: tuple = ()  # (epsilon, message) pairs

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]


def _wait_curve(lam, bound):
    if bound == "exact":
        return lambda b: erlang_c_sqrt(b, lam)
    if bound == "upper":
        return lambda b: jvlz_bounds(b, lam).upper
    if bound == "lower":
        return lambda b: jvlz_bounds(b, lam).lower
    if bound == "hw":
        return lambda b: halfin_whitt(b)
    raise DomainError(f"bound must be one of {BOUND_CHOICES}, got {bound!r}")


def _check_epsilon(epsilon):
    if not (isinstance(epsilon, (int, float)) and 0.0 < epsilon < 1.0):
        raise DomainError(
            f"epsilon must lie strictly inside (0, 1), got {epsilon!r}")
    return float(epsilon)


def solve_constrained(lam, epsilon, cost=None, bound="exact"):
    """Smallest safety factor whose wait probability is at most epsilon.

    The selected wait curve is strictly decreasing in beta with range
    (0, 1], so the constraint holds with equality at the optimum and
    bracketing bisection finds the unique root. With bound='upper' the
    returned beta is conservative: the exact wait probability at the
    solution is guaranteed below epsilon.
    """
    epsilon = _check_epsilon(epsilon)
    cost = cost or CostFunction()
    curve = _wait_curve(lam, bound)
    res = bisect_decreasing(curve, epsilon)
    return SolveReport(
        beta=res.root,
        objective=cost.beta_cost(res.root, lam),
        bound_used=bound,
        evaluations=res.evaluations,
        converged=res.converged,
        residual=res.residual,
    )


def solve_weighted(lam, delta, cost=None, bound="exact", beta_hi=8.0, beta_cap=64.0):
    """Minimize cost(beta) + delta * wait(beta) over beta >= 0.

    Golden-section search seeded by a coarse grid; the search interval
    doubles while the minimizer keeps landing on its upper edge. The
    objective at beta = 0 uses the saturated value wait = 1.
    """
    if not (isinstance(delta, (int, float)) and delta > 0.0):
        raise DomainError(f"delta must be positive, got {delta!r}")
    if bound not in ("exact", "upper"):
        raise DomainError(f"weighted solve supports bound exact or upper, got {bound!r}")
    cost = cost or CostFunction()
    evals = 0

    def objective(b):
        nonlocal evals
        evals += 1
        n = lam + b * math.sqrt(lam)
        return cost.beta_cost(b, lam) + delta * wait_probability(max(n, 1.0), lam, bound)

    hi = beta_hi
    while True:
        x, fx, e = grid_then_golden(objective, 0.0, hi, xtol=1e-10)
        if x < hi * (1.0 - 1e-6) or hi >= beta_cap:
            break
        hi = min(hi * 2.0, beta_cap)
    return SolveReport(
        beta=x,
        objective=fx,
        bound_used=bound,
        evaluations=evals,
        converged=True,
        residual=0.0,
    )


def sweep_frontier(lam, epsilons, cost=None, bound="exact"):
    """One constrained solve per epsilon; returns points plus failures.

    The grid must be strictly increasing inside (0, 1). A failure at one
    epsilon (e.g. bracket exhaustion) is recorded and the sweep moves on.
    """
    cost = cost or CostFunction()
    eps = [_check_epsilon(e) for e in epsilons]
    if not eps:
        raise DomainError("epsilon grid is empty")
    if any(b <= a for a, b in zip(eps, eps[1:])):
        raise DomainError("epsilon grid must be strictly increasing")
    points = []
    failures = []
    for e in eps:
        try:
            rep = solve_constrained(lam, e, cost, bound)
            points.append(FrontierPoint(
                epsilon=e,
                beta=rep.beta,
                cost=rep.objective,
                wait_prob=erlang_c_sqrt(rep.beta, lam) if rep.beta > 0 else 1.0,
            ))
        except Exception as exc:  # noqa: BLE001 - per-point failures are data here
            failures.append((e, f"{type(exc).__name__}: {exc}"))
    return FrontierSweep(points=tuple(points), failures=tuple(failures))


def frontier_csv_rows(lam, sweep, bound="exact"):
    """Flatten a sweep into CSV-ready dict rows."""
    curve = _wait_curve(lam, bound)
    rows = []
    for p in sweep.points:
        n_cont = lam + p.beta * math.sqrt(lam)
        rows.append({
            "epsilon": p.epsilon,
            "beta": p.beta,
            "n_continuous": n_cont,
            "n_integer": integer_staffing(n_cont),
            "cost": p.cost,
            "wait_prob_exact": p.wait_prob,
            "wait_prob_bound": curve(p.beta) if p.beta > 0 else 1.0,
        })
    return rows
