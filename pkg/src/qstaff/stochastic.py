"""Single-station staffing when the arrival rate is a finite random scenario.

The staffing decision is nonanticipative: a pair (beta, key scenario)
chosen before the rate is realized, inducing the single server count

    n = Lam_key + beta * sqrt(Lam_key)

that then faces every scenario. The chance constraint charges each
scenario its wait probability at that fixed n; scenarios whose rate
reaches n are unstable and contribute probability one.

Two solvers are provided. solve_reduced keys the constraint to the
scenario picked by the tail-sum rule and solves a single-curve equation;
it is asymptotically exact as rates grow. solve_exact_enumeration solves
the full constraint for every candidate key and keeps the cheapest, and
serves as the ground truth at desk scale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .erlang import wait_probability
from .errors import BracketError, DomainError, InfeasibleError, KeyScenarioTieError
from .frontier import integer_staffing
from .search import bisect_decreasing

__all__ = [
    "StaffingDecision",
    "StochSolveReport",
    "select_key_scenario",
    "constraint_value",
    "wait_curve",
    "solve_reduced",
    "solve_exact_enumeration",
]

TAIL_TIE_TOL = 1e-12
FEASIBILITY_TOL = 1e-9


def _check_epsilon(epsilon):
    if not isinstance(epsilon, (int, float)) or isinstance(epsilon, bool):
        raise DomainError(f"epsilon must be a real number, got {epsilon!r}")
    eps = float(epsilon)
    if not math.isfinite(eps) or not 0.0 < eps < 1.0:
        raise DomainError(f"epsilon must lie strictly inside (0, 1), got {epsilon!r}")
    return eps


def wait_curve(lam, bound="exact"):
    """Wait probability as a function of the safety factor beta.

    Returns beta -> wait at n = lam + beta*sqrt(lam), strictly decreasing
    from 1 at beta = 0. Staffing below one server is clamped to one.
    """
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise DomainError(f"lam must be a positive real, got {lam!r}")
    root = math.sqrt(lam)

    def curve(beta):
        return wait_probability(max(lam + beta * root, 1.0), lam, bound=bound)

    return curve


def constraint_value(scenarios, n, bound="exact"):
    """Expected wait probability of staffing level n across the scenarios.

    Scenarios with rate >= n contribute probability one (unstable).
    """
    n = float(n)
    if not math.isfinite(n) or n <= 0.0:
        raise DomainError(f"staffing level must be a positive real, got {n!r}")
    total = 0.0
    for rate, p in scenarios.pairs():
        if rate >= n:
            total += p
        else:
            total += p * wait_probability(max(n, 1.0), rate, bound=bound)
    return total


def select_key_scenario(scenarios, epsilon):
    """Index of the key scenario for the reduced model.

    With rates ascending, returns the unique i whose probability tail
    (scenario i and above) still reaches epsilon while the tail strictly
    above it falls short. If the largest rate alone carries mass >=
    epsilon, that scenario is the key. A tail sum equal to epsilon makes
    the reduced model ill-posed (the asymptotic analysis needs strict
    inequalities on both sides) and raises KeyScenarioTieError.
    """
    eps = _check_epsilon(epsilon)
    tails = scenarios.tail_sums()
    for i in range(1, len(scenarios) + 1):
        if abs(tails[i] - eps) <= TAIL_TIE_TOL:
            raise KeyScenarioTieError(
                f"probability tail from scenario {i} equals epsilon={eps!r} "
                "within tolerance; the key-scenario rule needs strict "
                "inequalities, perturb epsilon or the probabilities")
    for i in range(len(scenarios) - 1, -1, -1):
        if tails[i] > eps:
            return i
    raise DomainError("unreachable: total probability is one and epsilon < 1")


@dataclass(frozen=True)
class StaffingDecision:
    """Nonanticipative staffing choice (beta, key scenario)."""

    beta: float
    key_index: int
    key_rate: float
    n_continuous: float
    n_integer: int


@dataclass(frozen=True)
class StochSolveReport:
    decision: StaffingDecision
    expected_wait: float     # full constraint value at the decision, exact curve
    objective: float         # cost per server times continuous staffing level
    method: str              # reduced-exact | reduced-ub | exact-enumeration
    epsilon: float
    feasible: bool           # expected_wait <= epsilon + FEASIBILITY_TOL
    slack: float             # epsilon - expected_wait
    evaluations: int
    converged: bool


def _decide(scenarios, key, beta):
    rate = scenarios.rates[key]
    n_cont = rate + beta * math.sqrt(rate)
    return StaffingDecision(
        beta=beta,
        key_index=key,
        key_rate=rate,
        n_continuous=n_cont,
        n_integer=integer_staffing(n_cont),
    )


def _report(scenarios, decision, cost, method, eps, evaluations, converged):
    achieved = constraint_value(scenarios, decision.n_continuous, bound="exact")
    return StochSolveReport(
        decision=decision,
        expected_wait=achieved,
        objective=cost * decision.n_continuous,
        method=method,
        epsilon=eps,
        feasible=achieved <= eps + FEASIBILITY_TOL,
        slack=eps - achieved,
        evaluations=evaluations,
        converged=converged,
    )


def _check_cost(cost):
    c = float(cost)
    if not math.isfinite(c) or c <= 0.0:
        raise DomainError(f"cost per server must be positive, got {cost!r}")
    return c


def solve_reduced(scenarios, epsilon, cost=1.0, bound="exact"):
    """Reduced-model solve keyed to the tail-sum scenario.

    Scenarios above the key are written off as fully waiting and those
    below as never waiting, leaving one equation in beta:

        p_key * wait(Lam_key + beta*sqrt(Lam_key)) = epsilon - tail_above_key.

    The selection rule guarantees the right-hand side lies in (0, p_key),
    so a root exists. The report's expected_wait re-evaluates the full
    constraint with the exact curve; at finite rates the reduced solution
    may miss feasibility by a small margin, which shows up as a negative
    slack rather than an error.
    """
    eps = _check_epsilon(epsilon)
    c = _check_cost(cost)
    if bound not in ("exact", "upper"):
        raise DomainError(f"bound must be exact or upper, got {bound!r}")
    key = select_key_scenario(scenarios, eps)
    tails = scenarios.tail_sums()
    rhs = eps - tails[key + 1]
    target = rhs / scenarios.probs[key]
    result = bisect_decreasing(wait_curve(scenarios.rates[key], bound), target)
    decision = _decide(scenarios, key, result.root)
    method = "reduced-exact" if bound == "exact" else "reduced-ub"
    return _report(scenarios, decision, c, method, eps,
                   result.evaluations, result.converged)


def solve_exact_enumeration(scenarios, epsilon, cost=1.0, key_index=None):
    """Full-constraint solve, enumerating candidate key scenarios.

    For each candidate key the full expected-wait constraint is driven to
    epsilon by bisection on beta; the cheapest feasible candidate wins.
    Since cost is charged per server and every key parameterizes the same
    constraint in n, near-equal costs are broken toward the lowest key
    index. Candidates whose root would need a safety factor beyond the
    bracket cap are reported infeasible; key_index pins the search to one
    candidate.
    """
    eps = _check_epsilon(epsilon)
    c = _check_cost(cost)
    if key_index is None:
        candidates = range(len(scenarios))
    else:
        if not 0 <= key_index < len(scenarios):
            raise DomainError(f"key_index out of range: {key_index!r}")
        candidates = (key_index,)

    best = None
    evals = 0
    failures = []
    for key in candidates:
        rate = scenarios.rates[key]
        root = math.sqrt(rate)

        def full(beta, rate=rate, root=root):
            return constraint_value(scenarios, rate + beta * root, bound="exact")

        try:
            result = bisect_decreasing(full, eps)
        except BracketError as exc:
            failures.append(f"key {key}: {exc}")
            continue
        evals += result.evaluations
        decision = _decide(scenarios, key, result.root)
        objective = c * decision.n_continuous
        # prefer the lowest key index among near-equal costs
        if best is None or objective < best[0] * (1.0 - 1e-9):
            best = (objective, decision, result.converged)
    if best is None:
        raise InfeasibleError(
            "no key scenario admits a feasible safety factor within the "
            "bracket; " + "; ".join(failures))
    _, decision, converged = best
    return _report(scenarios, decision, c, "exact-enumeration", eps,
                   evals, converged)
