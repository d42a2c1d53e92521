"""Multi-station staffing under a joint arrival-rate scenario distribution.

The service-level requirement is joint: with conditionally independent
stations, the probability that no customer waits anywhere is

    sum_w p^w * prod_i (1 - alpha(n_i, Lam_i^w)) >= 1 - epsilon,

where a station whose realized rate reaches its staffing level is
unstable and contributes zero no-wait probability.

Solver lineup:

* solve_joint: the joint model as solved in practice; picks a key
  scenario per station, minimizes the weighted sum of safety factors
  subject to the full joint constraint, and rounds the implied levels.
* solve_joint_exact_integer: certified integer optimum by exhaustive
  lattice search between provable bounds; the ground truth at desk scale.
* solve_decoupled: per-station single-station solves with no-wait target
  (1-epsilon)^(1/L); simple, conservative, and typically a few percent
  more expensive.
* solve_reduced_joint / enumerate_key_scenarios: the asymptotic reduced
  model keyed to a per-station key scenario, with scenarios above a key
  written off and scenarios below it written in; enumeration searches the
  key lattice for the cheapest feasible risk allocation.
* solve_weighted_stoch: the dualized form trading server cost against
  delta times the joint wait probability, solved per key by coordinate
  descent.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .erlang import wait_probability
from .errors import (
    BracketError,
    DomainError,
    EnumerationCapError,
    InfeasibleError,
)
from .frontier import integer_staffing
from .search import bisect_decreasing, grid_then_golden
from .stochastic import _check_epsilon, solve_reduced, wait_curve

__all__ = [
    "JointDecision",
    "JointSolveReport",
    "WeightedSolveReport",
    "SolutionSummary",
    "ComparisonReport",
    "joint_constraint_value",
    "solve_joint",
    "solve_joint_exact_integer",
    "solve_decoupled",
    "solve_reduced_joint",
    "enumerate_key_scenarios",
    "solve_weighted_stoch",
    "compare_solutions",
]

FEASIBILITY_TOL = 1e-9


def _check_costs(costs, stations):
    out = tuple(float(c) for c in costs)
    if len(out) != stations:
        raise DomainError(
            f"need one cost per station, got {len(out)} for {stations} stations")
    if any(not math.isfinite(c) or c <= 0.0 for c in out):
        raise DomainError("per-server costs must be positive reals")
    return out


def _no_wait_tables(scenarios, levels, bound="exact"):
    # per-station lookup rate -> no-wait probability at that staffing level
    tables = []
    for i, n in enumerate(levels):
        table = {}
        for rate in scenarios.marginal(i).rates:
            if rate >= n:
                table[rate] = 0.0
            else:
                table[rate] = 1.0 - wait_probability(max(n, 1.0), rate, bound=bound)
        tables.append(table)
    return tables


def _joint_no_wait(scenarios, levels, bound="exact"):
    tables = _no_wait_tables(scenarios, levels, bound)
    total = 0.0
    for rates, p in scenarios.pairs():
        prod = p
        for table, rate in zip(tables, rates):
            prod *= table[rate]
            if prod == 0.0:
                break
        total += prod
    return total


def joint_constraint_value(scenarios, n):
    """Joint no-wait probability of the staffing vector n.

    Evaluates sum_w p^w prod_i (1 - alpha(n_i, Lam_i^w)) with the exact
    wait curve; integer levels use the exact recursion. Stations whose
    realized rate reaches n_i contribute zero no-wait probability.
    """
    levels = tuple(float(x) for x in n)
    if len(levels) != scenarios.stations:
        raise DomainError(
            f"staffing vector has {len(levels)} entries for "
            f"{scenarios.stations} stations")
    if any(not math.isfinite(x) or x < 1.0 for x in levels):
        raise DomainError("staffing levels must be reals >= 1")
    return _joint_no_wait(scenarios, levels)


@dataclass(frozen=True)
class JointDecision:
    """Per-station nonanticipative staffing (beta_i, key scenario index)."""

    betas: tuple
    key_indices: tuple     # index into each station's marginal rate list
    key_rates: tuple
    n_continuous: tuple
    n_integer: tuple


@dataclass(frozen=True)
class JointSolveReport:
    decision: JointDecision
    beta_cost: float         # sum c_i beta_i, the reduced-model objective
    server_cost: float       # sum c_i n_continuous_i
    integer_cost: float      # sum c_i n_integer_i
    achieved_qos: float      # exact joint no-wait probability at n_integer
    epsilon: float
    feasible: bool
    over_conservative: bool  # constants alone met the target; all betas zero
    method: str


@dataclass(frozen=True)
class WeightedSolveReport:
    decision: JointDecision
    objective: float         # under the bound the solve ran with
    exact_objective: float   # same point scored with the exact curve
    no_wait: float           # exact joint no-wait at the continuous levels
    bound_used: str
    cycles: int
    converged: bool


@dataclass(frozen=True)
class SolutionSummary:
    """One column of the solution-comparison table."""

    label: str
    n: tuple
    cost: float
    achieved_qos: float
    n_continuous: tuple = None
    betas: tuple = None
    key_rates: tuple = None


@dataclass(frozen=True)
class ComparisonReport:
    joint: SolutionSummary
    reduced: SolutionSummary
    decoupled: SolutionSummary
    cost_ratio: float        # decoupled cost / joint cost


def _decision_from_betas(betas, key_indices, key_rates):
    n_cont = tuple(r + b * math.sqrt(r) for b, r in zip(betas, key_rates))
    return JointDecision(
        betas=tuple(betas),
        key_indices=tuple(key_indices),
        key_rates=tuple(key_rates),
        n_continuous=n_cont,
        n_integer=tuple(max(integer_staffing(x), 1) for x in n_cont),
    )


def _reduced_report(scenarios, decision, costs, eps, method, over_conservative=False):
    achieved = joint_constraint_value(scenarios, decision.n_integer)
    return JointSolveReport(
        decision=decision,
        beta_cost=sum(c * b for c, b in zip(costs, decision.betas)),
        server_cost=sum(c * n for c, n in zip(costs, decision.n_continuous)),
        integer_cost=sum(c * n for c, n in zip(costs, decision.n_integer)),
        achieved_qos=achieved,
        epsilon=eps,
        feasible=achieved + FEASIBILITY_TOL >= 1.0 - eps,
        over_conservative=over_conservative,
        method=method,
    )


# ---------------------------------------------------------------------------
# decoupled heuristic

def solve_decoupled(scenarios, epsilon, costs):
    """Per-station solves with no-wait target (1 - epsilon)^(1/L).

    Splitting the joint target evenly across stations decouples the
    problem into L single-station reduced models on the marginal
    distributions. The assembled vector is conservative relative to the
    joint model because the split ignores how slack at one station could
    cover risk at another.
    """
    eps = _check_epsilon(epsilon)
    L = scenarios.stations
    costs = _check_costs(costs, L)
    per_station_eps = 1.0 - (1.0 - eps) ** (1.0 / L)
    betas = []
    keys = []
    rates = []
    for i in range(L):
        rep = solve_reduced(scenarios.marginal(i), per_station_eps, cost=costs[i])
        betas.append(rep.decision.beta)
        keys.append(rep.decision.key_index)
        rates.append(rep.decision.key_rate)
    decision = _decision_from_betas(betas, keys, rates)
    return _reduced_report(scenarios, decision, costs, eps, "decoupled")


# ---------------------------------------------------------------------------
# reduced joint model with key scenarios

def _key_rates(scenarios, key_indices):
    keys = tuple(int(k) for k in key_indices)
    if len(keys) != scenarios.stations:
        raise DomainError(
            f"need one key index per station, got {len(keys)} for "
            f"{scenarios.stations} stations")
    rates = []
    for i, k in enumerate(keys):
        marginal = scenarios.marginal(i)
        if not 0 <= k < len(marginal):
            raise DomainError(f"station {i} key index out of range: {k!r}")
        rates.append(marginal.rates[k])
    return keys, tuple(rates)


def _reduced_terms(scenarios, key_rates):
    """Multilinear form of the reduced constraint.

    Scenario coordinates above their key rate zero the whole term and
    coordinates below contribute factor one, so each surviving scenario
    reduces to its probability times the product of u_i over the
    coordinates sitting exactly at the key rate. Returns {bitmask: coeff}.
    """
    coeffs = {}
    for rates, p in scenarios.pairs():
        mask = 0
        dead = False
        for i, r in enumerate(rates):
            if r > key_rates[i]:
                dead = True
                break
            if r == key_rates[i]:
                mask |= 1 << i
        if not dead:
            coeffs[mask] = coeffs.get(mask, 0.0) + p
    return coeffs


def _split_linear(coeffs, u, station):
    # constraint = A + B * u_station with every other u fixed
    const = 0.0
    slope = 0.0
    for mask, c in coeffs.items():
        prod = c
        rest = mask & ~(1 << station)
        i = 0
        while rest:
            if rest & 1:
                prod *= u[i]
            rest >>= 1
            i += 1
        if mask >> station & 1:
            slope += prod
        else:
            const += prod
    return const, slope


def solve_reduced_joint(scenarios, epsilon, costs, key_indices,
                        beta_hi=8.0, beta_cap=64.0,
                        max_cycles=200, cycle_tol=1e-9):
    """Reduced joint model for a fixed per-station key-scenario choice.

    Minimizes sum c_i beta_i subject to the multilinear constraint built
    by the over/under/at-key trichotomy. The constraint is active at any
    optimum, so the last station's u is solved linearly from the others
    and inverted to a beta by bisection; the free coordinates are
    optimized by cyclic grid-plus-golden descent.

    A key whose surviving probability mass cannot reach 1 - epsilon even
    with vanishing wait at every key coordinate is infeasible. A key
    whose constant terms alone reach the target needs no safety staffing
    at all; it is returned with zero betas and flagged over_conservative.
    """
    eps = _check_epsilon(epsilon)
    L = scenarios.stations
    costs = _check_costs(costs, L)
    keys, key_rates = _key_rates(scenarios, key_indices)
    coeffs = _reduced_terms(scenarios, key_rates)
    target = 1.0 - eps

    reachable = sum(coeffs.values())
    if reachable <= target:
        raise InfeasibleError(
            f"key scenario {keys} keeps probability mass {reachable:.6g}, "
            f"short of the no-wait target {target:.6g}")
    if coeffs.get(0, 0.0) >= target:
        decision = _decision_from_betas((0.0,) * L, keys, key_rates)
        return _reduced_report(scenarios, decision, costs, eps,
                               "reduced-joint", over_conservative=True)

    curves = [wait_curve(r) for r in key_rates]
    dep = L - 1
    free = list(range(dep))

    def dep_beta(u):
        """Smallest beta for the dependent station, or None if the free
        coordinates leave the target out of reach."""
        const, slope = _split_linear(coeffs, u, dep)
        if const >= target:
            return 0.0
        if slope <= 0.0:
            return None
        u_req = (target - const) / slope
        if u_req >= 1.0:
            return None
        if u_req <= 0.0:
            return 0.0
        try:
            return bisect_decreasing(curves[dep], 1.0 - u_req,
                                     hi=beta_hi, hi_cap=beta_cap).root
        except BracketError:
            return None

    betas = [1.0] * L
    u = [0.0] * L

    def refresh_u():
        for j in free:
            u[j] = 1.0 - curves[j](betas[j])

    def full_objective():
        refresh_u()
        b_dep = dep_beta(u)
        if b_dep is None:
            return math.inf
        betas[dep] = b_dep
        return sum(c * b for c, b in zip(costs, betas))

    if not free:
        value = full_objective()
        if not math.isfinite(value):
            raise InfeasibleError(
                f"key scenario {keys} needs a safety factor beyond the "
                f"bracket cap {beta_cap}")
        return _reduced_report(
            scenarios, _decision_from_betas(betas, keys, key_rates),
            costs, eps, "reduced-joint")

    refresh_u()
    current = math.inf
    for _ in range(max_cycles):
        for i in free:
            fixed = sum(costs[j] * betas[j] for j in free if j != i)

            def coord(b, i=i, fixed=fixed):
                u[i] = 1.0 - curves[i](b)
                b_dep = dep_beta(u)
                if b_dep is None:
                    return math.inf
                return fixed + costs[i] * b + costs[dep] * b_dep

            hi = beta_hi
            while True:
                best_b, best_v, _ = grid_then_golden(coord, 0.0, hi)
                if best_b < hi - 1e-6 or hi >= beta_cap:
                    break
                hi = min(2.0 * hi, beta_cap)
            betas[i] = best_b
            u[i] = 1.0 - curves[i](best_b)
        value = full_objective()
        if not math.isfinite(value):
            raise InfeasibleError(
                f"key scenario {keys} needs a safety factor beyond the "
                f"bracket cap {beta_cap}")
        if current - value < cycle_tol * (1.0 + abs(value)):
            current = min(current, value)
            break
        current = value

    return _reduced_report(
        scenarios, _decision_from_betas(betas, keys, key_rates),
        costs, eps, "reduced-joint")


def enumerate_key_scenarios(scenarios, epsilon, costs, cap=10000):
    """Cheapest feasible key over the per-station marginal key lattice.

    The QoS risk can be spread across stations in several ways; each
    candidate key vector is solved by solve_reduced_joint, infeasible
    keys are skipped, and candidates are ranked by continuous server cost
    with near-ties broken toward the lexicographically smallest key.
    """
    eps = _check_epsilon(epsilon)
    costs = _check_costs(costs, scenarios.stations)
    sizes = [len(m) for m in scenarios.marginals]
    total = math.prod(sizes)
    if total > cap:
        raise EnumerationCapError(
            f"{total} candidate key scenarios exceed the cap of {cap}")
    best = None
    reasons = []
    for key in itertools.product(*(range(s) for s in sizes)):
        try:
            report = solve_reduced_joint(scenarios, eps, costs, key)
        except InfeasibleError as exc:
            reasons.append(str(exc))
            continue
        if best is None or report.server_cost < best.server_cost * (1.0 - 1e-9):
            best = report
    if best is None:
        raise InfeasibleError(
            "every candidate key scenario is infeasible: " + "; ".join(reasons))
    return best


# ---------------------------------------------------------------------------
# joint model on the exact constraint

def _stability_threshold(marginal, eps):
    # smallest rate r such that staffing strictly above r keeps the
    # stable-scenario mass at 1 - eps or more; a necessary condition on
    # any feasible staffing level because the no-wait product dies on
    # unstable stations
    need = 1.0 - eps
    cum = 0.0
    for rate, p in marginal.pairs():
        cum += p
        if cum >= need - 1e-12:
            return rate
    return marginal.rates[-1]


def _search_bounds(scenarios, eps, costs):
    target = 1.0 - eps
    lower = [_stability_threshold(scenarios.marginal(i), eps)
             for i in range(scenarios.stations)]
    dec = solve_decoupled(scenarios, eps, costs)
    upper = [n + 3.0 * math.sqrt(n) for n in dec.decision.n_continuous]
    corner = _joint_no_wait(scenarios, upper)
    if corner < target:
        raise InfeasibleError(
            f"joint target {target:.6g} unreachable inside the search box: "
            f"no-wait probability at staffing {tuple(round(x, 3) for x in upper)} "
            f"is only {corner:.6g}")
    return lower, upper


def solve_joint(scenarios, epsilon, costs, key_indices=None, warm_betas=None,
                beta_hi=8.0, beta_cap=64.0, max_cycles=200, cycle_tol=1e-9):
    """Joint model on the full constraint in the key parameterization.

    Minimizes sum c_i beta_i subject to the exact joint chance constraint
    evaluated at n_i = Lam_i^key + beta_i * sqrt(Lam_i^key) against every
    realized scenario, with no term written off. This is the
    non-asymptotic counterpart of solve_reduced_joint: the same decision
    space and objective, but the true constraint.

    When key_indices is omitted the key (and a warm start) is taken from
    enumerate_key_scenarios, which is how the key choice is justified in
    the first place; the full solve then refines the reduced betas, which
    move only marginally at realistic scales.
    """
    eps = _check_epsilon(epsilon)
    L = scenarios.stations
    costs = _check_costs(costs, L)
    if key_indices is None:
        seed = enumerate_key_scenarios(scenarios, eps, costs)
        keys = seed.decision.key_indices
        key_rates = seed.decision.key_rates
        betas = list(seed.decision.betas)
    else:
        keys, key_rates = _key_rates(scenarios, key_indices)
        betas = [1.0] * L if warm_betas is None else [float(b) for b in warm_betas]
        if len(betas) != L or any(b < 0 or not math.isfinite(b) for b in betas):
            raise DomainError("warm_betas must be a non-negative vector, one per station")
    roots = [math.sqrt(r) for r in key_rates]
    dep = L - 1
    free = list(range(dep))

    def joint_wait(bs):
        levels = [max(r + b * rt, 1.0)
                  for r, rt, b in zip(key_rates, roots, bs)]
        return 1.0 - _joint_no_wait(scenarios, levels)

    def dep_beta():
        # smallest dependent beta restoring the constraint, holding the
        # free coordinates fixed; the joint wait is decreasing in it
        def curve(b):
            trial = list(betas)
            trial[dep] = b
            return joint_wait(trial)

        try:
            return bisect_decreasing(curve, eps, hi=beta_hi, hi_cap=beta_cap).root
        except BracketError:
            return None

    def full_objective():
        b_dep = dep_beta()
        if b_dep is None:
            return math.inf
        betas[dep] = b_dep
        return sum(c * b for c, b in zip(costs, betas))

    if free:
        current = math.inf
        for _ in range(max_cycles):
            for i in free:
                fixed = sum(costs[j] * betas[j] for j in free if j != i)

                def coord(b, i=i, fixed=fixed):
                    betas[i] = b
                    b_dep = dep_beta()
                    if b_dep is None:
                        return math.inf
                    return fixed + costs[i] * b + costs[dep] * b_dep

                hi = beta_hi
                while True:
                    best_b, _, _ = grid_then_golden(coord, 0.0, hi)
                    if best_b < hi - 1e-6 or hi >= beta_cap:
                        break
                    hi = min(2.0 * hi, beta_cap)
                betas[i] = best_b
            value = full_objective()
            if not math.isfinite(value):
                raise InfeasibleError(
                    f"key scenario {keys} needs a safety factor beyond the "
                    f"bracket cap {beta_cap}")
            if current - value < cycle_tol * (1.0 + abs(value)):
                current = min(current, value)
                break
            current = value
    else:
        value = full_objective()
        if not math.isfinite(value):
            raise InfeasibleError(
                f"key scenario {keys} needs a safety factor beyond the "
                f"bracket cap {beta_cap}")

    return _reduced_report(
        scenarios, _decision_from_betas(betas, keys, key_rates),
        costs, eps, "joint")


def solve_joint_exact_integer(scenarios, epsilon, costs):
    """Certified integer optimum of the joint model by lattice search.

    The joint constraint is nondecreasing in each n_i, so for fixed
    values of the first L-1 stations the smallest feasible level of the
    last follows by binary search. The search box is provable: below the
    per-station stability threshold the stable mass alone cannot reach
    the target, and the decoupled solution plus a three-sigma margin is
    feasible. Every candidate in the box is covered, so the returned
    vector is the exact integer optimum; ties go to the lexicographically
    smallest vector.
    """
    eps = _check_epsilon(epsilon)
    L = scenarios.stations
    costs = _check_costs(costs, L)
    target = 1.0 - eps
    lower_c, upper_c = _search_bounds(scenarios, eps, costs)
    lower = [int(math.floor(x)) + 1 for x in lower_c]
    upper = [int(math.ceil(x)) for x in upper_c]
    dep = L - 1

    def feasible_dep(outer, n_dep):
        return _joint_no_wait(scenarios, list(outer) + [float(n_dep)]) >= target

    best_cost = math.inf
    best_n = None

    for outer in itertools.product(*(range(lo, hi + 1)
                                     for lo, hi in zip(lower[:dep], upper[:dep]))):
        fixed = sum(c * n for c, n in zip(costs[:dep], outer))
        if fixed + costs[dep] * lower[dep] >= best_cost:
            continue
        if not feasible_dep(outer, upper[dep]):
            continue
        lo, hi = lower[dep], upper[dep]
        while lo < hi:
            mid = (lo + hi) // 2
            if feasible_dep(outer, mid):
                hi = mid
            else:
                lo = mid + 1
        cost = fixed + costs[dep] * lo
        if cost < best_cost:
            best_cost = cost
            best_n = tuple(outer) + (lo,)
    if best_n is None:
        raise InfeasibleError("no integer staffing in the search box is feasible")
    return SolutionSummary(
        label="joint-integer",
        n=best_n,
        cost=best_cost,
        achieved_qos=joint_constraint_value(scenarios, best_n),
    )


# ---------------------------------------------------------------------------
# weighted form

def solve_weighted_stoch(scenarios, delta, costs, bound="exact",
                         beta_hi=8.0, beta_cap=64.0,
                         max_cycles=100, cycle_tol=1e-9):
    """Dualized joint model: server cost plus delta times the joint wait.

    For every candidate key vector the betas are optimized by cyclic
    coordinate descent on

        sum_i c_i n_i(beta_i) + delta * (1 - joint no-wait),

    where the no-wait term faces the realized scenario rates through the
    exact curve or its upper bound. The best key wins; ties keep the
    lexicographically smallest.
    """
    if not isinstance(delta, (int, float)) or isinstance(delta, bool) \
            or not math.isfinite(delta) or delta <= 0.0:
        raise DomainError(f"delta must be a positive real, got {delta!r}")
    delta = float(delta)
    L = scenarios.stations
    costs = _check_costs(costs, L)
    if bound not in ("exact", "upper"):
        raise DomainError(f"bound must be exact or upper, got {bound!r}")
    sizes = [len(m) for m in scenarios.marginals]

    def score(key_rates, betas, with_bound):
        levels = [max(r + b * math.sqrt(r), 1.0)
                  for r, b in zip(key_rates, betas)]
        no_wait = _joint_no_wait(scenarios, levels, with_bound)
        cost = sum(c * n for c, n in zip(costs, levels))
        return cost + delta * (1.0 - no_wait)

    best = None
    for key in itertools.product(*(range(s) for s in sizes)):
        key_rates = tuple(scenarios.marginal(i).rates[k]
                          for i, k in enumerate(key))
        betas = [1.0] * L
        previous = math.inf
        converged = False
        cycles = 0
        for cycles in range(1, max_cycles + 1):
            for i in range(L):
                def coord(b, i=i):
                    trial = list(betas)
                    trial[i] = b
                    return score(key_rates, trial, bound)

                hi = beta_hi
                while True:
                    best_b, _, _ = grid_then_golden(coord, 0.0, hi)
                    if best_b < hi - 1e-6 or hi >= beta_cap:
                        break
                    hi = min(2.0 * hi, beta_cap)
                betas[i] = best_b
            value = score(key_rates, betas, bound)
            if previous - value < cycle_tol * (1.0 + abs(value)):
                converged = True
                break
            previous = value
        if best is None or value < best[0]:
            best = (value, key, key_rates, tuple(betas), cycles, converged)

    value, key, key_rates, betas, cycles, converged = best
    decision = _decision_from_betas(betas, key, key_rates)
    exact_levels = [max(n, 1.0) for n in decision.n_continuous]
    no_wait = _joint_no_wait(scenarios, exact_levels)
    exact_cost = sum(c * n for c, n in zip(costs, exact_levels))
    return WeightedSolveReport(
        decision=decision,
        objective=value,
        exact_objective=exact_cost + delta * (1.0 - no_wait),
        no_wait=no_wait,
        bound_used=bound,
        cycles=cycles,
        converged=converged,
    )


# ---------------------------------------------------------------------------
# side-by-side comparison

def compare_solutions(scenarios, epsilon, costs, cap=10000):
    """Joint, reduced-enumeration, and decoupled solutions side by side.

    The reduced column enumerates key scenarios on the asymptotic model;
    the joint column re-solves at the winning key against the full
    constraint; the decoupled column splits the target per station. The
    cost ratio quantifies what the decoupled shortcut gives up.
    """
    reduced = enumerate_key_scenarios(scenarios, epsilon, costs, cap=cap)
    joint = solve_joint(scenarios, epsilon, costs,
                        key_indices=reduced.decision.key_indices,
                        warm_betas=reduced.decision.betas)
    decoupled = solve_decoupled(scenarios, epsilon, costs)

    def summarize(report, label):
        return SolutionSummary(
            label=label,
            n=report.decision.n_integer,
            cost=report.integer_cost,
            achieved_qos=report.achieved_qos,
            n_continuous=report.decision.n_continuous,
            betas=report.decision.betas,
            key_rates=report.decision.key_rates,
        )

    joint_summary = summarize(joint, "joint")
    reduced_summary = summarize(reduced, "reduced")
    decoupled_summary = summarize(decoupled, "decoupled")
    return ComparisonReport(
        joint=joint_summary,
        reduced=reduced_summary,
        decoupled=decoupled_summary,
        cost_ratio=decoupled_summary.cost / joint_summary.cost,
    )
