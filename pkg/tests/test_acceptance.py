"""Acceptance gate: the twelve release criteria, one test each.

Every criterion checks its documented numbers at its documented
tolerance and its runtime budget, and reports one PASS or FAIL line.
The lines are replayed after the pytest summary by the conftest hook,
so a plain ``pytest -v`` run shows the verdicts.
"""

import json
import math
from contextlib import contextmanager
from time import perf_counter

from qstaff.cli import main
from qstaff.erlang import (
    erlang_c_continuous,
    erlang_c_exact,
    erlang_c_sqrt,
    jvlz_bounds,
)
from qstaff.files import load_scenario_file, resolve_scenario_path
from qstaff.frontier import CostFunction, solve_constrained
from qstaff.joint import (
    compare_solutions,
    enumerate_key_scenarios,
    solve_decoupled,
    solve_reduced_joint,
    solve_weighted_stoch,
)
from qstaff.multistation import MultiStationInstance, exact_objective, solve_multi
from qstaff.scenarios import JointScenarioSet
from qstaff.simulate import (
    SimConfig,
    simulate_busy_fraction,
    simulate_scenario_qos,
    simulate_wait_probability,
)
from qstaff.stochastic import select_key_scenario

RESULTS = []

EPSILON = 0.05
PRICES = (5.0, 3.0)
BETA_GRID = [0.1 + i * (5.0 - 0.1) / 19 for i in range(20)]


@contextmanager
def criterion(number, description, budget_s):
    start = perf_counter()
    try:
        yield
    except Exception as exc:
        reason = " ".join(str(exc).split())
        if len(reason) > 140:
            reason = reason[:137] + "..."
        RESULTS.append(f"FAIL criterion {number:2d}: {description} ({reason})")
        print(RESULTS[-1])
        raise
    elapsed = perf_counter() - start
    if elapsed > budget_s:
        RESULTS.append(
            f"FAIL criterion {number:2d}: {description} "
            f"(runtime {elapsed:.1f}s over the {budget_s:.0f}s budget)")
        print(RESULTS[-1])
        raise AssertionError(
            f"criterion {number} took {elapsed:.1f}s, budget {budget_s}s")
    RESULTS.append(
        f"PASS criterion {number:2d}: {description} "
        f"({elapsed:.1f}s of {budget_s:.0f}s)")
    print(RESULTS[-1])


def example_set(scale=1.0):
    base = load_scenario_file(resolve_scenario_path("example1")).joint_set()
    if scale == 1.0:
        return base
    vectors = tuple(tuple(scale * r for r in v) for v in base.rate_vectors)
    return JointScenarioSet(vectors, base.probs)


def test_criterion_01_joint_staffing(capsys):
    with criterion(1, "compare reproduces the joint staffing and union wait",
                   60.0):
        code = main(["compare", "example1", "--format", "json"])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["joint"]["n"] == [496, 235]
        assert payload["joint"]["cost"] == 3185.0
        union_wait = 1.0 - payload["joint"]["achieved_qos"]
        assert abs(union_wait - 0.05) <= 0.005


def test_criterion_02_decoupled_staffing():
    with criterion(2, "decoupled staffing, cost, and cost ratio", 10.0):
        report = solve_decoupled(example_set(), EPSILON, PRICES)
        assert report.decision.n_integer == (484, 306)
        assert report.integer_cost == 3338.0
        ratio = compare_solutions(example_set(), EPSILON, PRICES).cost_ratio
        assert abs(ratio - 1.048) <= 0.01


def test_criterion_03_reduced_joint_betas():
    with criterion(3, "reduced joint betas at the (high, medium) key", 10.0):
        report = solve_reduced_joint(example_set(), EPSILON, PRICES, (1, 1))
        beta1, beta2 = report.decision.betas
        assert abs(beta1 - 2.15) <= 0.02
        assert abs(beta2 - 2.48) <= 0.02
        assert report.decision.n_integer == (496, 235)


def test_criterion_04_decoupled_betas():
    with criterion(4, "decoupled safety factors and station-2 staffing", 5.0):
        report = solve_decoupled(example_set(), EPSILON, PRICES)
        beta1, beta2 = report.decision.betas
        assert abs(beta1 - 1.6) <= 0.05
        assert abs(beta2 - 0.36) <= 0.05
        assert report.decision.n_integer[1] == 306


def test_criterion_05_key_selection():
    with criterion(5, "key-scenario choices per station and jointly", 5.0):
        joint = example_set()
        split = 1.0 - math.sqrt(1.0 - EPSILON)
        station1 = joint.marginal(0)
        station2 = joint.marginal(1)
        # highest rate in both stations at the per-station split
        assert select_key_scenario(station1, split) == len(station1.rates) - 1
        assert select_key_scenario(station2, split) == len(station2.rates) - 1
        report = enumerate_key_scenarios(joint, EPSILON, PRICES)
        # (high, medium): top of two rates, middle of three
        assert report.decision.key_indices == (1, 1)
        assert report.decision.key_rates == (450.0, 200.0)


def test_criterion_06_bound_sandwich():
    with criterion(6, "bound sandwich on the 20x4 (beta, lambda) grid", 30.0):
        violations = 0
        for lam in (10.0, 100.0, 1000.0, 10000.0):
            for beta in BETA_GRID:
                pair = jvlz_bounds(beta, lam)
                value = erlang_c_sqrt(beta, lam)
                if not pair.lower <= value <= pair.upper:
                    violations += 1
        assert violations == 0


def test_criterion_07_uniform_convergence():
    with criterion(7, "bound gap shrinks uniformly in lambda", 30.0):
        gaps = []
        for lam in (1e2, 1e3, 1e4, 1e5):
            pairs = [jvlz_bounds(beta, lam) for beta in BETA_GRID]
            gaps.append(max(p.upper - p.lower for p in pairs))
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-3


def test_criterion_08_guaranteed_beta_gap():
    with criterion(8, "guaranteed-vs-exact safety factor gap vanishes", 30.0):
        gaps = []
        for lam in (1e2, 1e3, 1e4, 1e5):
            guaranteed = solve_constrained(lam, 0.1, bound="upper").beta
            exact = solve_constrained(lam, 0.1, bound="exact").beta
            gaps.append(guaranteed - exact)
        assert all(g > 0 for g in gaps)
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-2


def test_criterion_09_objective_gap_sweeps():
    with criterion(9, "objective gaps fall along both scaling sweeps", 120.0):
        station_gaps = []
        for m in (1, 10, 100):
            instance = MultiStationInstance(
                (100.0 * m, 50.0 * m), (CostFunction(), CostFunction()), 20.0)
            upper = solve_multi(instance, bound="upper")
            exact = solve_multi(instance, bound="exact")
            station_gaps.append(exact_objective(instance, upper.betas)
                                - exact_objective(instance, exact.betas))
        assert all(b < a for a, b in zip(station_gaps, station_gaps[1:]))

        scenario_gaps = []
        for m in (1, 10, 100):
            joint = example_set(scale=float(m))
            delta = 20000.0 * math.sqrt(m)
            upper = solve_weighted_stoch(joint, delta, PRICES, bound="upper")
            exact = solve_weighted_stoch(joint, delta, PRICES, bound="exact")
            scenario_gaps.append(upper.exact_objective - exact.exact_objective)
        assert all(b < a for a, b in zip(scenario_gaps, scenario_gaps[1:]))


def test_criterion_10_monotonicity_suite():
    with criterion(10, "monotonicity and boundedness lemma suite", 30.0):
        violations = 0

        # upper bound falls in lambda at fixed beta
        for beta in (0.5, 1.0, 2.0):
            uppers = [jvlz_bounds(beta, lam).upper
                      for lam in (10.0, 100.0, 1000.0, 10000.0)]
            violations += sum(not b < a for a, b in zip(uppers, uppers[1:]))

        # upper bound and exact curve fall strictly in beta at fixed lambda
        for lam in (100.0, 10000.0):
            uppers = [jvlz_bounds(beta, lam).upper for beta in BETA_GRID]
            violations += sum(not b < a for a, b in zip(uppers, uppers[1:]))
        curve = [erlang_c_sqrt(beta, 100.0) for beta in BETA_GRID]
        violations += sum(not b < a for a, b in zip(curve, curve[1:]))

        # the lower-bound correction term shrinks as lambda grows
        def correction(lam):
            terms = []
            for beta in BETA_GRID:
                pair = jvlz_bounds(beta, lam)
                terms.append(1.0 / pair.lower - 1.0 / pair.upper)
            return max(terms)

        violations += int(not correction(1e4) < correction(1e2))

        # every probability stays inside (0, 1]
        for lam in (10.0, 100.0, 10000.0):
            for beta in BETA_GRID:
                pair = jvlz_bounds(beta, lam)
                for value in (pair.lower, pair.upper,
                              erlang_c_sqrt(beta, lam)):
                    violations += int(not 0.0 < value <= 1.0)

        assert violations == 0


SIM_POINTS = (
    # (n, lam, seed)
    (2, 1.0, 0),
    (5, 4.0, 0),
    (10, 9.0, 0),
    (20, 16.0, 0),
    (50, 45.0, 0),
    (100, 90.0, 0),
    (150, 140.0, 0),
    (235, 200.0, 0),
    (300, 285.0, 0),
    (496, 450.0, 0),
)


def test_criterion_11_simulator_concordance():
    with criterion(11, "exact formula inside the simulator's 99% CI", 180.0):
        misses = []
        for n, lam, seed in SIM_POINTS:
            config = SimConfig(n=n, lam=lam, replications=6, seed=seed)
            estimate = simulate_wait_probability(config)
            exact = erlang_c_exact(n, lam)
            if abs(estimate.wait_prob_mean - exact) > estimate.ci99_halfwidth:
                misses.append((n, lam))
        assert not misses, f"CI misses at {misses}"

        config = SimConfig(n=3, lam=2.4, seed=11)
        seen = simulate_wait_probability(config)
        busy = simulate_busy_fraction(config)
        spread = seen.ci99_halfwidth + busy.ci99_halfwidth
        assert abs(seen.wait_prob_mean - busy.wait_prob_mean) <= spread


def test_criterion_12_interpolation():
    with criterion(12, "continuous extension interpolates the exact formula",
                   30.0):
        worst = 0.0
        for n in range(2, 201):
            lam = 0.9 * n
            exact = erlang_c_exact(n, lam)
            smooth = erlang_c_continuous(float(n), lam)
            worst = max(worst, abs(smooth - exact) / exact)
        assert worst <= 1e-8
