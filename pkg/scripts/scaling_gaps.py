"""How much the upper-bound shortcut costs as systems scale.

Two sweeps over the scale factor m. The first is a two-station
deterministic instance with rates m*(100, 50), unit safety-factor
costs, and a fixed QoS weight. The second scales the bundled
call-center scenarios by m with QoS weight 20000*sqrt(m), so the
penalty keeps pace with the sqrt-scale of the staffing decision.

For each m both sweeps solve the weighted problem twice, once on the
exact curve and once on the closed-form upper bound, and score both
answers on the exact objective. The reported gap is the true cost of
optimizing against the bound; it falls quickly with m.
"""

import math

from qstaff import (
    CostFunction,
    JointScenarioSet,
    MultiStationInstance,
    exact_objective,
    load_scenario_file,
    resolve_scenario_path,
    solve_multi,
    solve_weighted_stoch,
)

SCALES = (1, 10, 100)


def deterministic_sweep():
    print("deterministic two-station sweep, delta = 20")
    print(f"{'m':>5} {'exact objective':>16} {'gap':>12}")
    for m in SCALES:
        instance = MultiStationInstance(
            (100.0 * m, 50.0 * m), (CostFunction(), CostFunction()), 20.0)
        exact = solve_multi(instance, bound="exact")
        upper = solve_multi(instance, bound="upper")
        gap = (exact_objective(instance, upper.betas)
               - exact_objective(instance, exact.betas))
        print(f"{m:>5} {exact_objective(instance, exact.betas):>16.6f} "
              f"{gap:>12.3e}")


def scenario_sweep():
    base = load_scenario_file(resolve_scenario_path("example1"))
    joint = base.joint_set()
    costs = base.problem.costs
    print("\nscenario-weighted sweep, delta = 20000*sqrt(m)")
    print(f"{'m':>5} {'exact objective':>16} {'gap':>12}")
    for m in SCALES:
        scaled = JointScenarioSet(
            tuple(tuple(m * r for r in v) for v in joint.rate_vectors),
            joint.probs)
        delta = 20000.0 * math.sqrt(m)
        exact = solve_weighted_stoch(scaled, delta, costs, bound="exact")
        upper = solve_weighted_stoch(scaled, delta, costs, bound="upper")
        gap = upper.exact_objective - exact.exact_objective
        print(f"{m:>5} {exact.exact_objective:>16.6f} {gap:>12.3e}")


def main():
    deterministic_sweep()
    scenario_sweep()


if __name__ == "__main__":
    main()
