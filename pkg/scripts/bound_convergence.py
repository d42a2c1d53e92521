"""Tables behind the bound-quality story.

First table: worst sandwich gap between the closed-form bounds across a
beta grid, by offered load. The gap shrinks roughly like 1/sqrt(lam),
so solving on the upper bound costs less and less extra staffing as the
system grows. Second table: that extra staffing directly, as the
safety-factor gap between the bound-guaranteed solve and the exact
solve at a fixed QoS target.
"""

import math

from qstaff import erlang_c_sqrt, jvlz_bounds, solve_constrained

BETAS = [0.1 + i * (5.0 - 0.1) / 19 for i in range(20)]
LAMS = [1e2, 1e3, 1e4, 1e5]


def main():
    print("worst-case bound gap over the beta grid")
    print(f"{'lam':>10} {'max UB-LB':>12} {'max UB-exact':>13}")
    for lam in LAMS:
        pairs = [jvlz_bounds(beta, lam) for beta in BETAS]
        sandwich = max(p.upper - p.lower for p in pairs)
        versus_exact = max(p.upper - erlang_c_sqrt(b, lam)
                           for b, p in zip(BETAS, pairs))
        print(f"{lam:>10.0f} {sandwich:>12.3e} {versus_exact:>13.3e}")

    print("\nsafety-factor gap at epsilon = 0.1")
    print(f"{'lam':>10} {'beta exact':>11} {'beta upper':>11} "
          f"{'gap':>10} {'extra servers':>14}")
    for lam in LAMS:
        exact = solve_constrained(lam, 0.1, bound="exact").beta
        upper = solve_constrained(lam, 0.1, bound="upper").beta
        extra = (upper - exact) * math.sqrt(lam)
        print(f"{lam:>10.0f} {exact:>11.6f} {upper:>11.6f} "
              f"{upper - exact:>10.2e} {extra:>14.3f}")


if __name__ == "__main__":
    main()
