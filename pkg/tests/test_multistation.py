"""Tests for the multi-station weighted solver and its bound-gap diagnostics."""
import math

import numpy as np
import pytest

from qstaff.erlang import erlang_c_sqrt, wait_probability
from qstaff.errors import DomainError
from qstaff.frontier import CostFunction
from qstaff.multistation import MultiStationInstance, MultiSolveReport, objective_gap, solve_multi
from qstaff.frontier import solve_weighted


def beta_linear(coef=1.0):
    return CostFunction(kind="linear-beta", coefficient=coef)


class TestInstanceValidation:
    def test_single_cost_broadcasts(self):
        inst = MultiStationInstance(lambdas=(10.0, 20.0), costs=beta_linear(), delta=5.0)
        assert len(inst.costs) == 2

    def test_rejects_bad_inputs(self):
        with pytest.raises(DomainError):
            MultiStationInstance(lambdas=(), costs=beta_linear(), delta=1.0)
        with pytest.raises(DomainError):
            MultiStationInstance(lambdas=(10.0, -1.0), costs=beta_linear(), delta=1.0)
        with pytest.raises(DomainError):
            MultiStationInstance(lambdas=(10.0,), costs=beta_linear(), delta=0.0)
        with pytest.raises(DomainError):
            MultiStationInstance(lambdas=(10.0,), costs=(beta_linear(),) * 2, delta=1.0)


class TestSolveMulti:
    def test_single_station_reduces_to_weighted(self):
        lam, delta = 150.0, 300.0
        inst = MultiStationInstance(lambdas=(lam,), costs=beta_linear(), delta=delta)
        multi = solve_multi(inst)
        single = solve_weighted(lam, delta)
        assert multi.betas[0] == pytest.approx(single.beta, abs=1e-6)
        assert multi.objective == pytest.approx(single.objective, rel=1e-9)

    def test_symmetry(self):
        inst = MultiStationInstance(lambdas=(120.0, 120.0),
                                    costs=(beta_linear(2.0), beta_linear(2.0)),
                                    delta=80.0)
        rep = solve_multi(inst)
        assert rep.betas[0] == pytest.approx(rep.betas[1], abs=1e-6)
        assert rep.converged

    def test_joint_wait_product_identity(self):
        inst = MultiStationInstance(lambdas=(90.0, 40.0, 150.0),
                                    costs=beta_linear(), delta=60.0)
        rep = solve_multi(inst)
        prod = 1.0
        for w in rep.per_station_wait:
            prod *= 1.0 - w
        assert rep.joint_wait == pytest.approx(1.0 - prod, abs=1e-12)
        # union form by inclusion-exclusion must agree with the product form
        w1, w2, w3 = rep.per_station_wait
        union = (w1 + w2 + w3 - w1 * w2 - w1 * w3 - w2 * w3 + w1 * w2 * w3)
        assert rep.joint_wait == pytest.approx(union, abs=1e-12)

    def test_matches_dense_grid_oracle(self):
        # brute-force 2-D scan, vectorized through the separable structure
        lams = (450.0, 200.0)
        coefs = (5.0, 3.0)
        delta = 50.0
        inst = MultiStationInstance(
            lambdas=lams, costs=tuple(beta_linear(c) for c in coefs), delta=delta)
        rep = solve_multi(inst)

        step = 1e-3
        grid = np.arange(0.0, 4.0 + step, step)
        no_wait = []
        for lam in lams:
            vals = np.array([1.0 - wait_probability(max(lam + b * math.sqrt(lam), 1.0), lam)
                             for b in grid])
            no_wait.append(vals)
        cost1 = coefs[0] * grid
        cost2 = coefs[1] * grid
        # objective(b1, b2) = cost1 + cost2 + delta*(1 - nw1*nw2); scan b2 inside
        best = math.inf
        arg = (0.0, 0.0)
        for i, b1 in enumerate(grid):
            row = cost1[i] + cost2 + delta * (1.0 - no_wait[0][i] * no_wait[1])
            j = int(np.argmin(row))
            if row[j] < best:
                best = float(row[j])
                arg = (float(b1), float(grid[j]))
        assert arg[0] not in (0.0, 4.0) and arg[1] not in (0.0, 4.0)
        assert rep.objective == pytest.approx(best, abs=1e-3)

    def test_coordinatewise_minimality(self):
        inst = MultiStationInstance(lambdas=(100.0, 60.0),
                                    costs=(beta_linear(2.0), beta_linear(1.0)),
                                    delta=40.0)
        rep = solve_multi(inst)

        def objective(bs):
            nw = 1.0
            for b, lam in zip(bs, inst.lambdas):
                nw *= 1.0 - wait_probability(max(lam + b * math.sqrt(lam), 1.0), lam)
            return (sum(c.beta_cost(b, lam) for b, lam, c in zip(bs, inst.lambdas, inst.costs))
                    + inst.delta * (1.0 - nw))

        base = objective(rep.betas)
        for i in range(2):
            for d in (-1e-3, 1e-3):
                bs = list(rep.betas)
                bs[i] = max(bs[i] + d, 0.0)
                assert objective(bs) >= base - 1e-6


class TestObjectiveGap:
    def test_nonnegative_on_grid(self):
        inst = MultiStationInstance(lambdas=(100.0, 50.0), costs=beta_linear(), delta=20.0)
        for b1 in (0.0, 0.5, 1.5, 3.0):
            for b2 in (0.0, 1.0, 2.5):
                assert objective_gap(inst, (b1, b2)) >= 0.0

    def test_zero_staffing_gap_is_zero(self):
        inst = MultiStationInstance(lambdas=(100.0, 50.0), costs=beta_linear(), delta=20.0)
        assert objective_gap(inst, (0.0, 0.0)) == 0.0

    def test_gap_shrinks_under_scaling(self):
        # max sampled gap decreases as both rates scale up by m
        samples = [(0.5, 0.5), (1.0, 1.5), (2.0, 1.0), (2.5, 2.5)]
        maxima = []
        for m in (1, 10, 100):
            inst = MultiStationInstance(
                lambdas=(100.0 * m, 50.0 * m), costs=beta_linear(), delta=20.0)
            maxima.append(max(objective_gap(inst, bs) for bs in samples))
        assert maxima[0] > maxima[1] > maxima[2]

    def test_solution_gap_shrinks_under_scaling(self):
        # exact-objective value of the bound-based solution approaches the
        # exact optimum as the system scales
        gaps = []
        for m in (1, 10, 100):
            inst = MultiStationInstance(
                lambdas=(100.0 * m, 50.0 * m), costs=beta_linear(), delta=20.0)
            f_rep = solve_multi(inst, bound="exact")
            g_rep = solve_multi(inst, bound="upper")

            def exact_objective(bs):
                nw = 1.0
                for b, lam in zip(bs, inst.lambdas):
                    nw *= 1.0 - wait_probability(max(lam + b * math.sqrt(lam), 1.0), lam)
                return (sum(c.beta_cost(b, lam)
                            for b, lam, c in zip(bs, inst.lambdas, inst.costs))
                        + inst.delta * (1.0 - nw))

            gap = exact_objective(g_rep.betas) - exact_objective(f_rep.betas)
            gaps.append(max(gap, 0.0))
        assert gaps[0] > gaps[-1]
        assert all(a >= b for a, b in zip(gaps, gaps[1:]))

    def test_validation(self):
        inst = MultiStationInstance(lambdas=(100.0,), costs=beta_linear(), delta=20.0)
        with pytest.raises(DomainError):
            objective_gap(inst, (0.5, 0.5))
        with pytest.raises(DomainError):
            objective_gap(inst, (-1.0,))
