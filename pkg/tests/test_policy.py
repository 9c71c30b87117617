import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import shocksim as ss
from shocksim.errors import InsufficientDataError, OptimizationError, ParameterError

from conftest import PAPER_COSTS, make_scenario


def outcome(T, Tp):
    return ss.TrajectoryOutcome(T, Tp, T - Tp, 1, ss.FailureMode.SHOCK_JUMP)


class TestResidualPercentile:
    def test_degenerate_sample(self):
        for gamma in (0.9, 0.85, 0.8, 0.5):
            assert ss.residual_percentile([1.0] * 7, gamma) == 1.0

    def test_order_statistic_convention(self):
        residuals = list(range(1, 11))
        assert ss.residual_percentile(residuals, 0.90) == 1.0

    def test_empty_sample_rejected(self):
        with pytest.raises(InsufficientDataError):
            ss.residual_percentile([], 0.9)

    @pytest.mark.parametrize("gamma", [0.0, 1.0, -0.1, 1.5])
    def test_gamma_domain(self, gamma):
        with pytest.raises(ParameterError):
            ss.residual_percentile([1.0], gamma)

    @given(
        residuals=st.lists(st.floats(0.0, 100.0, allow_nan=False), min_size=1, max_size=400),
        gammas=st.tuples(st.floats(0.01, 0.99), st.floats(0.01, 0.99)),
    )
    @settings(max_examples=200, deadline=None)
    def test_percentile_ordering(self, residuals, gammas):
        low, high = sorted(gammas)
        assert ss.residual_percentile(residuals, high) <= ss.residual_percentile(residuals, low)

    @given(st.lists(st.floats(0.0, 50.0, allow_nan=False), min_size=5, max_size=300))
    @settings(max_examples=100, deadline=None)
    def test_survival_guarantee(self, residuals):
        # at least a gamma fraction of the sample survives the returned wait
        for gamma in (0.9, 0.8):
            t_star = ss.residual_percentile(residuals, gamma)
            survived = np.mean(np.asarray(residuals) >= t_star)
            assert survived >= gamma - 1e-12


class TestEvaluatePolicy:
    def test_hand_case(self):
        # one failing cycle of 50 plus nine surviving cycles of 50:
        # mean cycle 50, failure fraction 0.1 -> (5000 - 50*50 + 1000*0.1)/50
        outcomes = [outcome(50.0, 49.0)] + [outcome(100.0, 48.0)] * 9
        evaluation = ss.evaluate_policy(outcomes, 2.0, PAPER_COSTS)
        assert evaluation.mean_cycle == 50.0
        assert evaluation.failure_fraction == 0.1
        assert evaluation.ecput == pytest.approx(52.0, abs=1e-12)

    def test_zero_net_cost_case(self):
        # mean cycle exactly 100 with no failures: installation exactly offset
        evaluation = ss.evaluate_policy([outcome(101.0, 100.0)], 0.0, ss.CostParams())
        assert evaluation.mean_cycle == 100.0
        assert evaluation.failure_fraction == 0.0
        assert evaluation.ecput == 0.0

    def test_zero_wait_replaces_at_alarm(self):
        outcomes = [outcome(40.0, 35.0), outcome(42.0, 42.0)]
        evaluation = ss.evaluate_policy(outcomes, 0.0, PAPER_COSTS)
        assert evaluation.mean_cycle == pytest.approx((35.0 + 42.0) / 2)
        assert evaluation.failure_fraction == 0.5  # the residual-zero path fails

    def test_infinite_wait_is_failure_replacement(self):
        outcomes = [outcome(40.0, 35.0), outcome(60.0, 58.0)]
        evaluation = ss.evaluate_policy(outcomes, math.inf, PAPER_COSTS)
        assert evaluation.mean_cycle == 50.0
        assert evaluation.failure_fraction == 1.0

    def test_tie_counts_as_failure(self):
        evaluation = ss.evaluate_policy([outcome(40.0, 35.0)], 5.0, PAPER_COSTS)
        assert evaluation.failure_fraction == 1.0

    def test_censored_input_rejected(self):
        censored = ss.TrajectoryOutcome(None, None, None, 0, ss.FailureMode.CENSORED)
        with pytest.raises(ParameterError):
            ss.evaluate_policy([censored], 1.0, PAPER_COSTS)

    def test_empty_input_rejected(self):
        with pytest.raises(InsufficientDataError):
            ss.evaluate_policy([], 1.0, PAPER_COSTS)

    @given(
        waits=st.tuples(st.floats(0.0, 10.0), st.floats(0.0, 10.0)),
        data=st.lists(
            st.tuples(st.floats(1.0, 100.0), st.floats(0.0, 5.0)), min_size=1, max_size=50
        ),
    )
    @settings(max_examples=100, deadline=None)
    def test_monotone_in_wait(self, waits, data):
        outcomes = [outcome(alarm + res, alarm) for alarm, res in data]
        short, long_ = sorted(waits)
        a = ss.evaluate_policy(outcomes, short, PAPER_COSTS)
        b = ss.evaluate_policy(outcomes, long_, PAPER_COSTS)
        assert a.failure_fraction <= b.failure_fraction
        assert a.mean_cycle <= b.mean_cycle


class TestGridSpec:
    def test_grid_values(self):
        values = ss.GridSpec(8.0, 16.0, 0.1).values()
        assert values.size == 81
        assert values[0] == 8.0
        assert values[-1] == pytest.approx(16.0, abs=1e-9)

    def test_single_point_grid(self):
        assert ss.GridSpec(9.0, 9.0, 0.1).values().tolist() == [9.0]

    def test_validation(self):
        with pytest.raises(ParameterError):
            ss.GridSpec(10.0, 9.0, 0.1)
        with pytest.raises(ParameterError):
            ss.GridSpec(1.0, 2.0, 0.0)
        with pytest.raises(ParameterError):
            ss.GridSpec(0.0, 2.0, 0.1)


class TestOptimizeD:
    def test_single_point_grid_is_optimal_everywhere(self):
        scenario = make_scenario()
        result = ss.optimize_d(
            scenario, ss.GridSpec(12.0, 12.0, 0.1), (0.9, 0.8), PAPER_COSTS, 200, 17
        )
        assert {round(best.d, 6) for best in result.optima.values()} == {12.0}

    def test_tied_ecput_returns_smallest_d(self):
        # a grid entirely below the smallest observed gap record gives every
        # margin the same alarm epochs, hence identical cost rates
        scenario = make_scenario()
        profiles = ss.run_profiles(scenario, 150, 29)
        result = ss.optimize_d(
            scenario, ss.GridSpec(0.001, 0.002, 0.001), (0.9,), PAPER_COSTS, 150, 29,
            profiles=profiles,
        )
        rows = [r for r in result.rows if r.gamma == 0.9]
        assert rows[0].ecput == rows[1].ecput
        assert result.optima[0.9].d == 0.001

    def test_deterministic(self):
        scenario = make_scenario()
        grid = ss.GridSpec(10.0, 12.0, 0.5)
        a = ss.optimize_d(scenario, grid, (0.9,), PAPER_COSTS, 100, 3)
        b = ss.optimize_d(scenario, grid, (0.9,), PAPER_COSTS, 100, 3)
        assert a.rows == b.rows and a.optima == b.optima

    def test_all_censored_raises(self):
        # huge constant boundary, tiny horizon: damage never gets close
        scenario = make_scenario(
            c=0.0, kappa=0.0,
            magnitude=ss.DistributionSpec(ss.Family.WEIBULL, shape=10.0, mean=0.001),
            horizon=5.0, shock_count=2,
        )
        with pytest.warns(UserWarning):
            with pytest.raises(OptimizationError):
                ss.optimize_d(
                    scenario, ss.GridSpec(8.0, 8.2, 0.1), (0.9,), PAPER_COSTS, 20, 5
                )

    def test_split_sample_mode(self):
        scenario = make_scenario()
        profiles = ss.run_profiles(scenario, 400, 31)
        grid = ss.GridSpec(10.0, 11.0, 0.5)
        full = ss.optimize_d(scenario, grid, (0.9,), PAPER_COSTS, 400, 31, profiles=profiles)
        split = ss.optimize_d(
            scenario, grid, (0.9,), PAPER_COSTS, 400, 31, profiles=profiles, split_sample=True
        )
        assert full.rows != split.rows  # different estimation sets

    def test_rows_cover_grid_and_gammas(self):
        scenario = make_scenario()
        grid = ss.GridSpec(10.0, 11.0, 0.5)
        result = ss.optimize_d(scenario, grid, (0.9, 0.8), PAPER_COSTS, 120, 37)
        assert len(result.rows) == 3 * 2
        assert [r.d for r in result.rows[::2]] == [10.0, 10.5, 11.0]

    def test_gamma_validation(self):
        with pytest.raises(ParameterError):
            ss.optimize_d(
                make_scenario(), ss.GridSpec(10, 11, 0.5), (1.2,), PAPER_COSTS, 10, 1
            )


class TestCostParams:
    def test_nonnegative(self):
        with pytest.raises(ParameterError):
            ss.CostParams(install=-1.0)

    def test_net_rate(self):
        assert PAPER_COSTS.net_rate == -50.0
