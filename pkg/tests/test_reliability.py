import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import shocksim as ss
from shocksim.errors import InsufficientDataError, ParameterError


def outcome(T, Tp):
    return ss.TrajectoryOutcome(T, Tp, T - Tp, 1, ss.FailureMode.SHOCK_JUMP)


class TestEmpiricalSurvival:
    def test_point_mass(self):
        curve = ss.empirical_survival([3.0, 3.0, 3.0])
        assert curve(2.999) == 1.0
        assert curve(3.0) == 0.0
        assert curve(10.0) == 0.0

    def test_midpoint_value(self):
        curve = ss.empirical_survival([1.0, 2.0, 3.0, 4.0])
        assert curve(2.5) == 0.5

    def test_starts_at_one(self):
        curve = ss.empirical_survival([0.5, 1.5, 9.0])
        assert curve(0.0) == 1.0

    def test_empty_rejected(self):
        with pytest.raises(InsufficientDataError):
            ss.empirical_survival([])

    def test_nonpositive_rejected(self):
        with pytest.raises(ParameterError):
            ss.empirical_survival([1.0, 0.0])

    @given(st.lists(st.floats(0.01, 1e6, allow_nan=False), min_size=1, max_size=300))
    @settings(max_examples=150, deadline=None)
    def test_valid_survival_function(self, times):
        curve = ss.empirical_survival(times)
        assert curve.survival[0] <= 1.0
        assert curve.survival[-1] == 0.0
        assert np.all(np.diff(curve.survival) <= 0)
        grid = np.linspace(0.0, max(times) * 1.1, 50)
        values = curve(grid)
        assert np.all(np.diff(values) <= 1e-15)
        assert np.all((values >= 0.0) & (values <= 1.0))

    def test_vectorized_evaluation(self):
        curve = ss.empirical_survival([1.0, 2.0])
        assert np.array_equal(curve(np.array([0.5, 1.0, 2.0])), [1.0, 0.5, 0.0])


class TestScenarioReplacementTimes:
    OUTCOMES = [outcome(10.0, 8.0), outcome(20.0, 15.0), outcome(30.0, 29.9)]
    T_STARS = {0.90: 0.5, 0.85: 0.7, 0.80: 0.94}

    def test_failure_rule(self):
        times = ss.scenario_replacement_times(self.OUTCOMES, "failure_100")
        assert times.tolist() == [10.0, 20.0, 30.0]

    def test_alarm_rule(self):
        times = ss.scenario_replacement_times(self.OUTCOMES, ss.ReplacementRule.RISK_0)
        assert times.tolist() == [8.0, 15.0, 29.9]

    def test_risk_rule_uses_matching_gamma(self):
        times = ss.scenario_replacement_times(self.OUTCOMES, "risk_20", self.T_STARS)
        expected = np.minimum([10.0, 20.0, 30.0], np.array([8.0, 15.0, 29.9]) + 0.94)
        assert np.allclose(times, expected, rtol=0, atol=0)

    def test_pathwise_rule_ordering(self):
        failure = ss.scenario_replacement_times(self.OUTCOMES, "failure_100")
        alarm = ss.scenario_replacement_times(self.OUTCOMES, "risk_0")
        for rule in ("risk_20", "risk_15", "risk_10"):
            mid = ss.scenario_replacement_times(self.OUTCOMES, rule, self.T_STARS)
            assert np.all(alarm <= mid) and np.all(mid <= failure)

    def test_missing_t_star_rejected(self):
        with pytest.raises(ParameterError):
            ss.scenario_replacement_times(self.OUTCOMES, "risk_15", {0.90: 0.5})
        with pytest.raises(ParameterError):
            ss.scenario_replacement_times(self.OUTCOMES, "risk_15")

    def test_censored_rejected(self):
        censored = ss.TrajectoryOutcome(None, None, None, 0, ss.FailureMode.CENSORED)
        with pytest.raises(ParameterError):
            ss.scenario_replacement_times([censored], "failure_100")

    def test_rule_gammas(self):
        assert ss.ReplacementRule.RISK_20.gamma == 0.80
        assert ss.ReplacementRule.RISK_15.gamma == 0.85
        assert ss.ReplacementRule.RISK_10.gamma == 0.90
        assert ss.ReplacementRule.RISK_0.gamma is None
        assert ss.ReplacementRule.FAILURE_100.gamma is None


class TestCurveDominance:
    def test_five_rules_pointwise_ordered(self):
        rng = np.random.default_rng(1)
        alarms = rng.uniform(10.0, 60.0, size=400)
        residuals = rng.exponential(2.0, size=400)
        outcomes = [outcome(a + r, a) for a, r in zip(alarms, residuals)]
        t_stars = {0.90: 0.5, 0.85: 0.7, 0.80: 0.94}
        curves = [
            ss.empirical_survival(ss.scenario_replacement_times(outcomes, rule, t_stars))
            for rule in ("failure_100", "risk_20", "risk_15", "risk_10", "risk_0")
        ]
        grid = np.linspace(0.0, 70.0, 200)
        values = [c(grid) for c in curves]
        for higher, lower in zip(values, values[1:]):
            assert np.all(higher >= lower)
