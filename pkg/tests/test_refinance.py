"""Refinance savings, NPV breakeven, and payment-path comparisons."""

import math

import numpy as np
import pytest

from mortlab import (
    DomainError,
    LoanTerms,
    RefinanceScenario,
    breakeven_months,
    monthly_payment,
    new_monthly_payment,
    npv_series,
    payment_path_comparison,
)
from mortlab.refinance import (
    PENALTIES_EXCEED_SAVINGS,
    RATES_EXPECTED_TO_FALL,
    SHORT_REMAINING_TERM,
)

from oracles import bisect_payment


class TestNewMonthlyPayment:
    def test_zero_rate(self):
        assert new_monthly_payment(100_000, 0.0, 10) == pytest.approx(833.3333333333334, rel=1e-12)

    def test_matches_bisection_oracle(self):
        # frozen from bisect_payment(50000, 0.0329, 180)
        assert new_monthly_payment(50_000, 0.0329, 15) == pytest.approx(352.3072375169703, rel=1e-9)

    def test_equals_fresh_loan_payment(self):
        assert new_monthly_payment(86_812, 0.06, 20) == monthly_payment(LoanTerms(86_812, 0.06, 20))

    def test_negative_rate_rejected(self):
        with pytest.raises(DomainError):
            new_monthly_payment(100_000, -0.01, 10)


class TestBreakevenMonths:
    def test_figure_anchor(self):
        assert breakeven_months(1000.0, 66.67) == 15

    def test_zero_costs(self):
        assert breakeven_months(0.0, 123.0) == 0
        assert breakeven_months(0.0, -5.0) == 0

    def test_negative_savings_never_break_even(self):
        assert breakeven_months(1000.0, -5.0) is None
        assert breakeven_months(1000.0, 0.0) is None

    def test_exact_division_counts_as_broken_even(self):
        assert breakeven_months(1000.0, 100.0) == 10

    def test_negative_costs_rejected(self):
        with pytest.raises(DomainError):
            breakeven_months(-1.0, 10.0)


def _scenario(**overrides):
    base = dict(
        old_terms=LoanTerms(100_000, 0.0403, 30),
        months_elapsed=24,
        new_rate=0.0303,
        closing_costs=1500.0,
        new_term_years=28,
        cost_handling="paid_upfront",
        npv_mode="undiscounted_paper",
    )
    base.update(overrides)
    return RefinanceScenario(**base)


class TestNpvSeries:
    def test_zero_cost_lower_rate_breaks_even_immediately(self):
        result = npv_series(_scenario(closing_costs=0.0))
        assert result.npv_series[0] == 0.0
        assert result.breakeven_month == 0
        assert result.monthly_savings_series[0] > 0
        assert result.decision == "refinance"

    def test_equal_rate_with_costs_never_recovers(self):
        result = npv_series(_scenario(new_rate=0.0403))
        # old and new payments coincide, so NPV pins at -closing_costs
        for value in result.npv_series:
            assert value == pytest.approx(-1500.0, abs=1e-6)
        assert result.breakeven_month is None
        assert result.decision == "do-not-refinance"

    def test_upfront_costs_start_the_series(self):
        result = npv_series(_scenario())
        assert result.npv_series[0] == -1500.0

    def test_rolled_costs_increase_new_payment(self):
        upfront = npv_series(_scenario())
        rolled = npv_series(_scenario(cost_handling="rolled_into_loan"))
        assert rolled.new_payment > upfront.new_payment
        assert rolled.npv_series[0] == -1500.0

    def test_sign_structure_around_breakeven(self):
        result = npv_series(_scenario())
        b = result.breakeven_month
        assert b is not None
        assert all(v < 0 for v in result.npv_series[:b])
        assert result.npv_series[b] >= 0

    def test_constant_savings_matches_closed_form(self):
        scenario = _scenario()
        result = npv_series(scenario)
        savings = result.monthly_savings_series[0]
        assert result.breakeven_month == breakeven_months(scenario.closing_costs, savings)

    def test_discounted_mode_delays_breakeven(self):
        undiscounted = npv_series(_scenario())
        discounted = npv_series(_scenario(npv_mode="discounted_at_new_rate"))
        assert discounted.breakeven_month >= undiscounted.breakeven_month
        rate = 1.0 + 0.0303 / 12.0
        for m, saving in enumerate(undiscounted.monthly_savings_series, start=1):
            expected = discounted.npv_series[m] - discounted.npv_series[m - 1]
            assert expected == pytest.approx(saving / rate**m, rel=1e-9, abs=1e-9)

    def test_breakeven_monotone_in_costs(self):
        months = []
        for costs in (0.0, 500.0, 1500.0, 4000.0, 8000.0):
            result = npv_series(_scenario(closing_costs=costs))
            months.append(result.breakeven_month)
        assert all(b is not None for b in months)
        assert months == sorted(months)

    def test_breakeven_monotone_in_rate_drop(self):
        months = []
        for new_rate in (0.038, 0.034, 0.030, 0.026):
            result = npv_series(_scenario(new_rate=new_rate))
            months.append(result.breakeven_month)
        assert all(b is not None for b in months)
        assert months == sorted(months, reverse=True)

    def test_short_remaining_term_is_fatal(self):
        # 10 months left on the old loan; the savings rate would need ~13
        # months to recover the costs, so the window is too short
        scenario = _scenario(
            months_elapsed=350,
            closing_costs=1000.0,
            new_term_years=1,
        )
        result = npv_series(scenario)
        savings = result.monthly_savings_series[0]
        assert savings > 0
        assert breakeven_months(1000.0, savings) > 10
        assert result.breakeven_month is None
        assert SHORT_REMAINING_TERM in result.caveat_flags
        assert result.decision == "do-not-refinance"
        assert result.npv_series[-1] < 0

    def test_advisory_flags(self):
        result = npv_series(
            _scenario(prepayment_penalty=1e9, rates_expected_to_fall=True)
        )
        assert PENALTIES_EXCEED_SAVINGS in result.caveat_flags
        assert RATES_EXPECTED_TO_FALL in result.caveat_flags
        # advisory only: decision still follows the NPV
        assert result.decision == "refinance"

    def test_malformed_scenarios_rejected(self):
        with pytest.raises(DomainError):
            _scenario(months_elapsed=360)
        with pytest.raises(DomainError):
            _scenario(closing_costs=-1.0)
        with pytest.raises(DomainError):
            _scenario(cost_handling="wire_fraud")
        with pytest.raises(DomainError):
            _scenario(npv_mode="vibes")
        with pytest.raises(DomainError):
            _scenario(new_rate=-0.01)


class TestPaymentPathComparison:
    def test_identity_at_equal_rates(self):
        terms = LoanTerms(100_000, 0.0403, 30)
        comparison = payment_path_comparison(terms, 0.0403, 1.0)
        assert np.allclose(comparison.new_payments, comparison.old_payments, rtol=1e-9)

    def test_lambda_below_one_rejected(self):
        with pytest.raises(DomainError):
            payment_path_comparison(LoanTerms(100_000, 0.0403, 30), 0.0303, 0.99)

    def test_month_zero_gap_matches_oracle_payments(self):
        terms = LoanTerms(100_000, 0.0403, 30)
        comparison = payment_path_comparison(terms, 0.0303, 1.0)
        expected = bisect_payment(100_000, 0.0403, 360) - bisect_payment(100_000, 0.0303, 360)
        assert comparison.payment_gap[0] == pytest.approx(expected, rel=1e-9)

    def test_new_payment_strictly_below_old_when_rate_drops(self):
        terms = LoanTerms(100_000, 0.0403, 30)
        comparison = payment_path_comparison(terms, 0.0303, 1.0)
        assert np.all(comparison.new_payments < comparison.old_payments)

    def test_cost_multiplier_narrows_the_gap(self):
        terms = LoanTerms(100_000, 0.0403, 30)
        free = payment_path_comparison(terms, 0.0303, 1.0)
        costly = payment_path_comparison(terms, 0.0303, 1.20)
        assert np.all(costly.payment_gap < free.payment_gap)
        assert np.all(costly.payment_gap > 0)

    def test_gap_decays_to_zero(self):
        terms = LoanTerms(100_000, 0.0403, 30)
        comparison = payment_path_comparison(terms, 0.0303, 1.20)
        gap = comparison.payment_gap
        assert gap[-1] < 0.05 * gap[0]
        assert gap[-1] > 0
