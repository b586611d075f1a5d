"""Refinance decision analytics: new payment, savings stream, NPV breakeven.

The decision problem: a borrower ``months_elapsed`` into an existing loan can
take a new loan at ``new_rate`` for a one-off closing cost ``C``.  Monthly
savings are the difference between the old and new scheduled payments, and the
running net present value is

    NPV_m = -C + sum_{i=1..m} savings_i        (optionally discounted)

The breakeven month is the first month at which NPV turns non-negative; with
constant positive savings it is ceil(C / savings).  Three standard caveats are
tracked: too little remaining term to reach breakeven (fatal), prepayment
penalties exceeding total savings, and an expectation of further rate drops
(both advisory).

Note on the new-payment formula: the level payment is the balance times
``(x/12)`` divided by the annuity bracket ``1 - (1 + x/12)^(-12N)``.  A
multiplied bracket sometimes seen in informal write-ups does not invert the
level-payment identity and is not used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .amortization import LoanTerms, balance_at, monthly_payment, payment_over_months
from .errors import DomainError

COST_HANDLING_MODES = ("rolled_into_loan", "paid_upfront")
NPV_MODES = ("undiscounted_paper", "discounted_at_new_rate")

# Caveat flags carried on BreakevenResult.
SHORT_REMAINING_TERM = "short_remaining_term"
PENALTIES_EXCEED_SAVINGS = "penalties_exceed_savings"
RATES_EXPECTED_TO_FALL = "rates_expected_to_fall"


@dataclass(frozen=True)
class RefinanceScenario:
    """Inputs for one refinance what-if.

    cost_handling: "rolled_into_loan" finances the closing costs inside the
        new principal (the default); "paid_upfront" keeps the new principal at
        the outstanding balance.  The NPV series starts at -closing_costs in
        both modes: the rolled mode additionally pays interest on the costs
        through the higher new payment.
    npv_mode: "undiscounted_paper" accumulates raw monthly savings;
        "discounted_at_new_rate" discounts saving i by (1 + new_rate/12)^-i.
    """

    old_terms: LoanTerms
    months_elapsed: int
    new_rate: float
    closing_costs: float
    new_term_years: int
    cost_handling: str = "rolled_into_loan"
    npv_mode: str = "undiscounted_paper"
    prepayment_penalty: float = 0.0
    rates_expected_to_fall: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.months_elapsed < self.old_terms.n_months:
            raise DomainError(
                f"months_elapsed must be in [0, {self.old_terms.n_months}), got {self.months_elapsed}"
            )
        if self.new_rate < 0:
            raise DomainError(f"new_rate must be non-negative, got {self.new_rate}")
        if self.closing_costs < 0:
            raise DomainError(f"closing_costs must be non-negative, got {self.closing_costs}")
        if int(self.new_term_years) != self.new_term_years or self.new_term_years < 1:
            raise DomainError(f"new_term_years must be a positive integer, got {self.new_term_years}")
        if self.cost_handling not in COST_HANDLING_MODES:
            raise DomainError(f"cost_handling must be one of {COST_HANDLING_MODES}, got {self.cost_handling!r}")
        if self.npv_mode not in NPV_MODES:
            raise DomainError(f"npv_mode must be one of {NPV_MODES}, got {self.npv_mode!r}")
        if self.prepayment_penalty < 0:
            raise DomainError(f"prepayment_penalty must be non-negative, got {self.prepayment_penalty}")


@dataclass(frozen=True)
class BreakevenResult:
    """Outcome of an NPV breakeven analysis.

    npv_series[m] is the cumulative NPV m months after refinancing
    (npv_series[0] = -closing_costs).  breakeven_month is the first index at
    which the series is >= 0, or None if it never recovers within the horizon.
    decision is "refinance" or "do-not-refinance"; caveat_flags lists any of
    the module-level flag constants that apply.
    """

    new_payment: float
    monthly_savings_series: tuple[float, ...]
    npv_series: tuple[float, ...]
    breakeven_month: int | None
    decision: str
    caveat_flags: frozenset[str] = field(default_factory=frozenset)


@dataclass(frozen=True)
class PaymentPathComparison:
    """Old vs refinanced payment, per candidate refinance month.

    Entry t compares the original level payment against the payment of a loan
    taken at month t (t payments already made) on the then-outstanding balance
    over the remaining term at the effective new rate.
    """

    months: np.ndarray
    old_payments: np.ndarray
    new_payments: np.ndarray

    @property
    def payment_gap(self) -> np.ndarray:
        return self.old_payments - self.new_payments


def new_monthly_payment(balance: float, new_rate: float, new_term_years: int) -> float:
    """Level payment on the refinanced balance, same formula as the original
    loan's payment."""
    return monthly_payment(LoanTerms(notional=balance, annual_rate=new_rate, term_years=new_term_years))


def breakeven_months(costs: float, savings: float) -> int | None:
    """Months for constant monthly ``savings`` to recover ``costs``.

    ceil(costs / savings) for positive savings; 0 when there is nothing to
    recover; None when savings are non-positive (never breaks even).
    """
    if costs < 0:
        raise DomainError(f"costs must be non-negative, got {costs}")
    if costs == 0:
        return 0
    if savings <= 0:
        return None
    return math.ceil(costs / savings)


def npv_series(scenario: RefinanceScenario) -> BreakevenResult:
    """Savings stream, cumulative NPV, breakeven month, and decision for a
    refinance scenario.

    The horizon covers whichever loan runs longer; the old payment contributes
    only while the old loan would still be active, the new payment only while
    the new loan is.  The decision is "refinance" iff the terminal NPV is
    non-negative and the remaining old term reaches the breakeven month.
    """
    old = scenario.old_terms
    remaining_old = old.n_months - scenario.months_elapsed
    old_payment = monthly_payment(old)
    balance = balance_at(old, scenario.months_elapsed)

    financed = balance + scenario.closing_costs if scenario.cost_handling == "rolled_into_loan" else balance
    n_new = 12 * int(scenario.new_term_years)
    new_payment = payment_over_months(financed, scenario.new_rate, n_new)

    horizon = max(remaining_old, n_new)
    months = np.arange(1, horizon + 1)
    old_stream = np.where(months <= remaining_old, old_payment, 0.0)
    new_stream = np.where(months <= n_new, new_payment, 0.0)
    savings = old_stream - new_stream

    if scenario.npv_mode == "discounted_at_new_rate":
        discounted = savings / (1.0 + scenario.new_rate / 12.0) ** months
    else:
        discounted = savings

    npv = np.empty(horizon + 1)
    npv[0] = -scenario.closing_costs
    np.cumsum(discounted, out=npv[1:])
    npv[1:] -= scenario.closing_costs

    above = np.flatnonzero(npv >= 0.0)
    breakeven: int | None = int(above[0]) if above.size else None

    flags = set()
    # months the first month's saving would need to recover the costs; if the
    # old loan ends before then, the remaining term is too short
    required = breakeven_months(scenario.closing_costs, float(savings[0])) if horizon else 0
    if required is not None and required > remaining_old:
        flags.add(SHORT_REMAINING_TERM)
    if scenario.prepayment_penalty > 0 and scenario.prepayment_penalty > float(np.sum(savings)):
        flags.add(PENALTIES_EXCEED_SAVINGS)
    if scenario.rates_expected_to_fall:
        flags.add(RATES_EXPECTED_TO_FALL)

    decision = "refinance" if npv[-1] >= 0.0 and SHORT_REMAINING_TERM not in flags else "do-not-refinance"

    return BreakevenResult(
        new_payment=new_payment,
        monthly_savings_series=tuple(float(s) for s in savings),
        npv_series=tuple(float(v) for v in npv),
        breakeven_month=breakeven,
        decision=decision,
        caveat_flags=frozenset(flags),
    )


def payment_path_comparison(
    old_terms: LoanTerms, new_rate: float, lambda_cost_multiplier: float = 1.0
) -> PaymentPathComparison:
    """Old vs new payment for every candidate refinance month.

    ``lambda_cost_multiplier`` scales the new rate upward to emulate closing
    costs as an increased capital commitment; 1.0 is the cost-free case.  For
    each month t in [0, 12N), the new payment is the level payment on the
    outstanding balance over the remaining term at
    ``lambda_cost_multiplier * new_rate``.  The two series converge as the
    remaining term shrinks.
    """
    if lambda_cost_multiplier < 1.0:
        raise DomainError(f"lambda_cost_multiplier must be >= 1, got {lambda_cost_multiplier}")
    if new_rate < 0:
        raise DomainError(f"new_rate must be non-negative, got {new_rate}")
    effective_rate = lambda_cost_multiplier * new_rate
    n = old_terms.n_months
    old_payment = monthly_payment(old_terms)
    months = np.arange(n)
    new_payments = np.empty(n)
    for t in range(n):
        balance = balance_at(old_terms, t)
        new_payments[t] = payment_over_months(balance, effective_rate, n - t)
    return PaymentPathComparison(
        months=months,
        old_payments=np.full(n, old_payment),
        new_payments=new_payments,
    )
