"""Fixed-rate mortgage math: level payment, effective rate, amortization schedule.

A loan of notional ``B`` at annual rate ``x`` over ``N`` years is repaid by a
level monthly payment ``M`` satisfying the annuity identity

    B = sum_{k=1..12N} M / (1 + x/12)^k

which inverts to ``M = B * (x/12) / (1 - (1 + x/12)^(-12N))``.  Each month
splits into interest ``(x/12) * balance`` and principal ``M - interest``; the
running balance declines to zero at maturity.  A month is exactly 1/12 year
throughout; there are no day-count conventions.

All arithmetic is carried in full floating precision.  Rounding currency to
cents is a presentation concern (CLI/service/UI) and never happens inside the
schedule recursion, so the terminal-balance and principal-conservation
identities hold to near machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class LoanTerms:
    """Contract triple for a fixed-rate loan.

    notional: amount borrowed, in dollars (> 0)
    annual_rate: nominal annual rate as a decimal fraction, e.g. 0.0403 (>= 0)
    term_years: whole years to maturity (>= 1)
    """

    notional: float
    annual_rate: float
    term_years: int

    def __post_init__(self) -> None:
        if not self.notional > 0:
            raise DomainError(f"notional must be positive, got {self.notional}")
        if self.annual_rate < 0:
            raise DomainError(f"annual_rate must be non-negative, got {self.annual_rate}")
        if int(self.term_years) != self.term_years or self.term_years < 1:
            raise DomainError(f"term_years must be a positive integer, got {self.term_years}")

    @property
    def n_months(self) -> int:
        return 12 * int(self.term_years)

    @property
    def monthly_rate(self) -> float:
        return self.annual_rate / 12.0


@dataclass(frozen=True)
class ScheduleRow:
    """One month of an amortization schedule.

    ``interest + principal == payment`` and
    ``interest_fraction + principal_fraction == 1`` by construction.
    """

    month_index: int
    payment: float
    interest: float
    principal: float
    balance_after: float
    interest_fraction: float
    principal_fraction: float


@dataclass(frozen=True)
class AmortizationSchedule:
    """Full month-by-month payment decomposition for a loan."""

    terms: LoanTerms
    rows: tuple[ScheduleRow, ...]

    def row(self, month: int) -> ScheduleRow:
        """Row for 1-based ``month``."""
        if not 1 <= month <= len(self.rows):
            raise DomainError(f"month {month} outside schedule 1..{len(self.rows)}")
        return self.rows[month - 1]


def payment_over_months(balance: float, annual_rate: float, n_months: int) -> float:
    """Level monthly payment repaying ``balance`` over ``n_months`` months.

    The zero-rate case is the limit of the annuity formula: balance / n_months.
    """
    if not balance > 0:
        raise DomainError(f"balance must be positive, got {balance}")
    if annual_rate < 0:
        raise DomainError(f"annual_rate must be non-negative, got {annual_rate}")
    if n_months < 1:
        raise DomainError(f"n_months must be >= 1, got {n_months}")
    i = annual_rate / 12.0
    if i == 0.0:  # includes rates that underflow to a zero monthly rate
        return balance / n_months
    # 1 - (1+i)^(-n) via expm1/log1p, stable for tiny rates
    annuity = -math.expm1(-n_months * math.log1p(i))
    return balance * i / annuity


def monthly_payment(terms: LoanTerms) -> float:
    """Level payment for the loan; substituting it back into the annuity sum
    recovers the notional."""
    return payment_over_months(terms.notional, terms.annual_rate, terms.n_months)


def effective_annual_rate(annual_rate: float) -> float:
    """Annual rate with monthly compounding folded in: (1 + x/12)^12 - 1."""
    if annual_rate < 0:
        raise DomainError(f"annual_rate must be non-negative, got {annual_rate}")
    return math.expm1(12.0 * math.log1p(annual_rate / 12.0))


def amortize_months(balance: float, annual_rate: float, n_months: int) -> tuple[ScheduleRow, ...]:
    """Amortization rows for an arbitrary month count.

    The recursion is interest = (x/12) * balance, principal = payment - interest.
    The final month's principal is clamped to the remaining balance so the
    schedule always ends at exactly zero; the last payment absorbs the (tiny)
    accumulated float drift.
    """
    payment = payment_over_months(balance, annual_rate, n_months)
    i = annual_rate / 12.0
    rows: list[ScheduleRow] = []
    bal = balance
    for k in range(1, n_months + 1):
        interest = i * bal
        if k == n_months:
            principal = bal
            pay_k = interest + principal
        else:
            principal = payment - interest
            pay_k = payment
        bal = bal - principal
        interest_fraction = interest / pay_k
        rows.append(
            ScheduleRow(
                month_index=k,
                payment=pay_k,
                interest=interest,
                principal=principal,
                balance_after=bal,
                interest_fraction=interest_fraction,
                principal_fraction=1.0 - interest_fraction,
            )
        )
    return tuple(rows)


def build_schedule(terms: LoanTerms) -> AmortizationSchedule:
    """Full schedule for the loan: exactly 12 * term_years rows, terminal
    balance exactly zero."""
    return AmortizationSchedule(terms=terms, rows=amortize_months(terms.notional, terms.annual_rate, terms.n_months))


def balance_over_months(balance: float, annual_rate: float, n_months: int, month: int) -> float:
    """Outstanding balance after ``month`` payments, in closed form.

    Uses the remaining-annuity identity balance_k = M * a(n-k) where a(m) is
    the present-value factor of m remaining payments, so month = n gives
    exactly zero.
    """
    if not 0 <= month <= n_months:
        raise DomainError(f"month must be in [0, {n_months}], got {month}")
    if month == 0:
        return balance
    if month == n_months:
        return 0.0
    remaining = n_months - month
    i = annual_rate / 12.0
    if i == 0.0:
        return balance * remaining / n_months
    payment = payment_over_months(balance, annual_rate, n_months)
    return payment * (-math.expm1(-remaining * math.log1p(i))) / i


def balance_at(terms: LoanTerms, month: int) -> float:
    """Outstanding balance after ``month`` payments (0 returns the notional)."""
    return balance_over_months(terms.notional, terms.annual_rate, terms.n_months, month)
