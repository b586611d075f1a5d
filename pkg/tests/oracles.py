"""Independent oracles used across the test suite.

These deliberately avoid the library's code paths: payments come from a
bisection solve of the present-value sum rather than the closed form, pool
cash flows from per-month remaining-term annuity formulas rather than
survival scaling, and durations from the explicit weighted-time sum.
"""

from __future__ import annotations

import math


def annuity_sum(payment: float, annual_rate: float, n_months: int) -> float:
    """Present value of ``n_months`` level payments, term by term."""
    i = annual_rate / 12.0
    return sum(payment / (1.0 + i) ** k for k in range(1, n_months + 1))


def bisect_payment(notional: float, annual_rate: float, n_months: int) -> float:
    """Solve the present-value identity for the level payment by bisection."""
    lo, hi = 0.0, notional
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if annuity_sum(mid, annual_rate, n_months) < notional:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def iterate_schedule(notional: float, annual_rate: float, n_months: int) -> list[tuple[float, float, float]]:
    """(interest, principal, balance_after) per month via the plain recursion."""
    payment = bisect_payment(notional, annual_rate, n_months) if annual_rate > 0 else notional / n_months
    i = annual_rate / 12.0
    bal = notional
    rows = []
    for k in range(1, n_months + 1):
        interest = i * bal
        principal = bal if k == n_months else payment - interest
        bal -= principal
        rows.append((interest, principal, bal))
    return rows


def prepay_rows_oracle(
    notional: float, annual_rate: float, n_months: int, smm: float
) -> list[tuple[float, float, float, float, float, float]]:
    """(survival, total_payment, scheduled_principal, interest,
    unscheduled_principal, balance_after) per month.

    Spreadsheet-style: each month's payment is re-derived as the level payment
    on the surviving balance over the remaining term, not by scaling the
    no-prepayment schedule.
    """
    i = annual_rate / 12.0
    bal_hat = notional
    survival = 1.0
    rows = []
    for m in range(1, n_months + 1):
        remaining = n_months - m + 1
        growth = (1.0 + i) ** remaining
        total = bal_hat * i * growth / (growth - 1.0)
        sched = bal_hat * i / (growth - 1.0)
        interest = bal_hat * i
        unsched = smm * (bal_hat - sched)
        bal_hat = bal_hat - sched - unsched
        survival *= 1.0 - smm
        rows.append((survival, total, sched, interest, unsched, bal_hat))
    return rows


def macaulay_duration(times: list[float], amounts: list[float], y: float) -> float:
    """Weighted-average time of present values: sum t * PV(t) / sum PV(t)."""
    pvs = [c * (1.0 + y) ** (-t) for t, c in zip(times, amounts)]
    return sum(t * pv for t, pv in zip(times, pvs)) / sum(pvs)
