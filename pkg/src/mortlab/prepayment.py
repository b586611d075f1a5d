"""Pool cash flows under monthly prepayment (single monthly mortality).

``S_n`` is the fraction of the surviving pool that prepays in month ``n``.
The survival factor ``Q_n = prod_{i<=n} (1 - S_i)`` (with ``Q_0 = 1``) scales
every scheduled quantity of the no-prepayment schedule:

    total_payment_n       = payment_n   * Q_{n-1}
    scheduled_principal_n = principal_n * Q_{n-1}
    interest_n            = interest_n  * Q_{n-1}
    unscheduled_principal_n = S_n * (balance_{n-1} - scheduled_principal_n)
    balance_n = balance_{n-1} - scheduled_principal_n - unscheduled_principal_n
              = (no-prepayment balance_n) * Q_n

With ``S == 0`` the recursion reproduces the base schedule bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .amortization import AmortizationSchedule, LoanTerms, build_schedule
from .errors import DomainError


@dataclass(frozen=True)
class SmmSchedule:
    """Per-month prepayment rates, each in [0, 1]."""

    rates: tuple[float, ...]

    def __post_init__(self) -> None:
        for k, s in enumerate(self.rates, start=1):
            if not 0.0 <= s <= 1.0:
                raise DomainError(f"smm rate for month {k} must be in [0, 1], got {s}")

    @classmethod
    def constant(cls, rate: float, n_months: int) -> "SmmSchedule":
        return cls(rates=(rate,) * n_months)

    def __len__(self) -> int:
        return len(self.rates)


@dataclass(frozen=True)
class PoolCashFlowRow:
    month_index: int
    survival: float
    total_payment: float
    scheduled_principal: float
    interest: float
    unscheduled_principal: float
    balance_after: float


@dataclass(frozen=True)
class PoolCashFlow:
    base_terms: LoanTerms
    smm: SmmSchedule
    rows: tuple[PoolCashFlowRow, ...]

    def total_cash(self, month: int) -> float:
        """Cash received by the pool investor in ``month`` (scheduled payment
        plus unscheduled principal)."""
        row = self.rows[month - 1]
        return row.total_payment + row.unscheduled_principal


def survival_factors(smm: SmmSchedule) -> np.ndarray:
    """Survival factors Q_0..Q_n; Q_0 = 1 and Q is non-increasing."""
    rates = np.asarray(smm.rates, dtype=float)
    out = np.empty(len(rates) + 1)
    out[0] = 1.0
    np.cumprod(1.0 - rates, out=out[1:])
    return out


def pool_cashflows(terms: LoanTerms, smm: SmmSchedule) -> PoolCashFlow:
    """Prepayment-adjusted cash flows for a pool amortizing like ``terms``."""
    if len(smm) != terms.n_months:
        raise DomainError(
            f"smm length {len(smm)} does not match loan months {terms.n_months}"
        )
    base = build_schedule(terms)
    rows: list[PoolCashFlowRow] = []
    q_prev = 1.0
    bal = terms.notional
    for base_row, s in zip(base.rows, smm.rates):
        total = base_row.payment * q_prev
        sched_principal = base_row.principal * q_prev
        interest = base_row.interest * q_prev
        unsched = s * (bal - sched_principal)
        bal = bal - sched_principal - unsched
        q_prev = q_prev * (1.0 - s)
        rows.append(
            PoolCashFlowRow(
                month_index=base_row.month_index,
                survival=q_prev,
                total_payment=total,
                scheduled_principal=sched_principal,
                interest=interest,
                unscheduled_principal=unsched,
                balance_after=bal,
            )
        )
    return PoolCashFlow(base_terms=terms, smm=smm, rows=tuple(rows))


def interest_savings(base: AmortizationSchedule, pool: PoolCashFlow, from_month: int = 1) -> float:
    """Signed sum of interest differences (pool minus base) from ``from_month``
    through maturity.

    Prepayment can only reduce interest, so the sum is <= 0, with equality when
    no prepayment occurs.
    """
    if pool.base_terms != base.terms:
        raise DomainError("schedule and pool must share loan terms")
    n = len(base.rows)
    if not 1 <= from_month <= n:
        raise DomainError(f"from_month must be in [1, {n}], got {from_month}")
    return float(
        sum(p.interest - b.interest for p, b in zip(pool.rows[from_month - 1 :], base.rows[from_month - 1 :]))
    )
