"""Duration, prepayment-aware effective duration, and a toy swap-spread model.

Duration here is the yield sensitivity

    D = -(dP/dY) * (1 + y) / P

with the derivative taken by central finite difference; for a single cash flow
at T years this equals T (the Macaulay duration of a zero).  Convexity is the
second central difference (1/P) d^2P/dy^2.

Effective duration reprices a mortgage pool under shocked market rates while
regenerating the prepayment rate from a rate-incentive S-curve each time.
Because falling rates accelerate prepayment and pull cash flows forward, the
effective duration of the pool is shorter than the duration of its frozen
cash flows: the negative-convexity signature of prepayable collateral.

The swap-spread model is sign-level only, a deliberately toy mechanism: a
short-rate increase pushes the treasury yield up and (in the prepayment
hedging regime) pushes the swap rate down as hedgers pay fixed, so the spread
shrinks; a decrease does the opposite.  Magnitudes are two configurable
linear coefficients with no market content.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .amortization import LoanTerms, amortize_months
from .errors import DomainError

# Default absolute yield bump for finite-difference sensitivities.
DEFAULT_YIELD_BUMP = 1e-4


@dataclass(frozen=True)
class PrepayFunction:
    """Bounded S-curve from rate incentive to monthly prepayment rate.

    rate(incentive) = base_smm + (max_smm - base_smm) / (1 + exp(-sensitivity * incentive))

    where incentive = contract_rate - market_rate.  Output lives in
    [base_smm, max_smm] and is non-decreasing in the incentive.  Defaults are
    a mild 0.2%/month base ramping to 4%/month, midpoint at zero incentive.
    """

    base_smm: float = 0.002
    max_smm: float = 0.04
    sensitivity: float = 400.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.base_smm <= self.max_smm <= 1.0:
            raise DomainError(
                f"need 0 <= base_smm <= max_smm <= 1, got base={self.base_smm}, max={self.max_smm}"
            )
        if self.sensitivity < 0:
            raise DomainError(f"sensitivity must be non-negative, got {self.sensitivity}")

    def rate(self, incentive: float) -> float:
        z = self.sensitivity * incentive
        # overflow-safe logistic: exp only ever sees non-positive arguments
        if z >= 0:
            logistic = 1.0 / (1.0 + math.exp(-z))
        else:
            ez = math.exp(z)
            logistic = ez / (1.0 + ez)
        smm = self.base_smm + (self.max_smm - self.base_smm) * logistic
        return min(max(smm, 0.0), self.max_smm)


@dataclass(frozen=True)
class DurationReport:
    """Price, the yield it was measured at, duration (years), and convexity
    (per year^2)."""

    price: float
    yield_value: float
    duration: float
    convexity: float


@dataclass(frozen=True)
class SwapSpreadState:
    swap_rate: float
    treasury_yield: float

    @property
    def spread(self) -> float:
        return self.swap_rate - self.treasury_yield


def _pv(times: np.ndarray, amounts: np.ndarray, y: float) -> float:
    return float(np.sum(amounts * (1.0 + y) ** (-times)))


def duration(
    times: Sequence[float],
    amounts: Sequence[float],
    y: float,
    bump: float = DEFAULT_YIELD_BUMP,
) -> DurationReport:
    """Finite-difference duration and convexity of dated cash flows.

    ``times`` are in years, ``amounts`` in currency.  Requires at least one
    positive cash flow and y > -1.
    """
    t = np.asarray(times, dtype=float)
    c = np.asarray(amounts, dtype=float)
    if t.size == 0 or c.size == 0:
        raise DomainError("cash flows must be non-empty")
    if t.shape != c.shape:
        raise DomainError(f"times and amounts must align, got {t.shape} vs {c.shape}")
    if not np.any(c > 0):
        raise DomainError("need at least one positive cash flow")
    if not y > -1.0:
        raise DomainError(f"yield must exceed -1, got {y}")
    if not bump > 0:
        raise DomainError(f"bump must be positive, got {bump}")
    p0 = _pv(t, c, y)
    p_up = _pv(t, c, y + bump)
    p_dn = _pv(t, c, y - bump)
    dpdy = (p_up - p_dn) / (2.0 * bump)
    d2pdy2 = (p_up - 2.0 * p0 + p_dn) / bump**2
    return DurationReport(
        price=p0,
        yield_value=y,
        duration=-dpdy * (1.0 + y) / p0,
        convexity=d2pdy2 / p0,
    )


def _pool_cash_months(
    notional: float, contract_rate: float, n_months: int, smm: float
) -> tuple[np.ndarray, np.ndarray]:
    """(times in years, investor cash) for a pool with a constant monthly
    prepayment rate."""
    base = amortize_months(notional, contract_rate, n_months)
    cash = np.empty(n_months)
    q_prev = 1.0
    bal = notional
    for idx, row in enumerate(base):
        total = row.payment * q_prev
        sched = row.principal * q_prev
        unsched = smm * (bal - sched)
        bal = bal - sched - unsched
        q_prev *= 1.0 - smm
        cash[idx] = total + unsched
    times = np.arange(1, n_months + 1) / 12.0
    return times, cash


def pool_price(
    notional: float,
    contract_rate: float,
    n_months: int,
    prepay: PrepayFunction,
    market_rate: float,
) -> float:
    """Present value of pool cash flows at ``market_rate`` (flat, annual
    compounding), with the prepayment rate set by the rate incentive."""
    if not market_rate > -1.0:
        raise DomainError(f"market_rate must exceed -1, got {market_rate}")
    smm = prepay.rate(contract_rate - market_rate)
    times, cash = _pool_cash_months(notional, contract_rate, n_months, smm)
    return _pv(times, cash, market_rate)


def static_duration_months(
    notional: float,
    contract_rate: float,
    n_months: int,
    prepay: PrepayFunction,
    market_rate: float,
    bump: float = DEFAULT_YIELD_BUMP,
) -> DurationReport:
    """Duration of the pool with prepayment frozen at the current market
    rate's level (cash flows do not respond to the shock)."""
    smm = prepay.rate(contract_rate - market_rate)
    times, cash = _pool_cash_months(notional, contract_rate, n_months, smm)
    return duration(times, cash, market_rate, bump=bump)


def effective_duration_months(
    notional: float,
    contract_rate: float,
    n_months: int,
    prepay: PrepayFunction,
    market_rate: float,
    shock: float,
    side: str = "central",
) -> DurationReport:
    """Pool duration with prepayment regenerated under each shocked rate.

    ``side``: "central" uses (P(m-h) - P(m+h)) / 2h; "down" and "up" use the
    corresponding one-sided difference against the base price.  Reported
    convexity always comes from the three-point second difference.
    """
    if not shock > 0:
        raise DomainError(f"shock must be positive, got {shock}")
    if market_rate - shock <= -1.0:
        raise DomainError(f"down-shocked rate {market_rate - shock} would not exceed -100%")
    if side not in ("central", "down", "up"):
        raise DomainError(f"side must be central, down, or up, got {side!r}")

    def price_at(m: float) -> float:
        return pool_price(notional, contract_rate, n_months, prepay, m)

    p0 = price_at(market_rate)
    p_dn = price_at(market_rate - shock)
    p_up = price_at(market_rate + shock)
    if side == "central":
        dpdy = (p_up - p_dn) / (2.0 * shock)
    elif side == "down":
        dpdy = (p0 - p_dn) / shock
    else:
        dpdy = (p_up - p0) / shock
    return DurationReport(
        price=p0,
        yield_value=market_rate,
        duration=-dpdy * (1.0 + market_rate) / p0,
        convexity=(p_up - 2.0 * p0 + p_dn) / shock**2 / p0,
    )


def static_duration(
    terms: LoanTerms,
    prepay: PrepayFunction,
    market_rate: float,
    bump: float = DEFAULT_YIELD_BUMP,
) -> DurationReport:
    return static_duration_months(
        terms.notional, terms.annual_rate, terms.n_months, prepay, market_rate, bump=bump
    )


def effective_duration(
    terms: LoanTerms,
    prepay: PrepayFunction,
    market_rate: float,
    shock: float,
    side: str = "central",
) -> DurationReport:
    """Effective duration of a pool described by loan terms; see
    :func:`effective_duration_months`."""
    return effective_duration_months(
        terms.notional, terms.annual_rate, terms.n_months, prepay, market_rate, shock, side=side
    )


def swap_spread_response(
    state: SwapSpreadState,
    short_rate_change: float,
    duration_regime: int = 1,
    treasury_coeff: float = 1.0,
    swap_hedge_coeff: float = 1.0,
) -> SwapSpreadState:
    """Toy sign-level swap-spread move after a short-rate change.

    The treasury yield moves with the short rate (treasury_coeff).  When
    ``duration_regime`` is positive (the prepayment-hedging regime), hedging
    flow moves the swap rate against the short rate (swap_hedge_coeff), so the
    spread change is -(treasury_coeff + swap_hedge_coeff) * short_rate_change;
    otherwise only the treasury leg moves.  Either way the spread moves
    opposite to the short rate when the coefficients are positive.
    """
    if treasury_coeff < 0 or swap_hedge_coeff < 0:
        raise DomainError("coefficients must be non-negative")
    new_treasury = state.treasury_yield + treasury_coeff * short_rate_change
    new_swap = state.swap_rate
    if duration_regime > 0:
        new_swap -= swap_hedge_coeff * short_rate_change
    return SwapSpreadState(swap_rate=new_swap, treasury_yield=new_treasury)
