"""Mortgage and short-rate analytics: amortization, prepayment-adjusted cash
flows, refinance breakeven, Vasicek simulation and bond pricing, and
duration/convexity measures for prepayable pools."""

from .amortization import (
    AmortizationSchedule,
    LoanTerms,
    ScheduleRow,
    balance_at,
    build_schedule,
    effective_annual_rate,
    monthly_payment,
    payment_over_months,
)
from .errors import DomainError
from .mbs import (
    DurationReport,
    PrepayFunction,
    SwapSpreadState,
    duration,
    effective_duration,
    static_duration,
    swap_spread_response,
)
from .prepayment import (
    PoolCashFlow,
    PoolCashFlowRow,
    SmmSchedule,
    interest_savings,
    pool_cashflows,
    survival_factors,
)
from .refinance import (
    BreakevenResult,
    PaymentPathComparison,
    RefinanceScenario,
    breakeven_months,
    new_monthly_payment,
    npv_series,
    payment_path_comparison,
)
from .vasicek import (
    McZcbPrice,
    RatePath,
    VasicekParams,
    ZcbQuote,
    mc_zcb_price,
    simulate_paths,
    step,
    write_paths_csv,
    yield_from_price,
    zcb_price,
)

__version__ = "0.1.0"

__all__ = [
    "AmortizationSchedule",
    "BreakevenResult",
    "DomainError",
    "DurationReport",
    "LoanTerms",
    "McZcbPrice",
    "PaymentPathComparison",
    "PoolCashFlow",
    "PoolCashFlowRow",
    "PrepayFunction",
    "RatePath",
    "RefinanceScenario",
    "ScheduleRow",
    "SmmSchedule",
    "SwapSpreadState",
    "VasicekParams",
    "ZcbQuote",
    "balance_at",
    "breakeven_months",
    "build_schedule",
    "duration",
    "effective_annual_rate",
    "effective_duration",
    "interest_savings",
    "mc_zcb_price",
    "monthly_payment",
    "new_monthly_payment",
    "npv_series",
    "payment_over_months",
    "payment_path_comparison",
    "pool_cashflows",
    "simulate_paths",
    "static_duration",
    "step",
    "survival_factors",
    "swap_spread_response",
    "write_paths_csv",
    "yield_from_price",
    "zcb_price",
]
