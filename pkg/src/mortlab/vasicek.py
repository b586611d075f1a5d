"""Vasicek short-rate model: path simulation, closed-form ZCB price, MC oracle.

The short rate follows the mean-reverting diffusion

    dr_t = kappa * (r_bar - r_t) dt + sigma dW_t

discretized with the explicit Euler step

    r_{t+1} = kappa * r_bar * delta + (1 - kappa * delta) * r_t
              + sigma * sqrt(delta) * eps_{t+1},      eps ~ N(0, 1).

A T-year zero-coupon bond quotes at P = exp(alpha + r * beta) with

    beta  = (exp(-kappa T) - 1) / kappa
    alpha = r_bar * (-beta - T)
            + sigma^2 / (2 kappa^2) * [ (1 - exp(-2 kappa T)) / (2 kappa)
                                        + 2 * beta + T ]

For kappa*T below a small threshold both expressions lose all accuracy to
cancellation, so they switch to Taylor series in x = kappa*T; the kappa -> 0
limit is P = exp(-r T + sigma^2 T^3 / 6).  Negative rates are a documented
property of the model and are not floored.

Randomness contract: shocks come from a counter-based Philox generator keyed
by the seed, one uniform per shock mapped through the normal inverse CDF.
Path i consumes the i-th contiguous block of the counter stream, so any given
path is bit-identical regardless of how many paths are requested or how the
work is partitioned across workers.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .errors import DomainError

# Below this value of kappa*T the closed-form alpha/beta are evaluated by
# Taylor series; above it the direct expressions are accurate.
SERIES_THRESHOLD = 1e-2


@dataclass(frozen=True)
class VasicekParams:
    """Mean-reversion speed (per year), long-run mean rate, volatility (per
    sqrt-year)."""

    kappa: float
    r_bar: float
    sigma: float

    def __post_init__(self) -> None:
        if self.kappa < 0:
            raise DomainError(f"kappa must be non-negative, got {self.kappa}")
        if self.sigma < 0:
            raise DomainError(f"sigma must be non-negative, got {self.sigma}")


@dataclass(frozen=True, eq=False)
class RatePath:
    """One simulated short-rate path; rates[0] is the initial rate."""

    delta: float
    rates: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta}")
        if len(self.rates) < 1:
            raise DomainError("rates must contain at least the initial rate")


@dataclass(frozen=True)
class ZcbQuote:
    """Zero-coupon bond quote: price = exp(alpha + r * beta) for the short
    rate it was built from."""

    maturity_years: float
    price: float
    alpha: float
    beta: float


@dataclass(frozen=True)
class McZcbPrice:
    """Monte Carlo price estimate with its standard error."""

    price: float
    std_error: float
    n_paths: int


def _check_step_stability(params: VasicekParams, delta: float) -> None:
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if params.kappa * delta > 1.0:
        raise DomainError(
            f"kappa * delta = {params.kappa * delta} > 1: explosive discretization; "
            "use a smaller time step"
        )


def step(params: VasicekParams, r_t: float, delta: float, epsilon: float) -> float:
    """One Euler step of the short rate given a standard-normal draw."""
    _check_step_stability(params, delta)
    return (
        params.kappa * params.r_bar * delta
        + (1.0 - params.kappa * delta) * r_t
        + params.sigma * math.sqrt(delta) * epsilon
    )


def _shock_matrix(seed: int, n_paths: int, n_steps: int) -> np.ndarray:
    """Standard-normal shocks, shape (n_paths, n_steps); row i is path i's
    substream."""
    gen = np.random.Generator(np.random.Philox(key=seed))
    raw = gen.integers(0, 2**64, size=(n_paths, n_steps), dtype=np.uint64)
    # (raw + 0.5) * 2^-64 lies strictly inside (0, 1), so ndtri stays finite
    uniforms = (raw.astype(np.float64) + 0.5) * 2.0**-64
    return ndtri(uniforms)


def _rate_matrix(
    params: VasicekParams, r0: float, delta: float, n_steps: int, n_paths: int, seed: int
) -> np.ndarray:
    """Simulated rates, shape (n_paths, n_steps + 1); column 0 is r0."""
    _check_step_stability(params, delta)
    if n_steps < 1:
        raise DomainError(f"n_steps must be >= 1, got {n_steps}")
    if n_paths < 1:
        raise DomainError(f"n_paths must be >= 1, got {n_paths}")
    shocks = _shock_matrix(seed, n_paths, n_steps)
    rates = np.empty((n_paths, n_steps + 1))
    rates[:, 0] = r0
    drift = params.kappa * params.r_bar * delta
    decay = 1.0 - params.kappa * delta
    vol = params.sigma * math.sqrt(delta)
    for t in range(n_steps):
        rates[:, t + 1] = drift + decay * rates[:, t] + vol * shocks[:, t]
    return rates


def simulate_paths(
    params: VasicekParams,
    r0: float,
    delta: float,
    n_steps: int,
    n_paths: int,
    seed: int,
) -> list[RatePath]:
    """Simulate ``n_paths`` short-rate paths of ``n_steps`` Euler steps.

    Deterministic for a fixed (seed, n_paths, n_steps); the first k paths of a
    larger request coincide bit-for-bit with a request for k paths.
    """
    rates = _rate_matrix(params, r0, delta, n_steps, n_paths, seed)
    return [RatePath(delta=delta, rates=rates[i], seed=seed) for i in range(n_paths)]


def _alpha_beta_closed(params: VasicekParams, maturity: float) -> tuple[float, float]:
    kappa, r_bar, sigma = params.kappa, params.r_bar, params.sigma
    beta = math.expm1(-kappa * maturity) / kappa
    bracket = -math.expm1(-2.0 * kappa * maturity) / (2.0 * kappa) + 2.0 * beta + maturity
    alpha = r_bar * (-beta - maturity) + sigma**2 / (2.0 * kappa**2) * bracket
    return alpha, beta


def _alpha_beta_series(params: VasicekParams, maturity: float) -> tuple[float, float]:
    # Taylor series in x = kappa * T; coefficients through x^6 leave
    # truncation error far below double precision at x = SERIES_THRESHOLD.
    T = maturity
    x = params.kappa * T
    beta = -T * (
        1.0 - x / 2.0 + x**2 / 6.0 - x**3 / 24.0 + x**4 / 120.0 - x**5 / 720.0 + x**6 / 5040.0
    )
    mean_part = (
        params.r_bar
        * T
        * (-x / 2.0 + x**2 / 6.0 - x**3 / 24.0 + x**4 / 120.0 - x**5 / 720.0 + x**6 / 5040.0)
    )
    vol_part = (
        params.sigma**2
        * T**3
        * (
            1.0 / 6.0
            - x / 8.0
            + 7.0 * x**2 / 120.0
            - x**3 / 48.0
            + 31.0 * x**4 / 5040.0
            - x**5 / 640.0
            + 127.0 * x**6 / 362880.0
        )
    )
    return mean_part + vol_part, beta


def _alpha_beta(params: VasicekParams, maturity: float) -> tuple[float, float]:
    if params.kappa * maturity < SERIES_THRESHOLD:
        return _alpha_beta_series(params, maturity)
    return _alpha_beta_closed(params, maturity)


def zcb_price(params: VasicekParams, r: float, maturity_years: float) -> ZcbQuote:
    """Closed-form zero-coupon bond price for short rate ``r``."""
    if maturity_years < 0:
        raise DomainError(f"maturity_years must be non-negative, got {maturity_years}")
    if maturity_years == 0:
        return ZcbQuote(maturity_years=0.0, price=1.0, alpha=0.0, beta=0.0)
    alpha, beta = _alpha_beta(params, maturity_years)
    return ZcbQuote(
        maturity_years=maturity_years,
        price=math.exp(alpha + r * beta),
        alpha=alpha,
        beta=beta,
    )


def mc_zcb_price(
    params: VasicekParams,
    r0: float,
    maturity_years: float,
    n_paths: int,
    seed: int,
    delta: float = 1.0 / 12.0,
) -> McZcbPrice:
    """Monte Carlo ZCB price: mean of exp(-sum_t r_t * delta) over simulated
    paths (left-endpoint sum), with the sample standard error.

    Oracle companion to :func:`zcb_price`; the two agree within Monte Carlo
    noise plus the O(delta) discretization bias of the Euler step.
    """
    if n_paths < 100:
        raise DomainError(f"n_paths must be >= 100 for a meaningful standard error, got {n_paths}")
    n_steps = round(maturity_years / delta)
    if n_steps < 1 or abs(n_steps * delta - maturity_years) > 1e-9 * max(1.0, maturity_years):
        raise DomainError(
            f"maturity_years = {maturity_years} is not a whole number of steps of delta = {delta}"
        )
    rates = _rate_matrix(params, r0, delta, n_steps, n_paths, seed)
    discounts = np.exp(-np.sum(rates[:, :-1], axis=1) * delta)
    price = float(np.mean(discounts))
    std_error = float(np.std(discounts, ddof=1) / math.sqrt(n_paths))
    return McZcbPrice(price=price, std_error=std_error, n_paths=n_paths)


def yield_from_price(price: float, maturity_years: float) -> float:
    """Continuously compounded yield: y = -ln(P) / T."""
    if not price > 0:
        raise DomainError(f"price must be positive, got {price}")
    if not maturity_years > 0:
        raise DomainError(f"maturity_years must be positive, got {maturity_years}")
    return -math.log(price) / maturity_years


def write_paths_csv(paths: list[RatePath], out: io.TextIOBase | str) -> None:
    """Write paths in long form with header ``path_id,step,rate``."""
    own = isinstance(out, str)
    handle = open(out, "w", newline="") if own else out
    try:
        handle.write("path_id,step,rate\n")
        for pid, path in enumerate(paths):
            for k, rate in enumerate(path.rates):
                handle.write(f"{pid},{k},{float(rate)!r}\n")
    finally:
        if own:
            handle.close()
