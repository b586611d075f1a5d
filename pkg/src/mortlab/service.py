"""Stateless JSON-over-HTTP facade over the analytics library.

POST endpoints mirror the library: /api/amortize, /api/refinance,
/api/rates/simulate, /api/zcb, /api/duration; /healthz answers 200.
Responses are pure functions of the request body (randomness is seeded), and
numbers are serialized at full precision; rounding belongs to clients.

Error contract: 400 with an ApiError body for request-validation failures,
422 for domain violations (e.g. an explosive kappa * delta), 413 when a
simulation request exceeds the configured paths x steps cap.

Configuration (environment): MORTLAB_MAX_PATH_CELLS (default 600000),
MORTLAB_CORS_ORIGINS (comma-separated, default "*"), MORTLAB_PORT.
"""

from __future__ import annotations

import argparse
import os

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .amortization import LoanTerms, build_schedule
from .errors import DomainError
from .mbs import PrepayFunction, effective_duration
from .refinance import RefinanceScenario, npv_series
from .vasicek import VasicekParams, simulate_paths, zcb_price

DEFAULT_MAX_PATH_CELLS = 600_000  # 1,000 paths x 600 steps
DEFAULT_SEED = 42


class ApiError(BaseModel):
    code: str
    message: str
    field: str | None = None


class LoanTermsIn(BaseModel):
    notional: float
    annual_rate: float
    term_years: int


class ScheduleRowOut(BaseModel):
    month_index: int
    payment: float
    interest: float
    principal: float
    balance_after: float
    interest_fraction: float
    principal_fraction: float


class AmortizeOut(BaseModel):
    terms: LoanTermsIn
    rows: list[ScheduleRowOut]


class RefinanceIn(BaseModel):
    old_terms: LoanTermsIn
    months_elapsed: int
    new_rate: float
    closing_costs: float
    new_term_years: int
    cost_handling: str = "rolled_into_loan"
    npv_mode: str = "undiscounted_paper"
    prepayment_penalty: float = 0.0
    rates_expected_to_fall: bool = False


class RefinanceOut(BaseModel):
    new_payment: float
    monthly_savings_series: list[float]
    npv_series: list[float]
    breakeven_month: int | None
    decision: str
    caveat_flags: list[str]


class SimulateIn(BaseModel):
    kappa: float
    r_bar: float
    sigma: float
    r0: float
    delta: float = 1.0 / 12.0
    n_steps: int
    n_paths: int
    seed: int = DEFAULT_SEED


class SimulateOut(BaseModel):
    delta: float
    seed: int
    paths: list[list[float]]


class ZcbIn(BaseModel):
    kappa: float
    r_bar: float
    sigma: float
    r: float
    maturity_years: float


class ZcbOut(BaseModel):
    maturity_years: float
    price: float
    alpha: float
    beta: float


class PrepayIn(BaseModel):
    base_smm: float = 0.002
    max_smm: float = 0.04
    sensitivity: float = 400.0


class DurationIn(BaseModel):
    terms: LoanTermsIn
    prepay: PrepayIn = PrepayIn()
    market_rate: float
    shock: float = 0.005


class DurationOut(BaseModel):
    price: float
    yield_value: float = Field(serialization_alias="yield")
    duration: float
    convexity: float


def _error_response(status: int, code: str, message: str, field: str | None = None) -> JSONResponse:
    body = ApiError(code=code, message=message, field=field).model_dump(exclude_none=True)
    return JSONResponse(status_code=status, content=body)


def create_app() -> FastAPI:
    app = FastAPI(title="mortlab", version=__version__)

    origins = os.environ.get("MORTLAB_CORS_ORIGINS", "*").split(",")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[o.strip() for o in origins],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    max_cells = int(os.environ.get("MORTLAB_MAX_PATH_CELLS", DEFAULT_MAX_PATH_CELLS))

    @app.exception_handler(RequestValidationError)
    async def _on_validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        first = exc.errors()[0] if exc.errors() else {}
        loc = [str(part) for part in first.get("loc", []) if part != "body"]
        return _error_response(
            400,
            code="validation_error",
            message=first.get("msg", "invalid request body"),
            field=".".join(loc) or None,
        )

    @app.exception_handler(DomainError)
    async def _on_domain_error(request: Request, exc: DomainError) -> JSONResponse:
        return _error_response(422, code="domain_violation", message=str(exc))

    @app.get("/healthz")
    def healthz() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/api/amortize", response_model=AmortizeOut)
    def amortize(body: LoanTermsIn) -> AmortizeOut:
        terms = LoanTerms(body.notional, body.annual_rate, body.term_years)
        schedule = build_schedule(terms)
        return AmortizeOut(
            terms=body,
            rows=[
                ScheduleRowOut(
                    month_index=r.month_index,
                    payment=r.payment,
                    interest=r.interest,
                    principal=r.principal,
                    balance_after=r.balance_after,
                    interest_fraction=r.interest_fraction,
                    principal_fraction=r.principal_fraction,
                )
                for r in schedule.rows
            ],
        )

    @app.post("/api/refinance", response_model=RefinanceOut)
    def refinance(body: RefinanceIn) -> RefinanceOut:
        scenario = RefinanceScenario(
            old_terms=LoanTerms(
                body.old_terms.notional, body.old_terms.annual_rate, body.old_terms.term_years
            ),
            months_elapsed=body.months_elapsed,
            new_rate=body.new_rate,
            closing_costs=body.closing_costs,
            new_term_years=body.new_term_years,
            cost_handling=body.cost_handling,
            npv_mode=body.npv_mode,
            prepayment_penalty=body.prepayment_penalty,
            rates_expected_to_fall=body.rates_expected_to_fall,
        )
        result = npv_series(scenario)
        return RefinanceOut(
            new_payment=result.new_payment,
            monthly_savings_series=list(result.monthly_savings_series),
            npv_series=list(result.npv_series),
            breakeven_month=result.breakeven_month,
            decision=result.decision,
            caveat_flags=sorted(result.caveat_flags),
        )

    @app.post("/api/rates/simulate", response_model=SimulateOut)
    def rates_simulate(body: SimulateIn) -> SimulateOut | JSONResponse:
        if body.n_paths * body.n_steps > max_cells:
            return _error_response(
                413,
                code="path_cap_exceeded",
                message=(
                    f"n_paths * n_steps = {body.n_paths * body.n_steps} exceeds the cap of {max_cells}"
                ),
            )
        params = VasicekParams(kappa=body.kappa, r_bar=body.r_bar, sigma=body.sigma)
        paths = simulate_paths(
            params, r0=body.r0, delta=body.delta, n_steps=body.n_steps, n_paths=body.n_paths, seed=body.seed
        )
        return SimulateOut(
            delta=body.delta,
            seed=body.seed,
            paths=[[float(r) for r in path.rates] for path in paths],
        )

    @app.post("/api/zcb", response_model=ZcbOut)
    def zcb(body: ZcbIn) -> ZcbOut:
        params = VasicekParams(kappa=body.kappa, r_bar=body.r_bar, sigma=body.sigma)
        quote = zcb_price(params, body.r, body.maturity_years)
        return ZcbOut(
            maturity_years=quote.maturity_years,
            price=quote.price,
            alpha=quote.alpha,
            beta=quote.beta,
        )

    @app.post("/api/duration", response_model=DurationOut)
    def duration_endpoint(body: DurationIn) -> DurationOut:
        terms = LoanTerms(body.terms.notional, body.terms.annual_rate, body.terms.term_years)
        prepay = PrepayFunction(
            base_smm=body.prepay.base_smm,
            max_smm=body.prepay.max_smm,
            sensitivity=body.prepay.sensitivity,
        )
        report = effective_duration(terms, prepay, body.market_rate, body.shock)
        return DurationOut(
            price=report.price,
            yield_value=report.yield_value,
            duration=report.duration,
            convexity=report.convexity,
        )

    return app


app = create_app()


def main(argv: list[str] | None = None) -> int:
    import uvicorn

    parser = argparse.ArgumentParser(prog="mortlab-service", description="Serve the analytics API.")
    parser.add_argument(
        "--port", type=int, default=int(os.environ.get("MORTLAB_PORT", "8000")), help="listen port"
    )
    parser.add_argument("--host", default="127.0.0.1", help="bind address")
    args = parser.parse_args(argv)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    main()
