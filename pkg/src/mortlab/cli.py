"""Command-line front end: every analysis writes a CSV data file.

Subcommands: amortize, refinance, compare-payments, simulate-rates,
price-zcb, duration, swap-spread.  Each reads a JSON scenario document
(``--scenario``), writes its CSV to ``--out`` (default:
``$MORTLAB_OUT_DIR/<command>.csv``), and prints a short summary.  CSV values
carry full float precision; currency in the printed summaries is rounded to
cents.  Plots are left to external tooling.

Exit codes: 0 on success, 2 for input problems (unreadable scenario, bad
JSON, missing or ill-typed fields, unwritable output), 3 for domain
violations raised by the analytics (negative rates, explosive time steps...).

Defaults shared across subcommands: lambda_cost_multiplier 1.0, delta 1/12,
yield bump 1e-4, seed 42.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Callable, Sequence

from . import __version__
from .amortization import LoanTerms, build_schedule, effective_annual_rate, monthly_payment
from .errors import DomainError
from .mbs import PrepayFunction, SwapSpreadState, effective_duration, static_duration, swap_spread_response
from .refinance import RefinanceScenario, npv_series, payment_path_comparison
from .vasicek import VasicekParams, simulate_paths, write_paths_csv, zcb_price

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COMPUTE = 3

DEFAULT_SEED = 42
DEFAULT_DELTA = 1.0 / 12.0
DEFAULT_LAMBDA = 1.0
DEFAULT_BUMP = 1e-4

OUT_DIR_ENV = "MORTLAB_OUT_DIR"


class ScenarioError(Exception):
    """Scenario document is missing, malformed, or ill-typed."""


def _fmt(value: float) -> str:
    """Full-precision, round-trippable float formatting for CSV cells."""
    return repr(float(value))


def _load_scenario(path: str) -> dict[str, Any]:
    try:
        with open(path) as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError(f"scenario file {path!r} must hold a JSON object")
    return doc


def _get(doc: dict[str, Any], key: str, kind: type, default: Any = ...) -> Any:
    if key not in doc:
        if default is ...:
            raise ScenarioError(f"scenario is missing required field {key!r}")
        return default
    value = doc[key]
    if kind is float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if kind is int and isinstance(value, int) and not isinstance(value, bool):
        return value
    if kind in (str, bool, list, dict) and isinstance(value, kind):
        return value
    raise ScenarioError(f"scenario field {key!r} must be of type {kind.__name__}")


def _loan_terms(doc: dict[str, Any], key: str = "terms") -> LoanTerms:
    sub = _get(doc, key, dict)
    return LoanTerms(
        notional=_get(sub, "notional", float),
        annual_rate=_get(sub, "annual_rate", float),
        term_years=_get(sub, "term_years", int),
    )


def _resolve_out(args: argparse.Namespace, command: str) -> str:
    if args.out:
        return args.out
    return os.path.join(os.environ.get(OUT_DIR_ENV, "."), f"{command}.csv")


def _write_csv(path: str, header: str, rows: list[str]) -> None:
    try:
        with open(path, "w", newline="") as handle:
            handle.write(header + "\n")
            for row in rows:
                handle.write(row + "\n")
    except OSError as exc:
        raise ScenarioError(f"cannot write output file {path!r}: {exc}") from exc


def _cmd_amortize(doc: dict[str, Any], args: argparse.Namespace) -> None:
    terms = _loan_terms(doc)
    schedule = build_schedule(terms)
    rows = [
        ",".join(
            (
                str(r.month_index),
                _fmt(r.payment),
                _fmt(r.interest),
                _fmt(r.principal),
                _fmt(r.interest_fraction),
                _fmt(r.principal_fraction),
                _fmt(r.balance_after),
            )
        )
        for r in schedule.rows
    ]
    out = _resolve_out(args, "amortize")
    _write_csv(out, "month,payment,interest,principal,interest_fraction,principal_fraction,balance", rows)
    print(
        f"amortize: {terms.term_years}y at {terms.annual_rate:.4%}, payment {monthly_payment(terms):.2f}, "
        f"effective annual rate {effective_annual_rate(terms.annual_rate):.4%} -> {out}"
    )


def _cmd_refinance(doc: dict[str, Any], args: argparse.Namespace) -> None:
    scenario = RefinanceScenario(
        old_terms=_loan_terms(doc, "old_terms"),
        months_elapsed=_get(doc, "months_elapsed", int),
        new_rate=_get(doc, "new_rate", float),
        closing_costs=_get(doc, "closing_costs", float),
        new_term_years=_get(doc, "new_term_years", int),
        cost_handling=_get(doc, "cost_handling", str, "rolled_into_loan"),
        npv_mode=_get(doc, "npv_mode", str, "undiscounted_paper"),
        prepayment_penalty=_get(doc, "prepayment_penalty", float, 0.0),
        rates_expected_to_fall=_get(doc, "rates_expected_to_fall", bool, False),
    )
    result = npv_series(scenario)
    cumulative = 0.0
    rows = [f"0,{_fmt(0.0)},{_fmt(result.npv_series[0])}"]
    for m, saving in enumerate(result.monthly_savings_series, start=1):
        cumulative += saving
        rows.append(f"{m},{_fmt(cumulative)},{_fmt(result.npv_series[m])}")
    out = _resolve_out(args, "refinance")
    _write_csv(out, "month,cumulative_savings,npv", rows)
    breakeven = "never" if result.breakeven_month is None else str(result.breakeven_month)
    flags = ",".join(sorted(result.caveat_flags)) or "none"
    print(
        f"refinance: new payment {result.new_payment:.2f}, breakeven month {breakeven}, "
        f"decision {result.decision}, caveats {flags} -> {out}"
    )


def _cmd_compare_payments(doc: dict[str, Any], args: argparse.Namespace) -> None:
    terms = _loan_terms(doc)
    new_rate = _get(doc, "new_rate", float)
    lam = _get(doc, "lambda_cost_multiplier", float, DEFAULT_LAMBDA)
    comparison = payment_path_comparison(terms, new_rate, lam)
    rows = [
        f"{int(m)},{_fmt(o)},{_fmt(n)},{_fmt(o - n)}"
        for m, o, n in zip(comparison.months, comparison.old_payments, comparison.new_payments)
    ]
    out = _resolve_out(args, "compare-payments")
    _write_csv(out, "month,old_payment,new_payment,payment_gap", rows)
    gap0 = comparison.payment_gap[0]
    print(
        f"compare-payments: lambda {lam}, initial gap {gap0:.2f}/month over {terms.term_years}y -> {out}"
    )


def _cmd_simulate_rates(doc: dict[str, Any], args: argparse.Namespace) -> None:
    params = VasicekParams(
        kappa=_get(doc, "kappa", float),
        r_bar=_get(doc, "r_bar", float),
        sigma=_get(doc, "sigma", float),
    )
    seed = args.seed if args.seed is not None else _get(doc, "seed", int, DEFAULT_SEED)
    paths = simulate_paths(
        params,
        r0=_get(doc, "r0", float),
        delta=_get(doc, "delta", float, DEFAULT_DELTA),
        n_steps=_get(doc, "n_steps", int),
        n_paths=_get(doc, "n_paths", int),
        seed=seed,
    )
    out = _resolve_out(args, "simulate-rates")
    try:
        write_paths_csv(paths, out)
    except OSError as exc:
        raise ScenarioError(f"cannot write output file {out!r}: {exc}") from exc
    terminal = sum(float(p.rates[-1]) for p in paths) / len(paths)
    print(
        f"simulate-rates: {len(paths)} paths x {len(paths[0].rates) - 1} steps, seed {seed}, "
        f"terminal mean rate {terminal:.4%} -> {out}"
    )


def _cmd_price_zcb(doc: dict[str, Any], args: argparse.Namespace) -> None:
    if "kappas" in doc:
        kappas = [float(k) for k in _get(doc, "kappas", list)]
    else:
        kappas = [_get(doc, "kappa", float)]
    r_bar = _get(doc, "r_bar", float)
    sigma = _get(doc, "sigma", float)
    r = _get(doc, "r", float)
    maturities = [float(t) for t in _get(doc, "maturities", list)]
    rows = []
    for kappa in kappas:
        params = VasicekParams(kappa=kappa, r_bar=r_bar, sigma=sigma)
        for maturity in maturities:
            quote = zcb_price(params, r, maturity)
            rows.append(
                f"{_fmt(kappa)},{_fmt(maturity)},{_fmt(quote.price)},{_fmt(quote.alpha)},{_fmt(quote.beta)}"
            )
    out = _resolve_out(args, "price-zcb")
    _write_csv(out, "kappa,maturity_years,price,alpha,beta", rows)
    print(f"price-zcb: {len(rows)} quotes at r {r:.4%} -> {out}")


def _cmd_duration(doc: dict[str, Any], args: argparse.Namespace) -> None:
    terms = _loan_terms(doc)
    prepay_doc = _get(doc, "prepay", dict, {})
    prepay = PrepayFunction(
        base_smm=_get(prepay_doc, "base_smm", float, 0.002),
        max_smm=_get(prepay_doc, "max_smm", float, 0.04),
        sensitivity=_get(prepay_doc, "sensitivity", float, 400.0),
    )
    market_rate = _get(doc, "market_rate", float)
    shocks = [float(s) for s in _get(doc, "shocks", list)]
    rows = []
    for shock in shocks:
        if shock == 0:
            report = static_duration(terms, prepay, market_rate, bump=DEFAULT_BUMP)
        else:
            report = effective_duration(terms, prepay, market_rate, shock)
        rows.append(f"{_fmt(shock)},{_fmt(report.price)},{_fmt(report.duration)},{_fmt(report.convexity)}")
    out = _resolve_out(args, "duration")
    _write_csv(out, "shock,price,duration,convexity", rows)
    print(f"duration: {len(rows)} reports at market rate {market_rate:.4%} -> {out}")


def _cmd_swap_spread(doc: dict[str, Any], args: argparse.Namespace) -> None:
    state = SwapSpreadState(
        swap_rate=_get(doc, "swap_rate", float),
        treasury_yield=_get(doc, "treasury_yield", float),
    )
    changes = [float(c) for c in _get(doc, "changes", list)]
    regime = _get(doc, "duration_regime", int, 1)
    treasury_coeff = _get(doc, "treasury_coeff", float, 1.0)
    swap_coeff = _get(doc, "swap_hedge_coeff", float, 1.0)
    rows = []
    for change in changes:
        moved = swap_spread_response(
            state,
            change,
            duration_regime=regime,
            treasury_coeff=treasury_coeff,
            swap_hedge_coeff=swap_coeff,
        )
        rows.append(f"{_fmt(change)},{_fmt(moved.swap_rate)},{_fmt(moved.treasury_yield)},{_fmt(moved.spread)}")
    out = _resolve_out(args, "swap-spread")
    _write_csv(out, "short_rate_change,swap_rate,treasury_yield,spread", rows)
    print(f"swap-spread: {len(rows)} toy responses from spread {state.spread:.4%} -> {out}")


_COMMANDS: dict[str, Callable[[dict[str, Any], argparse.Namespace], None]] = {
    "amortize": _cmd_amortize,
    "refinance": _cmd_refinance,
    "compare-payments": _cmd_compare_payments,
    "simulate-rates": _cmd_simulate_rates,
    "price-zcb": _cmd_price_zcb,
    "duration": _cmd_duration,
    "swap-spread": _cmd_swap_spread,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mortlab",
        description="Mortgage and short-rate analytics; each subcommand writes a CSV data file.",
    )
    parser.add_argument("--version", action="version", version=f"mortlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        cmd = sub.add_parser(name, help=f"run the {name} analysis")
        cmd.add_argument("--scenario", required=True, help="JSON scenario document")
        cmd.add_argument("--out", help=f"output CSV path (default ${OUT_DIR_ENV}/{name}.csv)")
        cmd.add_argument("--seed", type=int, help="override the scenario RNG seed")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        doc = _load_scenario(args.scenario)
        _COMMANDS[args.command](doc, args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
