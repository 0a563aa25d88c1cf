"""Command-line front end.

Subcommands:

* ``eval``     - single evaluation of one of the four special functions
* ``bounds``   - two-sided bounds for one function query
* ``table``    - reproduce one of the five golden accuracy tables
* ``sweep``    - parameter sweeps to CSV (function routes or outage curves)
* ``outage``   - outage probability for a generalized fading model
* ``capacity`` - TIFR capacity and optimal cutoff for Rician channels
* ``verify``   - the full seeded property-verification suite

Exit codes: 0 success, 1 numeric/verification failure, 2 usage error.
All dB-to-linear conversion happens here (``--gamma-bar-db``); the library
itself works in linear SNR throughout.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

from .capacity import (
    MisoSimoChannel,
    RicianChannel,
    TifrResult,
    em_tifr_miso_simo,
    load_mimo_coeffs,
    mimo_em_ti,
    optimal_cutoff_mimo,
    optimal_cutoff_miso,
    optimal_cutoff_rician,
    tifr_capacity_rician,
)
from .errors import CommSpecialError
from .fading import (
    AlphaEtaMu,
    AlphaKappaMu,
    AlphaLambdaMu,
    EtaMu,
    KappaMu,
    LambdaMu,
    OutageQuery,
    Rician,
    outage,
    outage_humbert,
)
from .ilhi import ilhi_bounds, ilhi_eval
from .nuttall import nuttall_eval, nuttall_upper
from .quadrature import oracle
from .rice_ie import rice_ie_bounds, rice_ie_eval
from .tables import TABLE_IDS, table_report
from .toronto import toronto_bounds, toronto_eval
from .types import IlhiQuery, Interval, NuttallQuery, RiceIeQuery, TorontoQuery
from .verify import run_verification

__all__ = ["main"]

_MAX_SWEEP_POINTS = 1_000_000

_FUNCTIONS = ("nuttall", "toronto", "rice-ie", "ilhi")

_QUERY_FLAGS = {
    "nuttall": ("m", "n", "a", "b"),
    "toronto": ("m", "n", "r", "B"),
    "rice-ie": ("k", "x"),
    "ilhi": ("m", "n", "a", "x"),
}

_METHOD_CHOICES = {
    "nuttall": ("series", "kdf", "poly", "halfint", "oracle"),
    "toronto": ("series", "kdf", "poly", "halfint", "odd", "via_nuttall", "oracle"),
    "rice-ie": ("series", "humbert", "poly", "oracle"),
    "ilhi": ("series", "poly", "halfint", "mn_integer", "neg_n", "zero", "oracle"),
}


def _fmt(x: float) -> str:
    """Shortest round-trip decimal form: deterministic and lossless."""
    return repr(float(x))


def _make_query(function: str, args: argparse.Namespace):
    values = {f: getattr(args, f) for f in _QUERY_FLAGS[function]}
    if function == "nuttall":
        return NuttallQuery(**values)
    if function == "toronto":
        return TorontoQuery(**values)
    if function == "rice-ie":
        return RiceIeQuery(**values)
    return IlhiQuery(**values)


def _eval_query(function: str, q, method: str, order: Optional[int]):
    fn = {
        "nuttall": nuttall_eval,
        "toronto": toronto_eval,
        "rice-ie": rice_ie_eval,
        "ilhi": ilhi_eval,
    }[function]
    return fn(q, method, order)


def _emit(args: argparse.Namespace, payload: dict) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload))
    else:
        for key, val in payload.items():
            if isinstance(val, float):
                val = _fmt(val)
            print(f"{key} = {val}")


# ---------------------------------------------------------------------------
# eval / bounds
# ---------------------------------------------------------------------------

def _add_function_flags(parser: argparse.ArgumentParser, function: str) -> None:
    for flag in _QUERY_FLAGS[function]:
        parser.add_argument(f"--{flag}", type=float, required=True)


def cmd_eval(args: argparse.Namespace) -> int:
    q = _make_query(args.function, args)
    order = args.p if args.p is not None else args.L
    res = _eval_query(args.function, q, args.method, order)
    _emit(args, {"value": res.value, "method": res.method,
                 "est_error": res.est_error, "terms": res.terms})
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    q = _make_query(args.function, args)
    if args.function == "nuttall":
        iv = Interval(lower=0.0, upper=nuttall_upper(q))
    elif args.function == "toronto":
        iv = toronto_bounds(q)
    elif args.function == "rice-ie":
        iv = rice_ie_bounds(q)
    else:
        iv = ilhi_bounds(q)
    _emit(args, {"lower": iv.lower, "upper": iv.upper, "width": iv.width})
    return 0


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def cmd_table(args: argparse.Namespace) -> int:
    report = table_report(args.id)
    header = f"{'row':28} {'column':12} {'printed':>12} {'computed':>18} {'status':6}"
    print(header)
    print("-" * len(header))
    for c in report.cells:
        computed = "n/a" if c.computed is None else _fmt(c.computed)
        printed = "n/a" if math.isnan(c.printed) else f"{c.printed:.6g}"
        status = "ok" if c.passed else "FAIL"
        line = f"{c.row:28} {c.column:12} {printed:>12} {computed:>18} {status:6}"
        if c.note and c.note != "n/a":
            line += f"  # {c.note}"
        print(line)
    if not report.all_passed:
        print()
        print("failed cells:")
        for c in report.failures():
            diff = "" if c.computed is None else f" diff={abs(c.computed - c.printed):.3e}"
            print(f"  {c.row} [{c.column}] printed={c.printed:.6g}"
                  f" computed={c.computed}{diff} {c.note}")
        return 1
    return 0


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _parse_grid(spec: str) -> tuple:
    try:
        name, rng = spec.split("=", 1)
        start_s, stop_s, count_s = rng.split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"grid spec {spec!r} must look like param=start:stop:count")
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be >= 1")
    return name.strip(), start, stop, count


def _grid_values(start: float, stop: float, count: int) -> list:
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


_SWEEP_ROUTES = {
    "nuttall": ("kdf", "poly", "bound", "oracle"),
    "toronto": ("series", "poly", "oracle"),
    "rice-ie": ("series", "poly", "oracle"),
    "ilhi": ("series", "poly", "oracle"),
}


def _sweep_cell(target: str, q, route: str) -> str:
    try:
        if route == "oracle":
            fid = target.replace("-", "_")
            return _fmt(oracle(fid, q))
        if route == "bound":
            return _fmt(nuttall_upper(q))
        return _fmt(_eval_query(target, q, route, None).value)
    except CommSpecialError:
        return ""


def cmd_sweep(args: argparse.Namespace) -> int:
    grids = [_parse_grid(s) for s in args.grid]
    if not 1 <= len(grids) <= 2:
        print("sweep requires one or two --grid specs", file=sys.stderr)
        return 2
    total = 1
    for _, _, _, count in grids:
        total *= count
    if total > _MAX_SWEEP_POINTS:
        print(f"refusing sweep of {total} points (> {_MAX_SWEEP_POINTS})",
              file=sys.stderr)
        return 2

    swept = [g[0] for g in grids]
    if args.target == "outage":
        routes = ("analytic", "oracle")
        fixed = dict(model=args.model, gamma_bar=_resolve_gamma_bar(args))
    else:
        routes = _SWEEP_ROUTES[args.target]
        fixed = {}
        for flag in _QUERY_FLAGS[args.target]:
            val = getattr(args, flag)
            if flag in swept:
                continue
            if val is None:
                print(f"--{flag} is required (not swept)", file=sys.stderr)
                return 2
            fixed[flag] = val

    lines = [",".join(swept + list(routes))]
    axes = [_grid_values(g[1], g[2], g[3]) for g in grids]
    points = ([(v,) for v in axes[0]] if len(axes) == 1
              else [(u, v) for u in axes[0] for v in axes[1]])

    for point in points:
        cells = [_fmt(v) for v in point]
        if args.target == "outage":
            params = dict(zip(swept, point))
            gamma_bar = params.pop("gamma_bar", fixed["gamma_bar"])
            gamma_th = params.pop("gamma_th", None)
            if params or gamma_th is None:
                print("outage sweeps accept gamma_th and gamma_bar grids only",
                      file=sys.stderr)
                return 2
            q = OutageQuery(_build_model(args), gamma_bar, gamma_th)
            for route in routes:
                try:
                    cells.append(_fmt(outage(q, route)))
                except CommSpecialError:
                    cells.append("")
        else:
            values = dict(fixed)
            values.update(zip(swept, point))
            ns = argparse.Namespace(**values)
            try:
                q = _make_query(args.target, ns)
            except CommSpecialError:
                cells.extend("" for _ in routes)
                lines.append(",".join(cells))
                continue
            for route in routes:
                cells.append(_sweep_cell(args.target, q, route))
        lines.append(",".join(cells))

    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# outage
# ---------------------------------------------------------------------------

_MODEL_FLAGS = {
    "alpha-eta-mu": ("alpha", "eta", "mu"),
    "alpha-lambda-mu": ("alpha", "lam", "mu"),
    "alpha-kappa-mu": ("alpha", "kappa", "mu"),
    "eta-mu": ("eta", "mu"),
    "lambda-mu": ("lam", "mu"),
    "kappa-mu": ("kappa", "mu"),
    "rician": ("n_rice",),
}


def _build_model(args: argparse.Namespace):
    required = _MODEL_FLAGS[args.model]
    missing = [f for f in required if getattr(args, f, None) is None]
    if missing:
        flags = ", ".join("--" + f.replace("_", "-").replace("lam", "lam") for f in missing)
        raise CommSpecialError(f"model {args.model} requires {flags}")
    vals = {f: getattr(args, f) for f in required}
    if args.model == "alpha-eta-mu":
        return AlphaEtaMu(alpha=vals["alpha"], eta=vals["eta"], mu=vals["mu"])
    if args.model == "alpha-lambda-mu":
        return AlphaLambdaMu(alpha=vals["alpha"], lam=vals["lam"], mu=vals["mu"])
    if args.model == "alpha-kappa-mu":
        return AlphaKappaMu(alpha=vals["alpha"], kappa=vals["kappa"], mu=vals["mu"])
    if args.model == "eta-mu":
        return EtaMu(eta=vals["eta"], mu=vals["mu"])
    if args.model == "lambda-mu":
        return LambdaMu(lam=vals["lam"], mu=vals["mu"])
    if args.model == "kappa-mu":
        return KappaMu(kappa=vals["kappa"], mu=vals["mu"])
    return Rician(n_rice=vals["n_rice"])


def _resolve_gamma_bar(args: argparse.Namespace) -> float:
    if args.gamma_bar_db is not None:
        return 10.0 ** (args.gamma_bar_db / 10.0)
    return args.gamma_bar


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True, choices=sorted(_MODEL_FLAGS))
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--eta", type=float)
    parser.add_argument("--lam", type=float)
    parser.add_argument("--kappa", type=float)
    parser.add_argument("--mu", type=float)
    parser.add_argument("--n-rice", dest="n_rice", type=float)


def _add_gamma_bar_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--gamma-bar", dest="gamma_bar", type=float)
    group.add_argument("--gamma-bar-db", dest="gamma_bar_db", type=float)


def cmd_outage(args: argparse.Namespace) -> int:
    model = _build_model(args)
    q = OutageQuery(model, _resolve_gamma_bar(args), args.gamma_th)
    if args.route == "humbert":
        value = outage_humbert(q)
    else:
        value = outage(q, args.route)
    _emit(args, {"outage": value, "model": args.model, "route": args.route})
    return 0


# ---------------------------------------------------------------------------
# capacity
# ---------------------------------------------------------------------------

def _tifr_payload(res: TifrResult) -> dict:
    return {
        "capacity_per_hz": res.capacity_per_hz,
        "cutoff_gamma0": res.cutoff_gamma0,
        "outage_at_cutoff": res.outage_at_cutoff,
        "solver_residual": res.solver_residual,
    }


def cmd_capacity(args: argparse.Namespace) -> int:
    gamma_bar = _resolve_gamma_bar(args)
    if args.channel == "siso":
        ch = RicianChannel(n_rice=args.n_rice, gamma_bar=gamma_bar)
        if args.gamma0 is None:
            payload = _tifr_payload(optimal_cutoff_rician(ch))
        else:
            gamma_th = args.gamma_th if args.gamma_th is not None else args.gamma0
            payload = _tifr_payload(tifr_capacity_rician(ch, args.gamma0, gamma_th))
    elif args.channel == "miso-simo":
        ch = MisoSimoChannel(K=args.K, los_power=args.los_power,
                             n_ant=args.n_ant, gamma_bar=gamma_bar)
        if args.gamma0 is None:
            sol = optimal_cutoff_miso(ch)
            payload = _tifr_payload(sol["result"])
            payload["closed_form_applicable"] = sol["closed_form_applicable"]
        else:
            gamma_th = args.gamma_th if args.gamma_th is not None else args.gamma0
            payload = _tifr_payload(em_tifr_miso_simo(ch, args.gamma0, gamma_th))
    else:
        coeffs = load_mimo_coeffs(args.coeffs)
        if args.gamma0 is None:
            payload = _tifr_payload(
                optimal_cutoff_mimo(coeffs, gamma_bar, k_factor=args.k_factor))
        else:
            cap, pout, kappa = mimo_em_ti(coeffs, gamma_bar, args.gamma0,
                                          k_factor=args.k_factor)
            payload = {"capacity_per_hz": cap, "cutoff_gamma0": args.gamma0,
                       "outage_at_cutoff": pout, "kappa": kappa}
    _emit(args, payload)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    report = run_verification(draws=args.draws, seed=args.seed, tol=args.tol)
    print(json.dumps(report, indent=2))
    return 0 if report["all_passed"] else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commspecial",
        description="Special functions of communication theory: evaluation, "
                    "bounds, golden tables, sweeps, fading outage, TIFR "
                    "capacity, and a verification suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, runner in (("eval", cmd_eval), ("bounds", cmd_bounds)):
        cmd = sub.add_parser(name, help=f"{name} one function query")
        fsub = cmd.add_subparsers(dest="function", required=True)
        for function in _FUNCTIONS:
            fp = fsub.add_parser(function)
            _add_function_flags(fp, function)
            if name == "eval":
                fp.add_argument("--method", default="series",
                                choices=_METHOD_CHOICES[function])
                fp.add_argument("--p", type=int, default=None,
                                help="polynomial truncation order")
                fp.add_argument("--L", type=int, default=None,
                                help="alias of --p")
            fp.add_argument("--format", choices=("text", "json"), default="text")
            fp.set_defaults(func=runner)

    tp = sub.add_parser("table", help="reproduce a golden accuracy table")
    tp.add_argument("id", choices=TABLE_IDS)
    tp.set_defaults(func=cmd_table)

    sp = sub.add_parser("sweep", help="parameter sweep to CSV")
    sp.add_argument("target", choices=_FUNCTIONS + ("outage",))
    sp.add_argument("--grid", action="append", required=True,
                    metavar="PARAM=START:STOP:COUNT")
    sp.add_argument("--out", default=None, help="output CSV path (default stdout)")
    for flag in sorted({f for flags in _QUERY_FLAGS.values() for f in flags}):
        sp.add_argument(f"--{flag}", type=float, default=None)
    sp.add_argument("--model", choices=sorted(_MODEL_FLAGS), default=None)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--eta", type=float)
    sp.add_argument("--lam", type=float)
    sp.add_argument("--kappa", type=float)
    sp.add_argument("--mu", type=float)
    sp.add_argument("--n-rice", dest="n_rice", type=float)
    gb = sp.add_mutually_exclusive_group()
    gb.add_argument("--gamma-bar", dest="gamma_bar", type=float)
    gb.add_argument("--gamma-bar-db", dest="gamma_bar_db", type=float, default=None)
    sp.set_defaults(func=cmd_sweep)

    op = sub.add_parser("outage", help="fading outage probability")
    _add_model_flags(op)
    _add_gamma_bar_flags(op)
    op.add_argument("--gamma-th", dest="gamma_th", type=float, required=True)
    op.add_argument("--route", choices=("analytic", "oracle", "humbert"),
                    default="analytic")
    op.add_argument("--format", choices=("text", "json"), default="text")
    op.set_defaults(func=cmd_outage)

    cp = sub.add_parser("capacity", help="TIFR capacity / optimal cutoff")
    cp.add_argument("--channel", required=True, choices=("siso", "miso-simo", "mimo"))
    _add_gamma_bar_flags(cp)
    cp.add_argument("--n-rice", dest="n_rice", type=float, default=None)
    cp.add_argument("--K", type=float, default=None, help="Rician K-factor")
    cp.add_argument("--los-power", dest="los_power", type=float, default=None)
    cp.add_argument("--n-ant", dest="n_ant", type=int, default=None)
    cp.add_argument("--coeffs", default=None, help="MIMO coefficient JSON file")
    cp.add_argument("--k-factor", dest="k_factor", type=float, default=0.0)
    cp.add_argument("--gamma0", type=float, default=None,
                    help="cutoff SNR (omit to solve for the optimum)")
    cp.add_argument("--gamma-th", dest="gamma_th", type=float, default=None)
    cp.add_argument("--format", choices=("text", "json"), default="text")
    cp.set_defaults(func=cmd_capacity)

    vp = sub.add_parser("verify", help="run the property-verification suite")
    vp.add_argument("--draws", type=int, default=100)
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--tol", type=float, default=1e-7)
    vp.set_defaults(func=cmd_verify)

    return parser


def _check_capacity_flags(parser: argparse.ArgumentParser,
                          args: argparse.Namespace) -> None:
    if args.command != "capacity":
        return
    required = {
        "siso": ("n_rice",),
        "miso-simo": ("K", "los_power", "n_ant"),
        "mimo": ("coeffs",),
    }[args.channel]
    missing = [f for f in required if getattr(args, f) is None]
    if missing:
        parser.error(f"--channel {args.channel} requires "
                     + ", ".join("--" + f.replace("_", "-") for f in missing))


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _check_capacity_flags(parser, args)
    try:
        return args.func(args)
    except CommSpecialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
