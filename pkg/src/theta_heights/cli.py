"""Command-line interface emitting machine-readable tables (CSV or JSON).

Every command writes one rectangular table: a JSON document with fixed key
order ({command, params, columns, rows}) or an RFC-4180 CSV file with a
header row.  Exact integers are emitted verbatim; exact rationals appear as
numerator and denominator columns plus a 15-significant-digit decimal string;
floating-point values are emitted at 15 significant digits in CSV and as
plain numbers in JSON.  Identical invocations produce identical bytes.

The environment variable THETA_HEIGHTS_THREADS caps internal parallelism;
the computations in this package are sequential, so any cap of at least one
is honored trivially.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from .constants import compute_lambda, compute_rho, otter_amplitude
from .enumeration import (
    count_trees,
    height_bounded_counts,
    height_distribution,
    exact_moment,
)
from .errors import AccuracyLoss, ThetaHeightsError
from .limit_laws import (
    ThetaParams,
    asymptotic_moment,
    saddle_bound,
    theta_local,
    theta_survival,
)
from .sampler import empirical_height_stats

_CLT_GRID_START = 0.3
_CLT_GRID_STEP = 0.05
_CLT_GRID_COUNT = 65  # 0.3, 0.35, ..., 3.5


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".15g")
    return str(v)


def _decimal(fr: Fraction) -> str:
    return format(float(fr), ".15g")


def _emit(doc: dict, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(doc["columns"])
        for row in doc["rows"]:
            writer.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _doc(command: str, params: dict, columns: list[str], rows: list[list]) -> dict:
    return {"command": command, "params": params, "columns": columns, "rows": rows}


def _certified_params(tol: float) -> ThetaParams:
    rho = compute_rho(tol / 16)
    lam = compute_lambda(rho, tol)
    return ThetaParams(float(lam.value))


def _grid_rows(n: int):
    """Deduplicated (x, h) pairs with h = round(x sqrt(n)), x snapped to h / sqrt(n)."""
    sqrt_n = math.sqrt(n)
    seen = set()
    for i in range(_CLT_GRID_COUNT):
        x = _CLT_GRID_START + _CLT_GRID_STEP * i
        h = round(x * sqrt_n)
        if h < 1 or h in seen:
            continue
        seen.add(h)
        yield h / sqrt_n, h


def _cmd_count(args) -> dict:
    table = count_trees(args.n)
    rows = [[i + 1, c] for i, c in enumerate(table.counts)]
    return _doc("count", {"n": args.n}, ["n", "count"], rows)


def _cmd_heights(args) -> dict:
    table = height_bounded_counts(args.n, args.h)
    columns = ["h"] + [f"n={j}" for j in range(1, args.n + 1)]
    rows = [[h, *table.row(h)[1:]] for h in range(args.h + 1)]
    return _doc("heights", {"n": args.n, "h": args.h}, columns, rows)


def _cmd_dist(args) -> dict:
    n = args.n
    table = height_bounded_counts(n, max(n - 1, 0), keep_rows=False, track_columns=(n,))
    dist = height_distribution(n, table)
    rows = [
        [h, p.numerator, p.denominator, _decimal(p)] for h, p in enumerate(dist.probs)
    ]
    return _doc("dist", {"n": n}, ["h", "numerator", "denominator", "probability"], rows)


def _cmd_constants(args) -> dict:
    rho = compute_rho(args.tol)
    lam = compute_lambda(compute_rho(Fraction(args.tol) / 16), args.tol)
    amp = otter_amplitude(lam)
    rows = [
        ["rho", float(rho.value), float(rho.err)],
        ["lambda", float(lam.value), float(lam.err)],
        ["lambda_over_2sqrtpi", float(amp.value), float(amp.err)],
    ]
    return _doc("constants", {"tol": args.tol}, ["name", "value", "err"], rows)


def _cmd_theta(args) -> dict:
    p = _certified_params(1e-10)
    try:
        surv = theta_survival(args.x, p, args.eps)
        loc = theta_local(args.x, p, args.eps)
        row = [args.x, surv, loc, ""]
    except AccuracyLoss:
        row = [args.x, "", "", "accuracy_loss"]
    return _doc(
        "theta",
        {"x": args.x, "eps": args.eps},
        ["x", "survival", "local", "flag"],
        [row],
    )


def _cmd_moments(args) -> dict:
    n, r = args.n, args.r
    table = height_bounded_counts(n, max(n - 1, 0), keep_rows=False, track_columns=(n,))
    dist = height_distribution(n, table)
    exact = exact_moment(dist, r)
    p = _certified_params(1e-10)
    asym = asymptotic_moment(r, p) * n ** (r / 2)
    rows = [
        [
            r,
            exact.numerator,
            exact.denominator,
            _decimal(exact),
            asym,
            float(exact) / asym,
        ]
    ]
    columns = ["r", "numerator", "denominator", "exact", "asymptotic", "ratio"]
    return _doc("moments", {"n": n, "r": r}, columns, rows)


def _cmd_compare_clt(args) -> dict:
    n = args.n
    pairs = list(_grid_rows(n))
    h_max = min(max(h for _, h in pairs), n - 1)
    table = height_bounded_counts(n, h_max, keep_rows=False, track_columns=(n,))
    col = table.column(n)
    y_n = count_trees(n).y(n)
    p = _certified_params(1e-10)
    rows = []
    for x, h in pairs:
        # heights above n - 1 are impossible, so the exact tail there is 0
        exact = Fraction(y_n - col[h - 1], y_n) if h - 1 <= h_max else Fraction(0)
        surv = theta_survival(x, p)
        rows.append([x, _decimal(exact), surv, abs(float(exact) - surv)])
    columns = ["x", "exact_tail", "survival", "abs_diff"]
    return _doc("compare-clt", {"n": n}, columns, rows)


def _cmd_compare_llt(args) -> dict:
    n = args.n
    pairs = list(_grid_rows(n))
    h_max = min(max(h for _, h in pairs), n - 1)
    table = height_bounded_counts(n, h_max, keep_rows=False, track_columns=(n,))
    col = table.column(n)
    y_n = count_trees(n).y(n)
    p = _certified_params(1e-10)
    sqrt_n = math.sqrt(n)
    rows = []
    for x, h in pairs:
        if h > h_max:
            pmf = Fraction(0)
        else:
            prev = col[h - 1] if h >= 1 else 0
            pmf = Fraction(col[h] - prev, y_n)
        scaled = sqrt_n * float(pmf)
        loc = theta_local(x, p)
        rows.append([x, scaled, loc, abs(scaled - loc)])
    columns = ["x", "scaled_pmf", "local", "abs_diff"]
    return _doc("compare-llt", {"n": n}, columns, rows)


def _cmd_sample(args) -> dict:
    stats = empirical_height_stats(args.n, args.trials, args.seed)
    rows = [
        [h, c, c / args.trials, stats.mean, stats.variance]
        for h, c in stats.histogram
    ]
    columns = ["h", "count", "frequency", "mean", "variance"]
    params = {"n": args.n, "trials": args.trials, "seed": args.seed}
    return _doc("sample", params, columns, rows)


def _cmd_bound(args) -> dict:
    n, h = args.n, args.h
    counts = count_trees(n)
    rho = compute_rho(1e-10)
    bound = saddle_bound(n, h, counts, rho)
    table = height_bounded_counts(n, n - 1, keep_rows=False, track_columns=(n,))
    col = table.column(n)
    exact = Fraction(counts.y(n) - col[h - 1], counts.y(n))
    rows = [[n, h, bound, _decimal(exact), bound / float(exact)]]
    columns = ["n", "h", "bound", "exact_tail", "ratio"]
    return _doc("bound", {"n": n, "h": h}, columns, rows)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="theta-heights",
        description="Exact tree-height enumeration and limit-law comparison tables.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="output path (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **flags):
        sp = sub.add_parser(name, parents=[common])
        for flag, (typ, required, default) in flags.items():
            sp.add_argument(f"--{flag}", type=typ, required=required, default=default)
        sp.set_defaults(handler=handler)

    add("count", _cmd_count, n=(int, True, None))
    add("heights", _cmd_heights, n=(int, True, None), h=(int, True, None))
    add("dist", _cmd_dist, n=(int, True, None))
    add("constants", _cmd_constants, tol=(float, False, 1e-10))
    add("theta", _cmd_theta, x=(float, True, None), eps=(float, False, 1e-12))
    add("moments", _cmd_moments, n=(int, True, None), r=(int, False, 1))
    add("compare-clt", _cmd_compare_clt, n=(int, True, None))
    add("compare-llt", _cmd_compare_llt, n=(int, True, None))
    add(
        "sample",
        _cmd_sample,
        n=(int, True, None),
        trials=(int, False, 10000),
        seed=(int, False, 0),
    )
    add("bound", _cmd_bound, n=(int, True, None), h=(int, True, None))
    return parser


def main(argv: list[str] | None = None) -> int:
    cap = os.environ.get("THETA_HEIGHTS_THREADS")
    if cap is not None:
        try:
            if int(cap) < 1:
                raise ValueError
        except ValueError:
            print(f"invalid THETA_HEIGHTS_THREADS: {cap!r}", file=sys.stderr)
            return 2
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.handler(args)
    except (ThetaHeightsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(doc, args.format, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
