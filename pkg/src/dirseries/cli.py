"""The `ds` command-line harness.

Every subcommand prints machine-readable output (JSON by default, CSV on
request) to stdout; all errors go to stderr as single-line JSON
{code, message}.  Exit codes: 0 success, 1 domain error, 2 parse error.
"""

import argparse
import json
import sys

from . import abscissa as absc
from . import constructions as cons
from . import kernel as ker
from . import series as ser
from .errors import DirSeriesError, SeriesParseError
from .serialize import coeffs_csv_lines, json_dumps, table_csv_lines
from .specparse import (
    build_base_sequence,
    build_sequence,
    parse_series_spec,
    zeta_power_of,
)


class _CliUsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliUsageError(message)


def _int_arg(text):
    value = float(text)
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(value)


def _complex_arg(text):
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _build_parser():
    parser = _Parser(prog="ds", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("primes", help="first K primes")
    p.add_argument("--count", type=_int_arg, required=True)

    p = sub.add_parser("smooth", help="p_n-smooth integers up to a limit")
    p.add_argument("--index", type=_int_arg, required=True)
    p.add_argument("--limit", type=_int_arg, required=True)

    p = sub.add_parser("coeffs", help="coefficients of a series spec")
    p.add_argument("--series", required=True)
    p.add_argument("--limit", type=_int_arg, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("eval", help="partial sum of a series at a point")
    p.add_argument("--series", required=True)
    p.add_argument("--s", type=_complex_arg, required=True)
    p.add_argument("--limit", type=_int_arg, required=True)
    p.add_argument("--smooth-index", type=_int_arg, default=None)

    p = sub.add_parser("abscissa", help="growth-slope estimate of sigma_a")
    p.add_argument("--series", required=True)
    p.add_argument("--limit", type=_int_arg, required=True)
    p.add_argument("--checkpoints", type=_int_arg, default=8)
    p.add_argument("--smooth-index", type=_int_arg, default=None)

    p = sub.add_parser("delta", help="smooth-subseries abscissa estimates")
    p.add_argument("--series", required=True)
    p.add_argument("--max-index", type=_int_arg, required=True)
    p.add_argument("--limit", type=_int_arg, required=True)
    p.add_argument("--checkpoints", type=_int_arg, default=8)

    p = sub.add_parser("rho", help="solve g(rho) = alpha for a recip series")
    p.add_argument("--series", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--smooth-index", type=_int_arg, default=None)
    p.add_argument("--limit", type=_int_arg, default=10**6)

    p = sub.add_parser("rhom", help="root of zeta(sigma)^m = 2")
    p.add_argument("--m", type=_int_arg, required=True)
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser("kernel", help="diagonal-kernel computations")
    ksub = p.add_subparsers(dest="kernel_command", required=True)
    kg = ksub.add_parser("gram", help="Gram matrix with PSD check")
    kg.add_argument("--series", required=True)
    kg.add_argument("--points", required=True, help="JSON file: array of {re, im}")
    kg.add_argument("--limit", type=_int_arg, required=True)
    km = ksub.add_parser("member", help="membership-ratio partial sum")
    km.add_argument("--series", required=True)
    km.add_argument("--b", required=True, help="series spec for the candidate")
    km.add_argument("--limit", type=_int_arg, required=True)

    p = sub.add_parser("verify", help="run the acceptance battery")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--seed", type=_int_arg, default=20240801)

    p = sub.add_parser("report", help="write CSV tables and figures to a directory")
    p.add_argument("--series", required=True)
    p.add_argument("--limit", type=_int_arg, default=10**5)
    p.add_argument("--out", required=True)
    p.add_argument("--smooth-max", type=_int_arg, default=3)
    p.add_argument("--checkpoints", type=_int_arg, default=8)
    return parser


def _eval_result_jsonable(res):
    value = res.value
    if isinstance(value, complex):
        value = value.real if value.imag == 0.0 else value
    return {
        "value": value,
        "terms_used": res.terms_used,
        "tail_bound": "unavailable" if res.tail_bound is None else res.tail_bound,
    }


def _rho_jsonable(res):
    out = {
        "rho": res.rho,
        "bracket": list(res.bracket),
        "residual": res.residual,
        "iterations": res.iterations,
    }
    if res.smooth_index is not None:
        out["smooth_index"] = res.smooth_index
    return out


def _emit(text, out):
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


def _run_primes(args, out):
    from .primes import first_n_primes

    _emit(json_dumps(first_n_primes(args.count)), out)
    return 0


def _run_smooth(args, out):
    from .primes import smooth_numbers

    _emit(json_dumps(smooth_numbers(args.index, args.limit)), out)
    return 0


def _run_coeffs(args, out):
    seq = build_sequence(parse_series_spec(args.series))
    values = seq.materialize(args.limit)
    if args.format == "csv":
        for line in coeffs_csv_lines(values):
            _emit(line, out)
    else:
        _emit(json_dumps(values), out)
    return 0


def _run_eval(args, out):
    seq = build_sequence(parse_series_spec(args.series))
    if args.smooth_index is not None:
        res = ser.evaluate_smooth(seq, args.s, args.smooth_index, args.limit)
    else:
        res = ser.evaluate(seq, args.s, args.limit, tail=True)
    _emit(json_dumps(_eval_result_jsonable(res)), out)
    return 0


def _run_abscissa(args, out):
    seq = build_sequence(parse_series_spec(args.series))
    if args.smooth_index is not None:
        report = absc.estimate_sigma_a_smooth(
            seq, args.smooth_index, args.limit, args.checkpoints
        )
    else:
        report = absc.estimate_sigma_a(seq, args.limit, args.checkpoints)
    _emit(json_dumps(report), out)
    return 0


def _run_delta(args, out):
    seq = build_sequence(parse_series_spec(args.series))
    report = absc.estimate_delta_a(seq, args.max_index, args.limit, args.checkpoints)
    _emit(json_dumps(report), out)
    return 0


def _run_rho(args, out):
    node = parse_series_spec(args.series)
    base = build_base_sequence(node)
    if args.smooth_index is not None:
        res = cons.rho_smooth(
            base, args.alpha, args.smooth_index, tol=args.tol, limit=args.limit
        )
    else:
        m = zeta_power_of(node.children[0])
        if m is not None:
            res = cons.find_rho(
                lambda sigma: ser.zeta_real(sigma, tol=min(1e-13, args.tol / 100)) ** m - 1.0,
                args.alpha,
                tol=args.tol,
                domain_min=1.0,
            )
        else:
            res = cons.find_rho(
                lambda sigma: ser.evaluate(base, sigma, args.limit).value,
                args.alpha,
                tol=args.tol,
                domain_min=0.0,
            )
    _emit(json_dumps(_rho_jsonable(res)), out)
    return 0


def _run_rhom(args, out):
    _emit(json_dumps(_rho_jsonable(cons.rho_m(args.m, tol=args.tol))), out)
    return 0


def _load_points(path):
    with open(path) as fh:
        raw = json.load(fh)
    return [complex(p["re"], p["im"]) for p in raw]


def _kernel_spec_for(seq, n):
    report = absc.estimate_sigma_a(seq, min(n, 10**5))
    return ker.KernelSpec(seq, report.estimate, 0.0)


def _run_kernel(args, out):
    seq = build_sequence(parse_series_spec(args.series))
    spec = _kernel_spec_for(seq, args.limit)
    if args.kernel_command == "gram":
        points = _load_points(args.points)
        result = ker.gram_matrix(spec, points, args.limit)
        _emit(
            json_dumps(
                {
                    "points": result.points,
                    "matrix": [
                        [[z.real, z.imag] for z in row] for row in result.matrix
                    ],
                    "psd": result.psd,
                    "min_pivot": result.min_pivot,
                }
            ),
            out,
        )
    else:
        b = build_sequence(parse_series_spec(args.b))
        res = ker.membership_ratio(spec, b, args.limit)
        _emit(json_dumps(_eval_result_jsonable(res)), out)
    return 0


def _run_verify(args, out):
    from .verify import run_battery

    results = run_battery(quick=args.quick, seed=args.seed)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        _emit(f"{status} {res.name} ({res.seconds:.2f}s) {res.detail}", out)
        failed += 0 if res.passed else 1
    _emit(f"{len(results) - failed}/{len(results)} checks passed", out)
    return 0 if failed == 0 else 1


def _run_report(args, out):
    from .report import write_report

    paths = write_report(
        args.series, args.limit, args.out,
        smooth_max=args.smooth_max, checkpoints=args.checkpoints,
    )
    _emit(json_dumps({"written": paths}), out)
    return 0


_HANDLERS = {
    "primes": _run_primes,
    "smooth": _run_smooth,
    "coeffs": _run_coeffs,
    "eval": _run_eval,
    "abscissa": _run_abscissa,
    "delta": _run_delta,
    "rho": _run_rho,
    "rhom": _run_rhom,
    "kernel": _run_kernel,
    "verify": _run_verify,
    "report": _run_report,
}


def _error(code, message, err):
    err.write(json.dumps({"code": code, "message": str(message)}) + "\n")
    return code


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliUsageError as exc:
        return _error(2, exc, err)
    try:
        return _HANDLERS[args.command](args, out)
    except SeriesParseError as exc:
        return _error(2, exc, err)
    except (DirSeriesError, ValueError, OSError, KeyError) as exc:
        return _error(1, exc, err)


if __name__ == "__main__":
    sys.exit(main())
