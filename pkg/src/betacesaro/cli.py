"""Command-line front end; every command writes a JSON or CSV report.

Reports are deterministic (identical config gives byte-identical output),
versioned with the schema tag ``bcl-report/1``, and embed the config that
produced them.  Exit status: 0 success, 1 usage or domain error, 2 when a
probe verdict fails its expected check.
"""
from __future__ import annotations

import argparse
import io
import csv
import json
import os
import sys

import numpy as np

from .bloch import BlochParams, default_grid, seminorm_estimate
from .bounds import (
    bound_constant,
    classify,
    counterexample_probe,
    default_probe_ts,
)
from .compactness import (
    compactness_probe,
    default_test_family,
    essential_norm_probe,
    null_family,
)
from .errors import DomainError, SpectrumEmptyError
from .operators import (
    SymbolGBeta,
    apply_beta_cesaro,
    apply_generalized,
    eigenfunction_psi,
    operator_matrix,
    preimage_under_cesaro,
    truncated_spectrum,
)
from .series import DEFAULT_ORDER, PowerSeries

SCHEMA = "bcl-report/1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERDICT = 2


class _Parser(argparse.ArgumentParser):
    # usage errors must map to exit status 1, not argparse's default 2
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _default_order() -> int:
    try:
        return int(os.environ.get("BCL_DEFAULT_N", DEFAULT_ORDER))
    except ValueError:
        return DEFAULT_ORDER


def _series_from_args(args, attr="f", pad=False) -> PowerSeries:
    path = getattr(args, f"{attr}_file", None)
    inline = getattr(args, attr, None)
    if path:
        with open(path) as fh:
            data = json.load(fh)
        pairs = data["coeffs"] if isinstance(data, dict) else data
    elif inline:
        pairs = json.loads(inline)
    else:
        raise _UsageError(f"missing series input --{attr} or --{attr}-file")
    f = PowerSeries.from_pairs(pairs)
    if pad:
        # pad polynomials so trailing zeros mark them tail-free on the grid
        return f.truncate(max(f.order + 16, _default_order()))
    return f


def _symbol_from_args(args) -> SymbolGBeta:
    if getattr(args, "symbol", None):
        with open(args.symbol) as fh:
            return SymbolGBeta.from_json(fh.read())
    if getattr(args, "beta", None) is not None:
        return SymbolGBeta.beta_cesaro(args.beta)
    raise _UsageError("missing --symbol or --beta")


def _grid_from_args(args):
    return default_grid(args.grid_radial, args.grid_angular, args.rmax)


def _series_pairs(f: PowerSeries):
    return [[c.real, c.imag] for c in f.coeffs]


def _emit(args, config: dict, result: dict, csv_rows=None, csv_header=None) -> None:
    if args.format == "csv" and csv_rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        if csv_header:
            writer.writerow(csv_header)
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        report = {"schema": SCHEMA, "config": config, "result": result}
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(sp, grid=False, symbol=False, series=False, order=False):
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    if grid:
        sp.add_argument("--grid-radial", type=int, default=64)
        sp.add_argument("--grid-angular", type=int, default=128)
        sp.add_argument("--rmax", type=float, default=0.999)
    if symbol:
        sp.add_argument("--symbol", default=None, help="symbol JSON file")
        sp.add_argument("--beta", type=float, default=None)
    if series:
        sp.add_argument("--f", default=None, help="inline JSON coefficient list")
        sp.add_argument("--f-file", dest="f_file", default=None)
    if order:
        sp.add_argument("--N", dest="order", type=int, default=None)


def build_parser() -> _Parser:
    parser = _Parser(prog="betacesaro", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("seminorm", help="estimate the weighted-derivative seminorm")
    sp.add_argument("--alpha", type=float, required=True)
    _add_common(sp, grid=True, series=True)

    sp = sub.add_parser("apply", help="apply the operator to a series")
    _add_common(sp, symbol=True, series=True, order=True)

    sp = sub.add_parser("matrix", help="coefficient matrix of the operator")
    _add_common(sp, symbol=True, order=True)

    sp = sub.add_parser("spectrum", help="eigenvalues of the truncated matrix")
    _add_common(sp, symbol=True, order=True)

    sp = sub.add_parser("eigenfunction", help="candidate eigenfunction factor")
    sp.add_argument("--n", type=int, required=True)
    _add_common(sp, symbol=True, order=True)

    sp = sub.add_parser("classify", help="bounded/unbounded/compact verdict")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    _add_common(sp)

    sp = sub.add_parser("bound", help="certified operator-norm constant")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    _add_common(sp)

    sp = sub.add_parser("counterexample", help="divergence probe along (0, 1)")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--which", choices=["Ex26", "Ex27", "Ex28"], required=True)
    sp.add_argument("--tmax", type=float, default=0.9999)
    _add_common(sp)

    sp = sub.add_parser("compactness", help="null-family image-norm decay probe")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--kind", choices=["monomial", "dilation"], default="monomial")
    sp.add_argument("--m-max", dest="m_max", type=int, default=32)
    _add_common(sp, grid=True, symbol=True)

    sp = sub.add_parser("essnorm", help="distance to dilation approximants")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument(
        "--dilations", default="0.5,0.9,0.99,0.999", help="comma-separated, increasing"
    )
    _add_common(sp, grid=True, symbol=True)

    sp = sub.add_parser("preimage", help="explicit preimage under the Cesaro operator")
    _add_common(sp, series=True)

    return parser


def _config_of(args) -> dict:
    skip = {"command", "out", "format", "f_file"}
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}
    cfg["command"] = args.command
    return cfg


def _run(args) -> int:
    cfg = _config_of(args)

    if args.command == "seminorm":
        f = _series_from_args(args, pad=True)
        grid = _grid_from_args(args)
        est = seminorm_estimate(f, BlochParams(args.alpha), grid)
        _emit(
            args,
            cfg,
            {
                "value": est.value,
                "argmax": [est.argmax.real, est.argmax.imag],
                "max_tail": est.max_tail,
                "n_excluded": est.n_excluded,
            },
            csv_rows=[[est.value, est.argmax.real, est.argmax.imag, est.max_tail]],
            csv_header=["value", "argmax_re", "argmax_im", "max_tail"],
        )
        return EXIT_OK

    if args.command == "apply":
        f = _series_from_args(args)
        if args.order is not None:
            f = f.truncate(args.order)
        out = apply_generalized(f, _symbol_from_args(args))
        _emit(
            args,
            cfg,
            {"coeffs": _series_pairs(out)},
            csv_rows=[[n, c.real, c.imag] for n, c in enumerate(out.coeffs)],
            csv_header=["n", "re", "im"],
        )
        return EXIT_OK

    if args.command == "matrix":
        n = args.order or _default_order()
        m = operator_matrix(_symbol_from_args(args), n)
        rows = [
            [f"{c.real!r}" if c.imag == 0 else f"{c.real!r}{c.imag:+}j" for c in row]
            for row in m.entries
        ]
        _emit(
            args,
            cfg,
            {"size": m.size, "entries": [[[c.real, c.imag] for c in row] for row in m.entries]},
            csv_rows=rows,
        )
        return EXIT_OK

    if args.command == "spectrum":
        n = args.order or _default_order()
        spec = truncated_spectrum(operator_matrix(_symbol_from_args(args), n))
        _emit(
            args,
            cfg,
            {"eigenvalues": [[ev.real, ev.imag] for ev in spec]},
            csv_rows=[[ev.real, ev.imag] for ev in spec],
            csv_header=["re", "im"],
        )
        return EXIT_OK

    if args.command == "eigenfunction":
        n = args.order or _default_order()
        psi = eigenfunction_psi(_symbol_from_args(args), args.n, n)
        _emit(
            args,
            cfg,
            {"coeffs": _series_pairs(psi)},
            csv_rows=[[k, c.real, c.imag] for k, c in enumerate(psi.coeffs)],
            csv_header=["n", "re", "im"],
        )
        return EXIT_OK

    if args.command == "classify":
        c = classify(args.alpha, args.beta)
        _emit(
            args,
            cfg,
            {"verdict": "+".join(c.verdict), "source": " / ".join(c.source)},
            csv_rows=[["+".join(c.verdict), " / ".join(c.source)]],
            csv_header=["verdict", "source"],
        )
        return EXIT_OK

    if args.command == "bound":
        value = bound_constant(args.alpha, args.beta)
        _emit(args, cfg, {"constant": value}, csv_rows=[[value]], csv_header=["constant"])
        return EXIT_OK

    if args.command == "counterexample":
        report = counterexample_probe(
            args.alpha, args.beta, args.which, default_probe_ts(args.tmax)
        )
        _emit(
            args,
            cfg,
            json.loads(report.to_json()),
            csv_rows=list(report.samples),
            csv_header=["t", "value"],
        )
        return EXIT_OK if report.verdict == "diverges" else EXIT_VERDICT

    if args.command == "compactness":
        p = BlochParams(args.alpha)
        grid = _grid_from_args(args)
        fam = null_family(args.kind, args.m_max, p, grid)
        report = compactness_probe(_symbol_from_args(args), p, fam, grid)
        _emit(
            args,
            cfg,
            json.loads(report.to_json()),
            csv_rows=list(report.samples),
            csv_header=["m", "image_norm"],
        )
        return EXIT_OK if report.verdict == "compact-consistent" else EXIT_VERDICT

    if args.command == "essnorm":
        p = BlochParams(args.alpha)
        grid = _grid_from_args(args)
        dilations = [float(t) for t in args.dilations.split(",")]
        family = default_test_family(p, grid)
        report = essential_norm_probe(_symbol_from_args(args), p, dilations, family, grid)
        result = json.loads(report.to_json())
        result["per_dilation"] = [
            {"dilation": d, "max_distance": v, "argmax_member": lab}
            for (d, v), lab in zip(report.samples, report.labels)
        ]
        _emit(
            args,
            cfg,
            result,
            csv_rows=list(report.samples),
            csv_header=["dilation", "max_distance"],
        )
        return EXIT_OK if report.verdict != "inconsistent" else EXIT_VERDICT

    if args.command == "preimage":
        g = _series_from_args(args)
        f = preimage_under_cesaro(g)
        roundtrip = apply_beta_cesaro(f, 1.0)
        n = min(g.order, roundtrip.order)
        err = float(np.max(np.abs(roundtrip.coeffs[: n + 1] - g.coeffs[: n + 1])))
        _emit(
            args,
            cfg,
            {"coeffs": _series_pairs(f), "roundtrip_max_error": err},
            csv_rows=[[k, c.real, c.imag] for k, c in enumerate(f.coeffs)],
            csv_header=["n", "re", "im"],
        )
        return EXIT_OK if err <= 1e-10 else EXIT_VERDICT

    raise _UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, SpectrumEmptyError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
