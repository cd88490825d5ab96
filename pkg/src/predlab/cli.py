"""Command-line front end.

Subcommands: sigma, tau, geomean, eigen, verify <id>, run <config>.
Exit codes: 0 pass, 1 verdict failure, 2 usage or parse error,
3 numerical degeneracy.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from mpmath import mp, mpf

from .arcs import ArcSetError
from .covariance import covariances_for
from .eigen import min_eigenvalue
from .capacity import tau_arcset
from .geomean import geometric_mean_numeric
from .grammar import SpecParseError, parse_arcs, parse_density
from .models import IntegrabilityError, ModelError
from .precision import PrecisionBudgetError
from .runner import (EXIT_DEGENERATE, EXIT_PASS, EXIT_USAGE, EXIT_VERDICT,
                     Scenario, atomic_write, run_config, run_scenario)
from .toeplitz import levinson


def _add_common(p):
    p.add_argument("--precision", type=int, default=256, help="working precision in bits")
    p.add_argument("--n", type=int, default=100, help="largest prediction step")
    p.add_argument("--out", default="", help="output directory (default: stdout only)")
    p.add_argument("--format", choices=("csv", "json"), default="json")


def build_parser():
    ap = argparse.ArgumentParser(prog="predlab",
                                 description="finite prediction errors of stationary "
                                             "sequences from spectral densities")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", help="Levinson trace for a density spec")
    p.add_argument("density")
    _add_common(p)

    p = sub.add_parser("tau", help="transfinite diameter of an arc set")
    p.add_argument("arcs", help="[(center,half_length),...] or 'full'")
    p.add_argument("--fekete-n", type=int, default=0)
    p.add_argument("--out", default="")

    p = sub.add_parser("geomean", help="geometric mean / log-integrability of a density")
    p.add_argument("density")
    p.add_argument("--precision", type=int, default=192)
    p.add_argument("--out", default="")

    p = sub.add_parser("eigen", help="extreme eigenvalues of the covariance matrix")
    p.add_argument("density")
    _add_common(p)
    p.add_argument("--tol", type=float, default=0.0)
    p.add_argument("--max", action="store_true", help="also compute the top eigenvalue")

    p = sub.add_parser("verify", help="run a named verification scenario")
    p.add_argument("id", choices=("rosenblatt1", "rosenblatt2", "ratio", "davisson",
                                  "inoue", "table1", "hat-pollaczek", "eigen-rates"))
    p.add_argument("--density", default="")
    p.add_argument("--factor", default="")
    p.add_argument("--alpha", type=float, default=math.pi / 2)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--d", type=float, default=0.25)
    _add_common(p)

    p = sub.add_parser("run", help="run a JSON config of scenarios")
    p.add_argument("config")
    p.add_argument("--workers", type=int, default=0)
    p.add_argument("--precision", type=int, default=0, help="override every scenario")
    p.add_argument("--n", type=int, default=0, help="override every scenario")
    p.add_argument("--out", default="", help="override every scenario")
    return ap


def _emit(args, name, payload_json: str, payload_csv: str = ""):
    if args.out:
        atomic_write(os.path.join(args.out, f"{name}.json"), payload_json)
        if payload_csv:
            atomic_write(os.path.join(args.out, f"{name}.csv"), payload_csv)
    if getattr(args, "format", "json") == "csv" and payload_csv:
        sys.stdout.write(payload_csv)
    else:
        sys.stdout.write(payload_json)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (SpecParseError, ArcSetError, ModelError, IntegrabilityError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


def _dispatch(args) -> int:
    if args.command == "sigma":
        f = parse_density(args.density)
        cov = covariances_for(f, args.n, args.precision)
        trace = levinson(cov, args.n)
        _emit(args, "trace", json.dumps(trace.summary(), indent=2, sort_keys=True) + "\n",
              trace.to_csv())
        return EXIT_DEGENERATE if trace.degenerate_at >= 0 else EXIT_PASS

    if args.command == "tau":
        arcs = parse_arcs(args.arcs)
        res = tau_arcset(arcs, fekete_n=args.fekete_n)
        payload = {
            "method": res.method,
            "value": float(res.value) if res.value is not None else None,
            "bracket": [float(x) for x in res.bracket] if res.bracket else None,
            "n_points": res.n_points,
        }
        _emit(args, "tau", json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return EXIT_PASS

    if args.command == "geomean":
        f = parse_density(args.density)
        res = geometric_mean_numeric(f, args.precision)
        _emit(args, "geomean", json.dumps(res.to_json_dict(), indent=2, sort_keys=True) + "\n")
        return EXIT_PASS

    if args.command == "eigen":
        f = parse_density(args.density)
        cov = covariances_for(f, args.n, args.precision)
        tol = mpf(args.tol) if args.tol else None
        rec = min_eigenvalue(cov, args.n, args.precision, tol=tol, compute_max=args.max)
        payload = {
            "n": rec.n,
            "lambda_min": float(rec.lambda_min),
            "lambda_max": float(rec.lambda_max) if rec.lambda_max is not None else None,
            "method": rec.method,
            "bracket": [float(x) for x in rec.bracket] if rec.bracket else None,
            "flag": rec.flag,
        }
        _emit(args, "eigen", json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return EXIT_DEGENERATE if rec.flag else EXIT_PASS

    if args.command == "verify":
        scen = Scenario(id=f"verify-{args.id}",
                        density=args.density or _default_density(args),
                        n_max=args.n, precision_bits=args.precision,
                        factor=args.factor, verify=(args.id,),
                        params={"alpha": args.alpha, "delta": args.delta,
                                "a": args.a, "d": args.d},
                        out_dir=args.out or ".")
        summary = run_scenario(scen)
        sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
        if summary.get("degenerate"):
            return EXIT_DEGENERATE
        return EXIT_PASS if summary["ok"] else EXIT_VERDICT

    if args.command == "run":
        return run_config(args.config, max_workers=args.workers,
                          overrides={"precision_bits": args.precision,
                                     "n_max": args.n, "out_dir": args.out})

    return EXIT_USAGE


def _default_density(args) -> str:
    if args.id in ("rosenblatt2", "hat-pollaczek", "table1"):
        return f"pollaczek:a={args.a!r}" if args.id != "hat-pollaczek" \
            else f"hat_pollaczek:a={args.a!r}"
    if args.id == "inoue":
        return f"arfima:d={args.d!r}"
    if args.id in ("rosenblatt1", "davisson"):
        alpha = args.alpha
        if args.id == "davisson" and args.delta:
            return (f"arc:base=const(1.0),arcs=[({args.delta + alpha / 2!r},{alpha / 2!r}),"
                    f"({-(args.delta + alpha / 2)!r},{alpha / 2!r})]")
        return f"arc:base=const(1.0),arcs=[({math.pi / 2!r},{alpha!r})]"
    if args.id == "eigen-rates":
        return "ma1:b=1.0,sigma2=1.0"
    return "const(1.0)"


if __name__ == "__main__":
    sys.exit(main())
