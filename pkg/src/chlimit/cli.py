"""Command-line front end.

Exit codes: 0 success, 1 configuration error, 2 numerical guard failure,
3 I/O error, 4 invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Sequence

from .experiments import (
    ConfigError,
    ExperimentConfig,
    InvariantViolation,
    parse_config,
    run_lp_report,
    run_sweep,
    run_taylor,
    run_uniform,
    u0_diagnostics,
    write_csv,
)
from .solvers import SolverGuardError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_GUARD = 2
EXIT_IO = 3
EXIT_INVARIANT = 4

_DEFAULT_OUT = {
    "lp-check": "lp_report.csv",
    "taylor": "taylor_report.csv",
    "uniform": "uniform_report.csv",
    "sweep": "sweep_report.csv",
    "u0-info": "u0_info.csv",
}


def _parse_alpha_list(text: str) -> List[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse alpha list: {text!r}") from None
    if not values:
        raise ConfigError("alpha list is empty")
    for a in values:
        if not 0.0 <= a <= 1.0:
            raise ConfigError(f"alpha {a} outside [0, 1]")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chlimit",
        description=(
            "Spectral experiments around the zero-filter limit of the "
            "Camassa-Holm equation"
        ),
    )
    parser.add_argument("--config", default=None, help="key=value config file")
    parser.add_argument("--out", default=None, help="output CSV path")
    parser.add_argument(
        "--threads", type=int, default=1, help="worker threads for sweep rows"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("lp-check", help="verify the dyadic cutoff identities")

    taylor = sub.add_parser("taylor", help="Taylor-remainder scaling in time")
    taylor.add_argument(
        "--alphas",
        default="0,0.5,1",
        help="comma-separated filter parameters (default 0,0.5,1)",
    )

    uniform = sub.add_parser(
        "uniform", help="uniform-in-alpha boundedness of the Besov norm"
    )
    uniform.add_argument(
        "--alphas",
        default=",".join(str(2.0**-m) for m in range(9)),
        help="comma-separated filter parameters (default 1,1/2,...,2^-8)",
    )
    uniform.add_argument(
        "--t-end", type=float, default=0.1, help="time horizon (default 0.1)"
    )

    sweep = sub.add_parser("sweep", help="zero-filter non-convergence sweep")
    sweep.add_argument(
        "--no-contrast",
        action="store_true",
        help="skip the single-packet convergence contrast report",
    )

    sub.add_parser("u0-info", help="print diagnostics of the lacunary datum")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = (
            parse_config(args.config) if args.config else ExperimentConfig().validate()
        )
        out = Path(args.out or config.output_path or _DEFAULT_OUT[args.command])

        if args.command == "lp-check":
            run_lp_report(config, out)
            print(f"cutoff identities verified; report written to {out}")
        elif args.command == "taylor":
            slopes = run_taylor(config, _parse_alpha_list(args.alphas), out)
            for alpha, slope in slopes.items():
                print(f"alpha={alpha:g}: fitted remainder slope {slope:.4f}")
            print(f"report written to {out}")
        elif args.command == "uniform":
            sups = run_uniform(
                config, _parse_alpha_list(args.alphas), args.t_end, out
            )
            for alpha, sup in sups.items():
                print(f"alpha={alpha:g}: sup-in-time Besov norm {sup:.6g}")
            print(f"report written to {out}")
        elif args.command == "sweep":
            rows = run_sweep(
                config, out, contrast=not args.no_contrast, threads=args.threads
            )
            eta0 = min(r.diff_besov for r in rows)
            for r in rows:
                print(
                    f"n={r.n}: diff_besov={r.diff_besov:.6e} "
                    f"block_n={r.block_n_contrib:.6e} floor={r.product_floor:.4f}"
                )
            print(f"eta0 (min Besov distance) = {eta0:.6e}")
            print(f"report written to {out}")
        elif args.command == "u0-info":
            entries = u0_diagnostics(config)
            for key, value in entries:
                print(f"{key} = {value}")
            if args.out or config.output_path:
                write_csv(out, config, ["key", "value"], entries)
                print(f"report written to {out}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverGuardError as exc:
        print(f"numerical guard failure: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
