"""Command line interface: ``khbound compute | kleinian | sweep``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .path_algebra import PathBudgetExceeded
from .pipeline import (
    ENGINES,
    Config,
    EngineDisagreement,
    SweepFailure,
    default_path_budget,
    kleinian_sweep,
    run_pipeline,
    sweep,
)
from .quiver import ValidationError, build_quiver, validate_params

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VALIDATION = 2
EXIT_CHECK = 3

log = logging.getLogger("khbound")


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khbound",
        description="Upper bound for KH_{-1} of a cyclic quotient singularity (cokernel of M).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="bound for one weight vector")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=_csv_ints, required=True, help="weights, e.g. 1,1,1")
    p.add_argument("--engine", choices=ENGINES, default=None,
                   help="Cartan engine (default: both for m <= 12, normalform above)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--dot", metavar="PATH", help="write the final quiver in DOT format")
    p.add_argument("--path-budget", type=int, default=None)
    p.add_argument("--figure", metavar="PATH", help="write a heatmap of C and M")

    p = sub.add_parser("kleinian", help="type A_{m-1} family for m = 2..MAX")
    p.add_argument("--max", type=int, required=True, dest="m_max")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--figure", metavar="PATH")

    p = sub.add_parser("sweep", help="every admissible weight vector for one m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--engine", choices=ENGINES, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--path-budget", type=int, default=None)
    p.add_argument("--figure", metavar="PATH")
    return parser


def _config(args) -> Config:
    budget = getattr(args, "path_budget", None)
    return Config(engine=getattr(args, "engine", None),
                  path_budget=budget if budget is not None else default_path_budget())


def _compute(args, out) -> int:
    params = validate_params(args.m, args.a)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(build_quiver(params)[2].to_dot())
    report = run_pipeline(params, _config(args))
    out.write(report.to_json() + "\n" if args.format == "json" else report.to_text())
    if args.figure:
        from .plotting import plot_report

        plot_report(report, args.figure)
    return EXIT_OK if report.ok else EXIT_CHECK


def _kleinian(args, out) -> int:
    results = kleinian_sweep(args.m_max, _config(args))
    if args.format == "json":
        payload = [{"m": m, "free_rank": g.free_rank, "invariant_factors": [str(f) for f in g.invariant_factors],
                    "group": str(g)} for m, g in results]
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        for m, g in results:
            out.write(f"m={m:<4d} upper bound (quotient): {g}\n")
    if args.figure:
        from .plotting import plot_kleinian

        plot_kleinian(results, args.figure)
    return EXIT_OK


def _sweep(args, out) -> int:
    reports = sweep(args.m, _config(args))
    if args.format == "json":
        out.write(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        for r in reports:
            status = "ok" if r.ok else "CHECK FAILED: " + ", ".join(c.name for c in r.failed_checks())
            out.write(f"{r.params.label():<28s} upper bound (quotient): {str(r.bound):<24s} {status}\n")
    if args.figure:
        from .plotting import plot_sweep

        plot_sweep(reports, args.figure)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_CHECK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    handler = {"compute": _compute, "kleinian": _kleinian, "sweep": _sweep}[args.command]
    try:
        return handler(args, out)
    except ValidationError as exc:
        log.error("invalid parameters: %s", exc)
        return EXIT_VALIDATION
    except (EngineDisagreement, SweepFailure) as exc:
        log.error("cross-check failed: %s", exc)
        return EXIT_CHECK
    except PathBudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_ERROR
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
