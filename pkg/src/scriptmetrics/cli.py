"""Command-line interface.

Exit status: 0 on success, 1 on bad input or usage, 2 on internal errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .distinctivity import DEFAULT_WEIGHTS, DifferenceWeightTable, distance_matrix
from .distributions import METHODS, MODELS, evaluate_fit, fit_discrete, make_params
from .formats import (
    bundled_data_dir,
    load_bundle,
    parse_alphabet_file,
    parse_comparison_file,
    parse_frequency_file,
    parse_mapping_file,
    parse_matrix_file,
)
from .model import DataError, representation_histogram
from .report import FORMATS, Report, emit_report
from .sections import (
    bundle_report,
    comparison_section,
    complexity_sections,
    distinctivity_section,
    fit_section,
    runs_section,
    uncertainty_section,
)
from .complexity import complexity_stats
from .uncertainty import mean_uncertainty

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _df_arg(value: str):
    if value == "auto":
        return "classes-1-params"
    if value in ("classes-1", "classes-1-params"):
        return value
    try:
        df = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or an integer, got {value!r}") from None
    if df < 1:
        raise argparse.ArgumentTypeError("degrees of freedom must be at least 1")
    return df


def _params_arg(value: str) -> list[float]:
    try:
        return [float(v) for v in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format (default: text)")

    parser = _Parser(prog="scriptmetrics", parents=[fmt],
                     description="Quantitative analysis of writing systems.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("complexity", parents=[fmt], help="letter complexities and their distribution")
    p.add_argument("alphabet", type=Path)

    p = sub.add_parser("runs-test", parents=[fmt], help="runs test for uniformity of complexities")
    p.add_argument("alphabet", type=Path)

    p = sub.add_parser("fit", parents=[fmt], help="fit a discrete model to a frequency table (CSV x,f)")
    p.add_argument("table", type=Path)
    p.add_argument("--model", choices=MODELS, default="ss-geometric")
    p.add_argument("--method", choices=METHODS, default="chisq-min")
    p.add_argument("--df", type=_df_arg, default="classes-1-params", help="'auto' (classes-1-params) or an integer")
    p.add_argument("--params", type=_params_arg, help="evaluate at fixed parameters (p,a or lambda) instead of fitting")

    p = sub.add_parser("uncertainty", parents=[fmt], help="mean orthographic uncertainty of a mapping table")
    p.add_argument("mapping", type=Path)
    p.add_argument("--compare", type=Path, help="CSV of label,U_bar,V rows to test against")
    p.add_argument("--label", default="target")
    p.add_argument("--variance-combination", choices=("sum", "difference"), default="sum")

    p = sub.add_parser("distinctivity", parents=[fmt], help="mean distinctivities from an alphabet or a matrix")
    p.add_argument("alphabet", type=Path, nargs="?")
    p.add_argument("--weights", type=Path, help="JSON file of difference weights")
    p.add_argument("--matrix", type=Path, help="distance matrix CSV to use instead of an alphabet")

    p = sub.add_parser("report", parents=[fmt], help="run every analysis on a dataset bundle")
    p.add_argument("--bundle", type=Path, default=None, help="bundle directory (default: the bundled reference data)")
    return parser


def run(args) -> Report:
    report = Report()
    if args.command == "complexity":
        for sec in complexity_sections(parse_alphabet_file(args.alphabet)):
            report.add(sec)
    elif args.command == "runs-test":
        report.add(runs_section(complexity_stats(parse_alphabet_file(args.alphabet)).distribution))
    elif args.command == "fit":
        table = parse_frequency_file(args.table)
        if args.params is not None:
            try:
                params = make_params(args.model, args.params)
            except TypeError:
                raise DataError(f"wrong number of parameters for {args.model}") from None
            fit = evaluate_fit(table, args.model, params, args.df)
        else:
            fit = fit_discrete(table, args.model, args.method, args.df)
        report.add(fit_section(fit, f"Fit of {args.model} to {args.table.name}"))
    elif args.command == "uncertainty":
        stats = mean_uncertainty(representation_histogram(parse_mapping_file(args.mapping)), args.label)
        report.add(uncertainty_section(stats))
        if args.compare is not None:
            report.add(comparison_section(stats, parse_comparison_file(args.compare), args.variance_combination))
    elif args.command == "distinctivity":
        if (args.alphabet is None) == (args.matrix is None):
            raise UsageError("distinctivity: give either an alphabet file or --matrix")
        if args.matrix is not None:
            if args.weights is not None:
                raise UsageError("distinctivity: --weights applies to alphabets only")
            matrix = parse_matrix_file(args.matrix)
        else:
            weights = DifferenceWeightTable.from_json(args.weights) if args.weights else DEFAULT_WEIGHTS
            matrix = distance_matrix(parse_alphabet_file(args.alphabet), weights)
        report.add(distinctivity_section(matrix))
    elif args.command == "report":
        report = bundle_report(load_bundle(args.bundle or bundled_data_dir()))
    return report


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = emit_report(run(args), getattr(args, "format", "text"))
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_INPUT
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
