"""Command-line entry point for source-loc."""

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .bench.config import BenchConfig, load_config_file
from .bench.pipeline import evaluate_predictions, run_pipeline
from .bench.report import read_predictions, write_report
from .core.corpus import read_pairs, summarize_pairs, write_pairs
from .core.datasets import DatasetRegistry, builtin_graph, load_dataset, registry, validate_against_registry
from .core.diffusion import DiffusionModel, generate_pairs
from .core.errors import ConfigError, SourceLocError
from .core.graph import Graph, graph_stats, load_edge_list
from .methods.catalog import MethodCatalog
from .ui.rich_display import RichReportDisplay
from .ui.terminal_output import TerminalOutputManager, configure_logging
from .utils.config import (DEFAULT_MASTER_SEED, DEFAULT_NUM_PAIRS, DEFAULT_SEEDS_PER_PAIR,
                           DEFAULT_WORKERS, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, OUTPUT_FORMATS,
                           THRESHOLD_MODES)

logger = logging.getLogger(__name__)

# `run` flag dests, each named after the BenchConfig field it sets
RUN_FLAG_FIELDS = (
    "builtin", "graph_path", "dataset", "model", "p", "num_pairs", "seeds_per_pair", "pairs_file",
    "workers", "split", "master_seed", "method", "threshold_mode", "alpha", "max_seeds",
    "lambda_ripple", "k", "hidden", "lr", "epochs", "init_seed", "output", "output_format",
    "predictions_out", "emit_mdl", "save_model", "load_model",
)


class UsageError(Exception):
    """Bad command-line usage."""


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so exit codes stay ours."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_graph_options(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("graph")
    group.add_argument("--builtin", help="embedded graph name (karate)")
    group.add_argument("--graph", dest="graph_path", help="edge-list file")
    group.add_argument("--dataset", help="registry dataset the graph file is checked against")


def _add_simulation_options(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("simulation")
    group.add_argument("--model", choices=("ic", "lt"), type=str.lower, help="diffusion model")
    group.add_argument("--p", type=float, help="IC edge transmission probability")
    group.add_argument("--pairs", dest="num_pairs", type=int, help="number of seed-diffusion pairs")
    group.add_argument("--seeds", dest="seeds_per_pair", type=int, help="seeds per pair")
    group.add_argument("--seed", dest="master_seed", type=int, help="master seed")
    group.add_argument("--workers", type=int, help="parallel simulation workers")


def build_parser() -> CliParser:
    parser = CliParser(prog="source-loc", description="Graph source localization benchmark")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more log output")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    commands = parser.add_subparsers(dest="command", parser_class=CliParser)

    stats = commands.add_parser("stats", help="graph statistics and registry check")
    _add_graph_options(stats)
    stats.add_argument("--pairs-file", help="also summarize a pair corpus")
    stats.add_argument("--registry", action="store_true", help="list the benchmark dataset registry")

    simulate = commands.add_parser("simulate", help="generate a seed-diffusion pair corpus")
    _add_graph_options(simulate)
    _add_simulation_options(simulate)
    simulate.add_argument("-o", "--output", required=True, help="JSON Lines output file")

    run = commands.add_parser("run", help="run the full localization benchmark")
    run.add_argument("--config", help="JSON config file (flags override it)")
    _add_graph_options(run)
    _add_simulation_options(run)
    run.add_argument("--pairs-file", help="read pairs instead of simulating them")
    bench = run.add_argument_group("benchmark")
    bench.add_argument("--split", type=float, help="training fraction in (0, 1)")
    bench.add_argument("--method", type=str.lower, choices=MethodCatalog.get_names())
    bench.add_argument("--threshold-mode", choices=THRESHOLD_MODES,
                       help="peak: method decision rule; f1: score threshold tuned on training pairs")
    bench.add_argument("--alpha", type=float, help="LPSI propagation weight")
    bench.add_argument("--max-seeds", type=int, help="NetSleuth seed limit")
    bench.add_argument("--lambda-ripple", type=float, help="NetSleuth ripple weight")
    bench.add_argument("--k", type=int, help="OJC center count")
    bench.add_argument("--hidden", type=int, help="GCNSI hidden width")
    bench.add_argument("--lr", type=float, help="GCNSI learning rate")
    bench.add_argument("--epochs", type=int, help="GCNSI training epochs")
    bench.add_argument("--init-seed", type=int, help="GCNSI weight initialization seed")
    outputs = run.add_argument_group("outputs")
    outputs.add_argument("-o", "--output", help="report file")
    outputs.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS)
    outputs.add_argument("--predictions-out", help="per-pair predictions (JSON Lines)")
    outputs.add_argument("--emit-mdl", help="NetSleuth description-length diagnostics (JSON Lines)")
    outputs.add_argument("--save-model", help="write the trained GCNSI model")
    outputs.add_argument("--load-model", help="use a saved GCNSI model instead of training")

    evaluate = commands.add_parser("eval", help="score a prediction file against a pair corpus")
    _add_graph_options(evaluate)
    evaluate.add_argument("--pairs-file", required=True)
    evaluate.add_argument("--predictions", required=True)
    evaluate.add_argument("-o", "--output", help="report file")
    evaluate.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default="json")

    commands.add_parser("methods", help="list localization methods and their parameters")
    return parser


def _graph_from_args(args, validate: bool = True) -> Graph:
    if (args.builtin is None) == (args.graph_path is None):
        raise UsageError("give exactly one of --builtin and --graph")
    if args.builtin is not None:
        return builtin_graph(args.builtin)
    if validate and args.dataset is not None:
        return load_dataset(args.dataset, args.graph_path)
    return load_edge_list(args.graph_path)


def cmd_stats(args, out: TerminalOutputManager, display: RichReportDisplay) -> int:
    if args.registry:
        out.print(display.registry_table(registry()))
        if args.builtin is None and args.graph_path is None:
            return EXIT_OK
    g = _graph_from_args(args, validate=False)
    out.print_line(str(graph_stats(g)))
    dataset = args.dataset or args.builtin
    if dataset is not None and DatasetRegistry.get_by_name(dataset) is not None:
        out.print(display.validation_table(validate_against_registry(g, dataset)))
    if args.pairs_file:
        out.print(display.corpus_table(summarize_pairs(read_pairs(args.pairs_file, g))))
    return EXIT_OK


def cmd_simulate(args, out: TerminalOutputManager, display: RichReportDisplay) -> int:
    g = _graph_from_args(args)
    try:
        model = DiffusionModel.from_name(args.model or "ic", args.p)
    except SourceLocError as exc:
        raise ConfigError(str(exc)) from exc
    pairs = generate_pairs(
        g, model,
        DEFAULT_NUM_PAIRS if args.num_pairs is None else args.num_pairs,
        DEFAULT_SEEDS_PER_PAIR if args.seeds_per_pair is None else args.seeds_per_pair,
        DEFAULT_MASTER_SEED if args.master_seed is None else args.master_seed,
        workers=DEFAULT_WORKERS if args.workers is None else args.workers,
    )
    write_pairs(args.output, g, pairs)
    out.print(display.corpus_table(summarize_pairs(pairs)))
    out.print_success(f"Wrote {len(pairs)} pairs to {args.output}")
    return EXIT_OK


def cmd_run(args, out: TerminalOutputManager, display: RichReportDisplay) -> int:
    file_values = load_config_file(args.config) if args.config else None
    cfg = BenchConfig.merge(file_values, {name: getattr(args, name) for name in RUN_FLAG_FIELDS})
    report = run_pipeline(cfg)
    if cfg.output:
        write_report(report, cfg.output, cfg.output_format)
    display.show_report(report)
    return EXIT_OK


def cmd_eval(args, out: TerminalOutputManager, display: RichReportDisplay) -> int:
    g = _graph_from_args(args)
    pairs = read_pairs(args.pairs_file, g)
    predictions = read_predictions(args.predictions, g)
    config = {"pairs_file": args.pairs_file, "predictions": args.predictions}
    report = evaluate_predictions(g, pairs, predictions, config)
    if args.output:
        write_report(report, args.output, args.output_format)
    display.show_report(report)
    return EXIT_OK


def cmd_methods(args, out: TerminalOutputManager, display: RichReportDisplay) -> int:
    out.print(display.methods_table())
    return EXIT_OK


COMMANDS = {
    "stats": cmd_stats,
    "simulate": cmd_simulate,
    "run": cmd_run,
    "eval": cmd_eval,
    "methods": cmd_methods,
}


def cli_main(argv: Optional[List[str]] = None, out: Optional[TerminalOutputManager] = None) -> int:
    """Run one subcommand; returns 0 on success, 1 on usage errors, 2 on runtime errors."""
    out = out or TerminalOutputManager()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        out.error_console.print(parser.format_usage().rstrip())
        out.print_error(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0)
    if args.command is None:
        out.error_console.print(parser.format_usage().rstrip())
        out.print_error("a subcommand is required")
        return EXIT_USAGE

    configure_logging(-1 if args.quiet else args.verbose, out.error_console)
    display = RichReportDisplay(out.console)
    try:
        return COMMANDS[args.command](args, out, display)
    except (UsageError, ConfigError) as exc:
        out.print_error(str(exc))
        return EXIT_USAGE
    except (SourceLocError, OSError) as exc:
        logger.debug("Command failed", exc_info=True)
        out.print_error(str(exc))
        return EXIT_RUNTIME


def main():
    """Console script entry point."""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
