"""
Main entry point for the walk_centrality application.

Commands:
1. compute: rank the nodes of a temporal edge list by temporal walk centrality
2. compare: Kendall tau-b correlation matrix between ranking files
3. error: mean relative error of an approximate ranking against an exact one
4. dlg-export: the directed line graph as a DOT file
5. stats: graph statistics as JSON
"""

import argparse
import logging
import os
import sys
from dotenv import load_dotenv
from walk_centrality.application import constants as const
from walk_centrality.application import pipeline
from walk_centrality.application.config import build_run_config
from walk_centrality.application.errors import ConfigurationError, WalkCentralityError

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigurationError(f"{self.prog}: {message}")


def _add_graph_arguments(parser):
    parser.add_argument("--input", required=True, help="edge list with one 'src dst t' triple per line")
    parser.add_argument("--undirected", action="store_true", help="add the reverse of every edge")
    parser.add_argument("--delta", type=int, default=1, help="transition time of every edge (default 1)")
    parser.add_argument("--interval", type=int, nargs=2, metavar=("START", "END"),
                        help="keep edges with START <= t and t + delta <= END")


def _add_phi_arguments(parser):
    parser.add_argument("--phi", default=const.ONE, help="alpha:<v>, time, combined:<v> or one (default one)")
    parser.add_argument("--phi-in", help="weight function for incoming walks (default --phi)")
    parser.add_argument("--phi-out", help="weight function for outgoing walks (default --phi)")


def build_parser():
    parser = ArgumentParser(prog="walk_centrality", description="Temporal walk centrality")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    compute = commands.add_parser(const.COMPUTE, help="rank nodes by centrality")
    _add_graph_arguments(compute)
    _add_phi_arguments(compute)
    compute.add_argument("--phi-m", default=const.ONE, help="weight function at the middle node (default one)")
    compute.add_argument("--method", default=const.AUTO, choices=const.METHODS)
    compute.add_argument("--epsilon", type=float, help=f"approx tolerance (default ${const.EPSILON} or "
                                                       f"{const.DEFAULT_EPSILON:g})")
    compute.add_argument("--max-length", type=int, help="longest walk counted by approx and oracle")
    compute.add_argument("--mode", default=const.TWC, choices=const.MODES)
    compute.add_argument("--threads", type=int, help=f"worker threads (default ${const.THREADS} or 1)")
    compute.add_argument("--output", help="ranking TSV path (default stdout)")

    compare = commands.add_parser(const.COMPARE, help="correlate ranking files")
    compare.add_argument("results", nargs="+", help="ranking TSV files")
    compare.add_argument("--top", type=float, help="correlate only the top fraction of each ranking")
    compare.add_argument("--output", help="CSV path (default stdout)")

    error = commands.add_parser(const.ERROR, help="mean relative error of an approximation")
    error.add_argument("exact", help="exact ranking TSV")
    error.add_argument("approx", help="approximate ranking TSV")
    error.add_argument("--output", help="JSON path (default stdout)")

    dlg_export = commands.add_parser(const.DLG_EXPORT, help="write the directed line graph as DOT")
    _add_graph_arguments(dlg_export)
    _add_phi_arguments(dlg_export)
    dlg_export.add_argument("--output", help="DOT path (default stdout)")

    stats = commands.add_parser(const.STATS, help="print graph statistics")
    _add_graph_arguments(stats)
    stats.add_argument("--output", help="JSON path (default stdout)")
    return parser


def run_config_from_args(args):
    options = vars(args)
    if args.command == const.COMPARE:
        inputs = args.results
    elif args.command == const.ERROR:
        inputs = [args.exact, args.approx]
    else:
        inputs = [args.input]
    values = {key: options.get(key) for key in ("undirected", "delta", "interval", "phi", "phi_in", "phi_out",
                                                "phi_m", "method", "epsilon", "max_length", "mode", "output",
                                                "threads", "top")}
    return build_run_config(command=args.command, inputs=inputs, **values)


def configure_logging(verbose=False):
    level = logging.DEBUG if verbose else os.environ.get(const.LOG_LEVEL, const.DEFAULT_LOG_LEVEL).upper()
    log_format = "%(asctime)s %(levelname)s %(name)s: %(message)s"
    try:
        logging.basicConfig(level=level, stream=sys.stderr, format=log_format)
    except ValueError:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format=log_format)
        logger.warning(f"Unknown log level {level!r} in {const.LOG_LEVEL}. Falling back to INFO.")


def main(argv=None) -> int:
    load_dotenv()
    configure_logging("--verbose" in (sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        return pipeline.run(run_config_from_args(args))
    except WalkCentralityError as e:
        logger.error(str(e))
        return e.exit_code


if __name__ == '__main__':
    sys.exit(main())
