# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Command-line front end of the graph index builders and auditors."""

import argparse
import csv
import logging
from pathlib import Path
import sys
import time

from ..__version__ import __version__
from ..build import build_pruned, build_svg, build_svg_l0
from ..common import default_jobs, write_json
from ..data import Dataset, load_dataset, save_dataset
from ..exceptions import SvgError
from ..graph import DirectedGraph, load_graph, save_graph
from ..navigability import audit_svg, evaluate_recall
from .config import (
    BuildStats,
    DatasetSource,
    ExperimentConfig,
    Method,
    parse_kernel,
    parse_mode,
    parse_pool,
    parse_search,
    parse_synthetic,
)
from .presets import PRESET_ALIASES, load_preset, preset_names
from .sweep import run_sweep

log = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)8s] %(message)s (%(filename)s:%(lineno)s)"

EVAL_COLUMNS = ["method", "d", "n", "sigma", "M", "L", "mode", "recall", "mean_kernel_evals"]


def _argument_type(parse):
    """Wrap a parser so argparse reports its ``ValueError`` as a usage error."""

    def convert(text):
        try:
            return parse(text)
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e)) from e

    convert.__name__ = parse.__name__.removeprefix("parse_")
    return convert


def _add_data_arguments(parser: argparse.ArgumentParser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", type=Path, help="Dataset file (.fvecs or .csv)")
    source.add_argument(
        "--synthetic", type=_argument_type(parse_synthetic), help="Uniform data as <n>,<d>,<seed>"
    )
    subset = parser.add_mutually_exclusive_group()
    subset.add_argument("--head", type=int, help="Keep the first k vectors")
    subset.add_argument("--sample", type=int, help="Keep k vectors drawn without replacement")
    parser.add_argument("--seed", type=int, default=0, help="Seed of --sample (default: 0)")
    parser.add_argument(
        "--kernel",
        type=_argument_type(parse_kernel),
        default=parse_kernel("euc,1.0"),
        help="Similarity and width as <sim>,<sigma> (default: euc,1.0)",
    )


def _add_method_arguments(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--method",
        choices=[method.value for method in Method],
        default=Method.SVG.value,
        help="Construction method (default: svg)",
    )
    parser.add_argument("--M", dest="max_out_degree", type=int, default=0, help="Out-degree bound")
    parser.add_argument(
        "--pool",
        type=_argument_type(parse_pool),
        default=None,
        help="Candidate pool: full, current, knn,<r> or knn,=<size> (default: full)",
    )
    parser.add_argument("--lam", type=float, default=1.2, help="Vamana factor (default: 1.2)")
    parser.add_argument("--theta", type=float, default=60.0, help="SSG angle (default: 60)")
    parser.add_argument(
        "--pursuit-iterations", type=int, default=None, help="Round limit of the subspace pursuit"
    )


def _add_search_arguments(parser: argparse.ArgumentParser, default_mode: bool = True):
    parser.add_argument(
        "--search",
        type=_argument_type(parse_search),
        default=1,
        help="greedy or beam,<L> (default: greedy)",
    )
    parser.add_argument(
        "--mode",
        dest="modes",
        type=_argument_type(parse_mode),
        action="append",
        help="Entry policy: all, fixed or random,<seed>; repeatable"
        + (" (default: all)" if default_mode else ""),
    )


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser of the ``svg-index`` command."""
    parser = argparse.ArgumentParser(
        prog="svg-index", description="Build, search and audit kernel graph indices."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug messages")
    verbosity.add_argument("--quiet", action="store_true", help="Log errors only")
    parser.add_argument(
        "--jobs", type=int, default=None, help="Worker threads (default: SVG_JOBS or 1)"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", help="Build a graph index")
    _add_data_arguments(build)
    _add_method_arguments(build)
    build.add_argument("--output", type=Path, required=True, help="Graph file to write")
    build.add_argument(
        "--stats", type=Path, help="Stats JSON to write (default: <output>.stats.json)"
    )

    evaluate = commands.add_parser("eval", help="Measure recall@1 of a graph index")
    _add_data_arguments(evaluate)
    _add_method_arguments(evaluate)
    _add_search_arguments(evaluate)
    evaluate.add_argument("--graph", type=Path, help="Evaluate this graph instead of building one")
    evaluate.add_argument("--output", type=Path, help="CSV file to append rows to")

    audit = commands.add_parser("audit", help="Audit the navigability of a support vector graph")
    _add_data_arguments(audit)
    _add_search_arguments(audit, default_mode=False)
    audit.add_argument(
        "--delaunay-check", action="store_true", help="Check edges against the Delaunay graph"
    )
    audit.add_argument("--bins", type=int, default=20, help="Slack histogram bins (default: 20)")
    audit.add_argument(
        "--output",
        type=Path,
        required=True,
        help="Output prefix of <prefix>.json, <prefix>.summary.csv and <prefix>.epsilon.csv",
    )

    sweep = commands.add_parser("sweep", help="Run a parameter sweep preset")
    names = ", ".join([*preset_names(), *PRESET_ALIASES])
    sweep.add_argument("preset", help=f"Preset name ({names}) or JSON file")
    sweep.add_argument("--seeds", type=int, help="Override the number of realizations")
    sweep.add_argument("--n", type=int, help="Override the number of vectors per set")
    sweep.add_argument("--output", type=Path, help="CSV file to write (default: stdout)")

    convert = commands.add_parser("convert", help="Convert a dataset between fvecs and CSV")
    convert.add_argument("source", type=Path)
    convert.add_argument("target", type=Path)
    return parser


def _configure_logging(args):
    level = logging.WARNING
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    logging.basicConfig(level=level, format=LOG_FORMAT)


def _experiment(args, jobs: int) -> ExperimentConfig:
    settings = {
        "command": args.command,
        "source": DatasetSource(
            path=args.input,
            synthetic=args.synthetic,
            head=args.head,
            sample=args.sample,
            sample_seed=args.seed,
        ),
        "kernel": args.kernel,
        "jobs": jobs,
    }
    for name in ("method", "max_out_degree", "pool", "lam", "theta", "pursuit_iterations"):
        value = getattr(args, name, None)
        if value is not None:
            settings[name] = value
    if getattr(args, "search", None) is not None:
        settings["queue_length"] = args.search
    if getattr(args, "modes", None):
        settings["modes"] = args.modes
    return ExperimentConfig(**settings)


def build_graph(config: ExperimentConfig, data: Dataset) -> DirectedGraph:
    """Build the graph index an experiment describes."""
    if config.method == Method.SVG:
        return build_svg(data, config.kernel, config.build_config().nnls, config.jobs)
    if config.method == Method.SVG_L0:
        return build_svg_l0(data, config.kernel, config.max_out_degree, config.build_config())
    return build_pruned(data, config.kernel, config.prune_rule(), config.build_config())


def cmd_build(args, jobs: int) -> int:
    """Build a graph and write it with its stats."""
    config = _experiment(args, jobs)
    data = config.source.load()
    start = time.perf_counter()
    g = build_graph(config, data)
    seconds = time.perf_counter() - start
    save_graph(g, args.output)
    stats = BuildStats(
        dataset=data.name,
        n=data.n,
        d=data.d,
        method=config.method,
        kernel=config.kernel.label(),
        max_out_degree=config.max_out_degree,
        pool=config.pool.label(),
        degree=g.degree_stats(),
        seconds=seconds,
    )
    write_json(stats, args.stats or args.output.with_name(args.output.name + ".stats.json"))
    print(f"built {config.method.value} over {data.n} vectors in {seconds:.3f}s")
    return 0


def _write_rows(rows: list[list], path: Path | None):
    if path is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(EVAL_COLUMNS)
        writer.writerows(rows)
        return
    header = not path.exists() or path.stat().st_size == 0
    with path.open("a", encoding="utf-8", newline="") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        if header:
            writer.writerow(EVAL_COLUMNS)
        writer.writerows(rows)


def cmd_eval(args, jobs: int) -> int:
    """Evaluate recall@1 of a built or loaded graph, one CSV row per entry mode."""
    config = _experiment(args, jobs)
    data = config.source.load()
    if args.graph is not None:
        g = load_graph(args.graph).freeze()
    else:
        g = build_graph(config, data)
    rows = []
    for mode in config.modes:
        result = evaluate_recall(g, data, config.kernel, config.search_params(), mode)
        rows.append(
            [
                config.method.value,
                data.d,
                data.n,
                repr(config.kernel.sigma),
                config.max_out_degree,
                config.queue_length,
                result.mode,
                repr(result.recall),
                repr(result.mean_kernel_evals),
            ]
        )
    _write_rows(rows, args.output)
    return 0


def cmd_audit(args, jobs: int) -> int:
    """Audit the support vector graph and write the JSON report and the CSV summaries."""
    config = _experiment(args, jobs)
    data = config.source.load()
    report = audit_svg(
        data,
        config.kernel,
        config.build_config().nnls,
        config.search_params(),
        args.modes or (),
        delaunay_check=args.delaunay_check,
        jobs=config.jobs,
    )
    prefix = args.output
    write_json(report, prefix.with_name(prefix.name + ".json"))
    with prefix.with_name(prefix.name + ".summary.csv").open(
        "w", encoding="utf-8", newline=""
    ) as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["metric", "value"])
        writer.writerows(report.summary_rows())
    with prefix.with_name(prefix.name + ".epsilon.csv").open(
        "w", encoding="utf-8", newline=""
    ) as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["lower", "upper", "count"])
        for b in report.epsilon_histogram(args.bins):
            writer.writerow([repr(b.lower), repr(b.upper), b.count])
    print(f"epsilon {report.epsilon!r}, {len(report.violations)} violations")
    return 0


def cmd_sweep(args, jobs: int) -> int:
    """Run a sweep preset and write its CSV."""
    preset = load_preset(args.preset)
    changes = {}
    if args.seeds is not None:
        changes["seeds"] = args.seeds
    if args.n is not None:
        changes["n"] = args.n
    if changes:
        preset = preset.replace(**changes)
    table = run_sweep(preset, jobs)
    if args.output is None:
        table.write_csv(sys.stdout)
    else:
        table.save(args.output)
    return 0


def cmd_convert(args, jobs: int) -> int:
    """Convert a dataset file to the format of the target suffix."""
    save_dataset(load_dataset(args.source), args.target)
    return 0


COMMANDS = {
    "build": cmd_build,
    "eval": cmd_eval,
    "audit": cmd_audit,
    "sweep": cmd_sweep,
    "convert": cmd_convert,
}


def main(argv: list[str] | None = None) -> int:
    """Run the ``svg-index`` command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    if jobs < 1:
        parser.error(f"--jobs must be at least 1, got {jobs}")
    try:
        return COMMANDS[args.command](args, jobs)
    except (SvgError, ValueError, OSError) as e:
        log.error(f"{args.command} failed: {e}")
        return 1
