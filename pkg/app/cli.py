"""
Command line entry point.

    python -m app.cli density complete_k4.json
    python -m app.cli construct --r 3 --rho 9/10,9/10,9/10,9/10 --out g.json
    python -m app.cli cliques g.json
    python -m app.cli verify-bound --r 2 --sizes 2,2,2 --mode exhaustive
    python -m app.cli threshold-property --r 3 --size 3 --count 10000 --jobs 4

Every report is {"config": <resolved CommandConfig>, "result": <report>}. Exit status:
0 success, 1 domain or usage error, 2 a proven bound failed on a concrete instance.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from pydantic import BaseModel, ValidationError

from app.core.config import get_settings
from app.core.errors import HypergraphError, InstanceParseError, TheoremViolationError
from app.core.logging_config import configure_logging
from app.models.rational import format_decimal, parse_rational, parse_rational_list
from app.schemas.cli import CommandConfig
from app.schemas.requests import ConstructResponse
from app.schemas.search import BalancedSpace, SearchSpace
from app.services.blow_up import BlowUpService
from app.services.clique_counter import CliqueService
from app.services.degree_analysis import DegreeAnalysisService
from app.services.density import DensityService
from app.services.extremal_builder import ExtremalBuilderService
from app.services.instance_io import InstanceIOService
from app.services.lift import LiftService
from app.services.pos_region import PosRegionService
from app.services.search_oracle import SearchOracleService

logger = logging.getLogger("app.cli")

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_THEOREM_VIOLATION = 2

# subcommands whose --out receives the produced instance rather than the report
GRAPH_PRODUCERS = {"construct", "lift", "blowup"}


class CliUsageError(Exception):
    pass


class ToolkitArgumentParser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; 2 is reserved here, so raise instead."""

    def error(self, message: str):
        raise CliUsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def build_parser() -> ToolkitArgumentParser:
    settings = get_settings()
    common = ToolkitArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default="json")
    common.add_argument("--out", help="Report path (instance path for construct/lift/blowup)")
    common.add_argument("--decimal", type=int, metavar="N", help="Show N decimals in csv/table output")
    common.add_argument("--jobs", type=int, default=settings.DEFAULT_JOBS)
    common.add_argument("--log-level", default=settings.LOG_LEVEL)

    parser = ToolkitArgumentParser(prog="turan", description=settings.APP_NAME)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=ToolkitArgumentParser)

    p = sub.add_parser("density", parents=[common], help="Density vector of an instance")
    p.add_argument("input")

    for name in ("cliques", "near-cliques"):
        p = sub.add_parser(name, parents=[common], help="Clique density C(G)" if name == "cliques" else "K - k density")
        p.add_argument("input")
        if name == "near-cliques":
            p.add_argument("--k", type=int, required=True)
        p.add_argument("--witnesses", action="store_true")
        p.add_argument("--max-witnesses", type=int)

    p = sub.add_parser("construct", parents=[common], help="Extremal graph with C = sum(rho) - r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--rho", required=True, help="Comma separated rationals")
    p.add_argument("--tolerance", default="0")

    p = sub.add_parser("lift", parents=[common], help="Partite lift of a plain r-graph")
    p.add_argument("input")

    p = sub.add_parser("blowup", parents=[common], help="Unweighted blow-up")
    p.add_argument("input")
    p.add_argument("--scale", type=_int_list, default=[1], help="Global scale or one per class")

    p = sub.add_parser("balance", parents=[common], help="Strict codegree balance")
    p.add_argument("input")
    p.add_argument("--tuple-size", type=int)

    p = sub.add_parser("threshold", parents=[common], help="Balanced density threshold certificate")
    p.add_argument("input")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--all-classes", action="store_true")

    p = sub.add_parser("codegrees", parents=[common], help="Codegree statistics")
    p.add_argument("input")

    p = sub.add_parser("edge-count", parents=[common], help="Edge-count threshold of a plain r-graph")
    p.add_argument("input")
    p.add_argument("--k", type=int, default=0)

    p = sub.add_parser("verify-bound", parents=[common], help="Brute-force check of C >= sum(rho) - r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--sizes", type=_int_list, required=True)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edge-probability", default=settings.DEFAULT_EDGE_PROBABILITY)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--max-denominator", type=int, default=settings.RANDOM_MAX_DENOMINATOR)

    p = sub.add_parser("tightness", parents=[common], help="Extremal C against the bound on a grid")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--grid", help="Density vectors separated by ';', e.g. '3/4,3/4,3/4;1,1,1'")

    p = sub.add_parser("threshold-property", parents=[common], help="Balanced threshold over seeded balanced instances")
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--size", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10_000)

    p = sub.add_parser("pos-region", parents=[common], help="Conditions of the tripartite region")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")

    p = sub.add_parser("pos-grid", parents=[common], help="Check the region claim on a rational grid")
    p.add_argument("--denominator", type=int)
    return parser


def config_from_args(args: argparse.Namespace) -> CommandConfig:
    reserved = {"subcommand", "input", "out", "format", "seed", "jobs", "tolerance", "decimal", "log_level"}
    options = {k: v for k, v in vars(args).items() if k not in reserved and v is not None}
    return CommandConfig(
        subcommand=args.subcommand,
        input=getattr(args, "input", None),
        output=args.out,
        format=args.format,
        seed=getattr(args, "seed", None),
        jobs=args.jobs,
        tolerance=getattr(args, "tolerance", None),
        decimal=args.decimal,
        options=options,
    )


# ─── Dispatch ────────────────────────────────────────────────────────


def _execute(config: CommandConfig) -> tuple[BaseModel, bool]:
    """Run one subcommand; returns the report and whether it flags a theorem violation."""
    opts = config.options
    name = config.subcommand

    if name == "density":
        return DensityService.density_vector(InstanceIOService.read_instance(config.input)), False
    if name in ("cliques", "near-cliques"):
        graph = InstanceIOService.read_instance(config.input)
        report = CliqueService.count_near_cliques(
            graph,
            opts.get("k", 0),
            with_witnesses=opts.get("witnesses", False),
            max_witnesses=opts.get("max_witnesses"),
            jobs=config.jobs,
        )
        return report, False
    if name == "construct":
        rho = parse_rational_list(opts["rho"], "--rho")
        graph, recipe = ExtremalBuilderService.build_extremal(opts["r"], rho, config.tolerance or "0")
        if config.output:
            out = Path(config.output)
            InstanceIOService.write_instance(graph, out)
            InstanceIOService.write_model(recipe, recipe_path(out))
            return recipe, False
        return ConstructResponse(instance=InstanceIOService.to_document(graph), recipe=recipe), False
    if name == "lift":
        lifted = LiftService.decaen_lift(InstanceIOService.read_simple_graph(config.input))
        return _graph_result(lifted, config), False
    if name == "blowup":
        scale = opts.get("scale", [1])
        graph = InstanceIOService.read_instance(config.input)
        blown = BlowUpService.blow_up(graph, scale[0] if len(scale) == 1 else scale)
        return _graph_result(blown, config), False
    if name == "balance":
        graph = InstanceIOService.read_instance(config.input)
        return DegreeAnalysisService.is_strictly_balanced(graph, opts.get("tuple_size")), False
    if name == "threshold":
        graph = InstanceIOService.read_instance(config.input)
        cert = DegreeAnalysisService.threshold_check(graph, opts.get("k", 0), opts.get("all_classes", False))
        return cert, cert.theorem_violation
    if name == "codegrees":
        return DegreeAnalysisService.codegree_profile(InstanceIOService.read_instance(config.input)), False
    if name == "edge-count":
        graph = InstanceIOService.read_simple_graph(config.input)
        cert = DegreeAnalysisService.edge_count_certificate(graph, opts.get("k", 0))
        return cert, cert.theorem_violation
    if name == "verify-bound":
        space = SearchSpace(
            r=opts["r"],
            class_sizes=opts["sizes"],
            mode=opts.get("mode", "exhaustive"),
            seed=config.seed or 0,
            trials=opts.get("trials", 0),
            edge_probability=parse_rational(opts.get("edge_probability", "1/2"), "--edge-probability"),
            weighted=opts.get("weighted", False),
            max_denominator=opts.get("max_denominator", 8),
        )
        if space.mode == "exhaustive":
            report = SearchOracleService.exhaustive_bound_scan(space, jobs=config.jobs)
        else:
            report = SearchOracleService.random_bound_scan(space, jobs=config.jobs)
        return report, bool(report.violations) or report.oracle_disagreements > 0
    if name == "tightness":
        grid = None
        if opts.get("grid"):
            grid = [parse_rational_list(point, f"--grid[{i}]") for i, point in enumerate(opts["grid"].split(";"))]
        report = SearchOracleService.tightness_probe(opts["r"], grid)
        return report, not report.all_tight
    if name == "threshold-property":
        space = BalancedSpace(r=opts["r"], class_size=opts["size"], seed=config.seed or 0, count=opts["count"])
        report = SearchOracleService.threshold_property_scan(space, jobs=config.jobs)
        return report, not report.passed
    if name == "pos-region":
        return PosRegionService.check_pos_region(opts["a"], opts["b"], opts["c"]), False
    if name == "pos-grid":
        report = PosRegionService.verify_pos_grid(opts.get("denominator"))
        return report, not report.passed
    raise CliUsageError(f"unknown subcommand {name!r}")


def recipe_path(instance_path: Path) -> Path:
    return instance_path.with_name(instance_path.stem + ".recipe.json")


def _graph_result(graph, config: CommandConfig) -> BaseModel:
    if config.output:
        InstanceIOService.write_instance(graph, config.output)
    return InstanceIOService.to_document(graph)


# ─── Rendering ───────────────────────────────────────────────────────


def _flatten(value: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(value, dict):
        items = []
        for key, inner in value.items():
            items.extend(_flatten(inner, f"{prefix}.{key}" if prefix else str(key)))
        return items
    if isinstance(value, list) and value and all(isinstance(v, (dict, list)) for v in value):
        items = []
        for i, inner in enumerate(value):
            items.extend(_flatten(inner, f"{prefix}[{i}]"))
        return items
    if isinstance(value, list):
        return [(prefix, ",".join(str(v) for v in value))]
    return [(prefix, value)]


def _display(value: Any, decimal: Optional[int]) -> str:
    if value is None:
        return ""
    if decimal is not None and isinstance(value, str):
        try:
            return format_decimal(parse_rational(value), decimal)
        except InstanceParseError:
            return value
    return str(value)


def render(report: dict, config: CommandConfig) -> str:
    if config.format == "json":
        return json.dumps(report, indent=2) + "\n"

    rows = [(key, _display(value, config.decimal)) for key, value in _flatten(report["result"])]
    if config.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["schema_version", "subcommand", "key", "value"])
        version = get_settings().CSV_SCHEMA_VERSION
        for key, value in rows:
            writer.writerow([version, config.subcommand, key, value])
        return buffer.getvalue()

    width = max((len(key) for key, _ in rows), default=0)
    return "".join(f"{key.ljust(width)}  {value}\n" for key, value in rows)


def describe_validation_error(error: ValidationError) -> str:
    """One line per failing field: '--jobs: Input should be greater than or equal to 1'."""
    parts = []
    for item in error.errors():
        field = ".".join(str(part) for part in item["loc"]) or "value"
        parts.append(f"--{field.replace('_', '-')}: {item['msg']}")
    return "; ".join(parts)


def run(config: CommandConfig) -> tuple[int, Optional[dict]]:
    """Execute a resolved configuration and emit the report; returns (exit status, report)."""
    try:
        result, violated = _execute(config)
    except TheoremViolationError as e:
        logger.error(f"[CLI] theorem violation: {e}")
        print(f"theorem violation: {e}", file=sys.stderr)
        return EXIT_THEOREM_VIOLATION, None
    except HypergraphError as e:
        logger.error(f"[CLI] {type(e).__name__}: {e}")
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR, None
    except ValidationError as e:
        logger.error(f"[CLI] invalid options for {config.subcommand}: {e.error_count()} errors")
        print(f"error: invalid options: {describe_validation_error(e)}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR, None
    except OSError as e:
        print(f"error: cannot access {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR, None

    report = {
        "config": config.model_dump(mode="json"),
        "result": result.model_dump(mode="json", by_alias=True),
    }
    text = render(report, config)
    if config.output and config.subcommand not in GRAPH_PRODUCERS:
        Path(config.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)

    if violated:
        logger.error(f"[CLI] {config.subcommand}: report flags a theorem violation")
        return EXIT_THEOREM_VIOLATION, report
    return EXIT_OK, report


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = config_from_args(args)
    except CliUsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except ValidationError as e:
        print(f"usage error: {describe_validation_error(e)}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    configure_logging(args.log_level)
    return run(config)[0]


if __name__ == "__main__":
    sys.exit(main())
