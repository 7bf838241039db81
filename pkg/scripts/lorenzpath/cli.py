#!/usr/bin/env python3
"""
lorenzpath command line

Purpose: generate instances, run the label search, the brute-force oracle,
the decision problem and single dominance queries

Notes:
    - stdout carries exactly one document per command (report JSON, graph
      JSON for `generate`, tab-separated lines for `dominance`)
    - rich summaries and loguru output go to stderr
    - every failure ends with one `error[<code>]: <kind>: <message>` line
"""

import sys
from contextlib import contextmanager
from enum import Enum, IntEnum
from pathlib import Path as FsPath
from typing import Annotated, Any, Callable, Iterator, NoReturn, Optional, Sequence

import click
import typer
from loguru import logger
from rich.console import Console
from rich.table import Table

from .config import DEFAULT_MAX_PATHS, HeuristicKind, SearchMode
from .dominance import (
    Relation,
    compare as compare_vectors,
    lex_compare,
    lorenz_classes,
    lorenz_dominates,
    lorenz_vector,
    lorenz_weakly_dominates,
    pareto_dominates,
    sum_bound_dominates,
    weak_pareto_dominates,
)
from .exceptions import (
    ConfigurationError,
    CyclicGraphError,
    DimensionError,
    EnumerationLimitError,
    FileAccessError,
    GraphValidationError,
    LorenzPathError,
    PathError,
    ValidationError,
    WeightValidationError,
)
from .instances import Family, GeneratorSpec, generate as generate_instance, partition_reduction
from .logging import LogFormat, LogLevel, setup_logging
from .model import CostVector, ScenarioGraph, dump_graph, load_graph
from .oracle import (
    EnumerationLimits,
    brute_lorenz_set,
    brute_owa_opt,
    brute_pareto_set,
    decide_lorenz_dominating_path,
    enumerate_paths,
)
from .owa import OwaWeights, format_rational, parse_rationals, validate_weights
from .pipeline import Pipeline
from .report import RunReport, graph_metadata, path_record
from .search import build_heuristic, run_search, search_lorenz, search_owa


class ExitCode(IntEnum):
    OK = 0
    NEGATIVE = 1
    BAD_FLAGS = 2
    INVALID_GRAPH = 3
    INVALID_WEIGHTS = 4
    ORACLE_LIMIT = 5
    INTERNAL = 6


class OracleMode(str, Enum):
    PATHS = "paths"
    PARETO = "pareto"
    LORENZ = "lorenz"
    OWA = "owa"
    DECIDE = "decide"


class CompareMode(str, Enum):
    LORENZ = "lorenz"
    OWA = "owa"


app = typer.Typer(
    name="lorenzpath",
    help="Robust paths in scenario graphs: Lorenz-non-dominated and OWA-optimal path search.",
    add_completion=False,
    pretty_exceptions_enable=False,
)
generate_app = typer.Typer(help="Write a generated instance graph as JSON.")
app.add_typer(generate_app, name="generate")

console = Console(stderr=True)

# set by the callback, reused when a command asks for --quiet
_log_settings: dict[str, Any] = {}


GraphOption = Annotated[FsPath, typer.Option("--graph", "-g", help="Graph JSON file.")]
OutputOption = Annotated[
    Optional[FsPath], typer.Option("--output", "-o", help="Write the document to this file instead of stdout.")
]
QuietOption = Annotated[bool, typer.Option("--quiet", "-q", help="Errors only on stderr.")]
HeuristicOption = Annotated[HeuristicKind, typer.Option("--heuristic", help="Heuristic set per node.")]
PhiOption = Annotated[
    Optional[str], typer.Option("--phi", help="OWA phi values, e.g. 0.9,1.0 (exact decimals or p/q).")
]
WeightsOption = Annotated[Optional[str], typer.Option("--weights", help="OWA weights w_1..w_m, e.g. 0.9,0.1.")]
MaxPathsOption = Annotated[int, typer.Option("--max-paths", help="Oracle enumeration cap.")]


def _fail(code: ExitCode, kind: str, message: Any) -> NoReturn:
    line = " ".join(str(message).split())
    typer.echo(f"error[{int(code)}]: {kind}: {line}", err=True)
    raise typer.Exit(int(code))


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map lorenzpath exceptions to exit codes."""
    try:
        yield
    except GraphValidationError as e:
        _fail(ExitCode.INVALID_GRAPH, "invalid_graph", e)
    except FileAccessError as e:
        _fail(ExitCode.INVALID_GRAPH, "file_access", e)
    except CyclicGraphError as e:
        _fail(ExitCode.INVALID_GRAPH, "cyclic_graph", e)
    except PathError as e:
        _fail(ExitCode.INVALID_GRAPH, "invalid_path", e)
    except WeightValidationError as e:
        _fail(ExitCode.INVALID_WEIGHTS, "invalid_weights", e)
    except EnumerationLimitError as e:
        _fail(ExitCode.ORACLE_LIMIT, "oracle_limit", e)
    except (ValidationError, ConfigurationError) as e:
        _fail(ExitCode.BAD_FLAGS, "bad_flags", e)
    except LorenzPathError as e:
        logger.opt(exception=True).debug("Unexpected failure")
        _fail(ExitCode.INTERNAL, "internal", e)


def _set_quiet(quiet: bool) -> None:
    console.quiet = quiet
    if quiet:
        with _exit_codes():
            setup_logging(**{**_log_settings, "console_level": LogLevel.ERROR})


def _parse_vector(text: str, flag: str) -> CostVector:
    try:
        vector = tuple(int(item) for item in text.split(","))
    except ValueError:
        _fail(ExitCode.BAD_FLAGS, "bad_flags", f"{flag} expects comma-separated integers, got {text!r}")
    if any(v < 0 for v in vector):
        _fail(ExitCode.BAD_FLAGS, "bad_flags", f"{flag} components must be >= 0, got {text!r}")
    return vector


def _owa_weights(
    phi: Optional[str], weights: Optional[str], required: bool, accepted: bool = False
) -> Optional[OwaWeights]:
    if phi is not None and weights is not None:
        _fail(ExitCode.BAD_FLAGS, "bad_flags", "give either --phi or --weights, not both")
    if not (required or accepted):
        if phi is not None or weights is not None:
            _fail(ExitCode.BAD_FLAGS, "bad_flags", "--phi and --weights only apply to OWA mode")
        return None
    if phi is not None:
        return validate_weights(parse_rationals(phi))
    if weights is not None:
        return OwaWeights.from_weights(parse_rationals(weights))
    if not required:
        return None
    _fail(ExitCode.BAD_FLAGS, "bad_flags", "OWA mode needs --phi or --weights")


def _check_weights(weights: Optional[OwaWeights], graph: ScenarioGraph) -> None:
    if weights is not None and weights.m != graph.scenario_count:
        raise WeightValidationError(
            f"{weights.m} weights given for a graph with {graph.scenario_count} scenarios"
        )


def _limits(max_paths: int) -> EnumerationLimits:
    if max_paths < 1:
        _fail(ExitCode.BAD_FLAGS, "bad_flags", f"--max-paths must be >= 1, got {max_paths}")
    return EnumerationLimits(max_paths=max_paths)


def _decision_target(text: Optional[str], meta: dict[str, Any], graph: ScenarioGraph) -> CostVector:
    if text is not None:
        target = _parse_vector(text, "--target")
    elif isinstance(meta.get("target"), list) and all(isinstance(v, int) for v in meta["target"]):
        target = tuple(meta["target"])
    else:
        _fail(ExitCode.BAD_FLAGS, "bad_flags", "decide needs --target or a graph whose meta block has a target")
    if len(target) != graph.scenario_count:
        raise DimensionError(f"target has {len(target)} components, graph has {graph.scenario_count} scenarios")
    return target


def _emit(document: str, output: Optional[FsPath]) -> None:
    if output is None:
        typer.echo(document, nl=False)
        return
    try:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(document, encoding="utf-8")
    except OSError as e:
        raise FileAccessError(f"cannot write {output}: {e}") from e
    console.print(f"[green]wrote[/green] {output}")


def _summarise(title: str, records: Sequence[dict[str, Any]]) -> None:
    table = Table(title=title)
    table.add_column("path")
    table.add_column("cost", justify="right")
    table.add_column("L", justify="right")
    with_value = any("value" in record for record in records)
    if with_value:
        table.add_column("value", justify="right")
    for record in records:
        row = [" ".join(record["nodes"]), str(record["cost"]), str(record["lorenz"])]
        if with_value:
            row.append(str(record.get("value", "")))
        table.add_row(*row)
    console.print(table)


@app.callback()
def main(
    log_level: Annotated[LogLevel, typer.Option("--log-level", case_sensitive=False)] = LogLevel.WARNING,
    log_format: Annotated[LogFormat, typer.Option("--log-format", case_sensitive=False)] = LogFormat.CONSOLE,
    log_file: Annotated[Optional[FsPath], typer.Option("--log-file")] = None,
) -> None:
    """Robust paths in scenario graphs."""
    _log_settings.clear()
    _log_settings.update(log_file=log_file, console_level=log_level, format=log_format)
    with _exit_codes():
        setup_logging(**_log_settings)


@app.command()
def search(
    graph: GraphOption,
    mode: Annotated[SearchMode, typer.Option("--mode", "-m")] = SearchMode.LORENZ,
    heuristic: HeuristicOption = HeuristicKind.ARC,
    phi: PhiOption = None,
    weights: WeightsOption = None,
    trace: Annotated[bool, typer.Option("--trace", help="Add expanded labels and prune events.")] = False,
    output: OutputOption = None,
    quiet: QuietOption = False,
) -> None:
    """Label search: Lorenz frontier, Pareto baseline or one OWA-optimal path."""
    _set_quiet(quiet)
    with _exit_codes():
        owa = _owa_weights(phi, weights, required=mode is SearchMode.OWA)
        with Pipeline("search") as step:
            scenario_graph, meta = load_graph(graph)
            _check_weights(owa, scenario_graph)
            table = build_heuristic(scenario_graph, heuristic)
            result = run_search(scenario_graph, mode, table, owa, trace=trace)

        report = RunReport(
            command="search",
            arguments={
                "graph": str(graph),
                "mode": mode.value,
                "heuristic": heuristic.value,
                "phi": phi,
                "weights": weights,
                "trace": trace,
            },
            graph=graph_metadata(scenario_graph, meta, graph),
            wall_time=step.duration,
        ).add_search(result)
        _emit(report.to_json(), output)
        _summarise(f"{mode.value} search: {len(result.solutions)} solution(s)", report.solutions)


@app.command()
def oracle(
    graph: GraphOption,
    mode: Annotated[OracleMode, typer.Option("--mode", "-m")] = OracleMode.LORENZ,
    target: Annotated[Optional[str], typer.Option("--target", help="Decision target, e.g. 6,6.")] = None,
    phi: PhiOption = None,
    weights: WeightsOption = None,
    max_paths: MaxPathsOption = DEFAULT_MAX_PATHS,
    output: OutputOption = None,
    quiet: QuietOption = False,
) -> None:
    """Brute-force answers by enumerating every simple source-to-goal path."""
    _set_quiet(quiet)
    with _exit_codes():
        owa = _owa_weights(
            phi, weights, required=mode is OracleMode.OWA, accepted=mode is OracleMode.PATHS
        )
        limits = _limits(max_paths)
        extra: dict[str, Any] = {"oracle": True}

        with Pipeline("oracle") as step:
            scenario_graph, meta = load_graph(graph)
            _check_weights(owa, scenario_graph)
            paths = enumerate_paths(scenario_graph, limits)

            if mode is OracleMode.PATHS:
                solutions = [path_record(path, owa) for path in paths]
            elif mode is OracleMode.PARETO:
                solutions = [path_record(path) for path in brute_pareto_set(scenario_graph, limits, paths)]
            elif mode is OracleMode.LORENZ:
                sizes = {lorenz: len(members) for lorenz, members in lorenz_classes(p.cost for p in paths)}
                solutions = []
                for lorenz, path in brute_lorenz_set(scenario_graph, limits, paths):
                    record = path_record(path)
                    record["class_size"] = sizes[lorenz]
                    solutions.append(record)
            elif mode is OracleMode.OWA:
                assert owa is not None
                best = brute_owa_opt(scenario_graph, owa, limits, paths)
                solutions = [path_record(best[0], owa)] if best else []
            else:
                vector = _decision_target(target, meta, scenario_graph)
                decision = decide_lorenz_dominating_path(scenario_graph, vector, limits, paths)
                solutions = [path_record(decision.witness)] if decision.witness else []
                extra.update(decision=decision.holds, target=list(vector))

        report = RunReport(
            command="oracle",
            arguments={
                "graph": str(graph),
                "mode": mode.value,
                "target": target,
                "phi": phi,
                "weights": weights,
                "max_paths": max_paths,
            },
            graph=graph_metadata(scenario_graph, meta, graph),
            mode=mode.value,
            solutions=solutions,
            statistics={"paths_enumerated": len(paths)},
            wall_time=step.duration,
            extra=extra,
        )
        _emit(report.to_json(), output)
        _summarise(f"oracle {mode.value}: {len(solutions)} of {len(paths)} path(s)", solutions)


@app.command()
def compare(
    graph: GraphOption,
    mode: Annotated[CompareMode, typer.Option("--mode", "-m")] = CompareMode.LORENZ,
    heuristic: HeuristicOption = HeuristicKind.ARC,
    phi: PhiOption = None,
    weights: WeightsOption = None,
    max_paths: MaxPathsOption = DEFAULT_MAX_PATHS,
    output: OutputOption = None,
    quiet: QuietOption = False,
) -> None:
    """Check the label search against the oracle; exit 1 when they disagree."""
    _set_quiet(quiet)
    with _exit_codes():
        owa = _owa_weights(phi, weights, required=mode is CompareMode.OWA)
        limits = _limits(max_paths)

        with Pipeline("compare") as step:
            scenario_graph, meta = load_graph(graph)
            _check_weights(owa, scenario_graph)
            paths = enumerate_paths(scenario_graph, limits)
            table = build_heuristic(scenario_graph, heuristic)

            if mode is CompareMode.LORENZ:
                result = search_lorenz(scenario_graph, table)
                expected = {lorenz for lorenz, _ in brute_lorenz_set(scenario_graph, limits, paths)}
                found = result.lorenz_set
                agree = found == expected
                diff: dict[str, Any] = {
                    "missing": [list(v) for v in sorted(expected - found)],
                    "extra": [list(v) for v in sorted(found - expected)],
                }
            else:
                assert owa is not None
                result = search_owa(scenario_graph, owa, table)
                best = brute_owa_opt(scenario_graph, owa, limits, paths)
                found_value = result.best.value if result.best else None
                expected_value = best[1] if best else None
                agree = found_value == expected_value
                diff = {
                    "search": format_rational(found_value) if found_value is not None else None,
                    "oracle": format_rational(expected_value) if expected_value is not None else None,
                }

        report = RunReport(
            command="compare",
            arguments={
                "graph": str(graph),
                "mode": mode.value,
                "heuristic": heuristic.value,
                "phi": phi,
                "weights": weights,
                "max_paths": max_paths,
            },
            graph=graph_metadata(scenario_graph, meta, graph),
            wall_time=step.duration,
        ).add_search(result)
        report.extra.update(agree=agree, diff=diff, oracle_paths=len(paths))
        _emit(report.to_json(), output)

    if agree:
        console.print(f"[green]agree[/green]: search and oracle ({len(paths)} paths)")
        return
    _fail(ExitCode.NEGATIVE, "disagree", f"search and oracle differ: {diff}")


@app.command()
def decide(
    graph: Annotated[Optional[FsPath], typer.Option("--graph", "-g", help="Graph JSON file.")] = None,
    sizes: Annotated[
        Optional[str], typer.Option("--sizes", help="Build the partition reduction of these sizes.")
    ] = None,
    target: Annotated[Optional[str], typer.Option("--target", help="Target cost vector, e.g. 3,3.")] = None,
    max_paths: MaxPathsOption = DEFAULT_MAX_PATHS,
    output: OutputOption = None,
    quiet: QuietOption = False,
) -> None:
    """Is there a path whose cost weakly Lorenz-dominates the target? Exit 0 yes, 1 no."""
    _set_quiet(quiet)
    if (graph is None) == (sizes is None):
        _fail(ExitCode.BAD_FLAGS, "bad_flags", "give exactly one of --graph or --sizes")

    with _exit_codes():
        limits = _limits(max_paths)
        with Pipeline("decide") as step:
            if sizes is not None:
                instance = partition_reduction(_parse_vector(sizes, "--sizes"))
                scenario_graph = instance.graph
                meta: dict[str, Any] = {
                    "family": Family.PARTITION.value,
                    "sizes": list(instance.sizes),
                    "scale": instance.scale,
                    "target": list(instance.target),
                }
            else:
                assert graph is not None
                scenario_graph, meta = load_graph(graph)
            vector = _decision_target(target, meta, scenario_graph)
            decision = decide_lorenz_dominating_path(scenario_graph, vector, limits)

        report = RunReport(
            command="decide",
            arguments={
                "graph": str(graph) if graph else None,
                "sizes": sizes,
                "target": target,
                "max_paths": max_paths,
            },
            graph=graph_metadata(scenario_graph, meta, graph),
            mode="decide",
            solutions=[path_record(decision.witness)] if decision.witness else [],
            wall_time=step.duration,
            extra={"decision": decision.holds, "target": list(vector)},
        )
        _emit(report.to_json(), output)

    if decision.holds:
        console.print(f"[green]yes[/green]: a path reaches target {list(vector)}")
        return
    console.print(f"[yellow]no[/yellow]: no path weakly Lorenz-dominates {list(vector)}")
    raise typer.Exit(int(ExitCode.NEGATIVE))


@app.command()
def dominance(
    x: Annotated[str, typer.Option("--x", help="First cost vector, e.g. 13,5.")],
    y: Annotated[str, typer.Option("--y", help="Second cost vector, e.g. 11,6.")],
    output: OutputOption = None,
    quiet: QuietOption = False,
) -> None:
    """Print every relation of x to y as `name<TAB>answer` lines."""
    _set_quiet(quiet)
    with _exit_codes():
        a, b = _parse_vector(x, "--x"), _parse_vector(y, "--y")
        if len(a) != len(b):
            raise DimensionError(f"--x has {len(a)} components, --y has {len(b)}")

        def flag(answer: bool) -> str:
            return "true" if answer else "false"

        la, lb = lorenz_vector(a), lorenz_vector(b)
        rows = [
            ("weak_pareto", flag(weak_pareto_dominates(a, b))),
            ("pareto", flag(pareto_dominates(a, b))),
            ("weak_lorenz", flag(lorenz_weakly_dominates(a, b))),
            ("strict_lorenz", flag(lorenz_dominates(a, b))),
            ("lex", lex_compare(la, lb).value),
            ("sum_bound", flag(sum_bound_dominates(a, b))),
            ("pareto_verdict", compare_vectors(a, b, Relation.PARETO).value),
            ("lorenz_verdict", compare_vectors(a, b, Relation.LORENZ).value),
            ("lorenz_x", ",".join(map(str, la))),
            ("lorenz_y", ",".join(map(str, lb))),
        ]
        _emit("".join(f"{name}\t{answer}\n" for name, answer in rows), output)


def _write_instance(spec_factory: Callable[[], GeneratorSpec], output: Optional[FsPath], quiet: bool) -> None:
    _set_quiet(quiet)
    with _exit_codes():
        spec: GeneratorSpec = spec_factory()
        instance = generate_instance(spec)
        _emit(dump_graph(instance.graph, instance.meta), output)
        console.print(
            f"[green]{spec.family.value}[/green]: {len(instance.graph.nodes)} nodes, {len(instance.graph.arcs)} arcs"
        )


StagesOption = Annotated[int, typer.Option("--p", "-p", help="Number of stages (2^p paths).")]


@generate_app.command("figure1")
def generate_figure1(output: OutputOption = None, quiet: QuietOption = False) -> None:
    """The worked two-scenario example graph."""
    _write_instance(lambda: GeneratorSpec(Family.FIGURE1), output, quiet)


@generate_app.command("hansen")
def generate_hansen(p: StagesOption, output: OutputOption = None, quiet: QuietOption = False) -> None:
    """2^p Pareto-optimal paths forming a single Lorenz class."""
    _write_instance(lambda: GeneratorSpec(Family.HANSEN, p=p), output, quiet)


@generate_app.command("antilorenz")
def generate_antilorenz(p: StagesOption, output: OutputOption = None, quiet: QuietOption = False) -> None:
    """2^p paths, every one Lorenz-non-dominated."""
    _write_instance(lambda: GeneratorSpec(Family.ANTILORENZ, p=p), output, quiet)


@generate_app.command("partition")
def generate_partition(
    sizes: Annotated[str, typer.Option("--sizes", help="Item sizes, e.g. 3,1,2.")],
    output: OutputOption = None,
    quiet: QuietOption = False,
) -> None:
    """Partition reduction graph; the target sits in the meta block."""
    vector = _parse_vector(sizes, "--sizes")
    _write_instance(lambda: GeneratorSpec(Family.PARTITION, sizes=vector), output, quiet)


@generate_app.command("random")
def generate_random(
    nodes: Annotated[int, typer.Option("--nodes")] = 12,
    density: Annotated[float, typer.Option("--density")] = 0.5,
    m: Annotated[int, typer.Option("--m", help="Scenario count.")] = 2,
    seed: Annotated[int, typer.Option("--seed")] = 0,
    cost_min: Annotated[int, typer.Option("--cost-min")] = 1,
    cost_max: Annotated[int, typer.Option("--cost-max")] = 9,
    output: OutputOption = None,
    quiet: QuietOption = False,
) -> None:
    """Seeded layered DAG with uniform integer costs."""
    _write_instance(
        lambda: GeneratorSpec(
            Family.RANDOM, nodes=nodes, arc_density=density, cost_range=(cost_min, cost_max), m=m, seed=seed
        ),
        output,
        quiet,
    )


def run() -> None:
    """Console entry point; usage errors also end in a single error line."""
    try:
        code = app(standalone_mode=False)
    except click.exceptions.NoArgsIsHelpError as e:
        e.show()
        sys.exit(int(ExitCode.BAD_FLAGS))
    except click.UsageError as e:
        typer.echo(f"error[{int(ExitCode.BAD_FLAGS)}]: bad_flags: {' '.join(e.format_message().split())}", err=True)
        sys.exit(int(ExitCode.BAD_FLAGS))
    except click.Abort:
        sys.exit(int(ExitCode.NEGATIVE))
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    run()
