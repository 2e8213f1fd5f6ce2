import functools
import json
import multiprocessing
import traceback
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from rich.console import Console
from rich.progress import Progress
from rich.table import Table
from typer import Argument, Context, Exit, Option, Typer, echo

from asphere import __version__
from asphere.cases import (
    CaseSpec,
    InconsistentCaseError,
    Verdict,
    classify as classify_case,
    enumerate_cases,
    remark_checks,
    unpaired_exceptions,
)
from asphere.config import Config, ConfigError, OutputFormat, load_config
from asphere.curvature import (
    InvalidShapeError,
    RegionShape,
    corner_table,
    curvature_upper_bound,
    format_pi,
    region_curvature,
)
from asphere.hypotheses import compact, load_hypotheses
from asphere.schemas import (
    SCHEMAS,
    ClassificationModel,
    CurvatureModel,
    ExceptionModel,
    StarGraphModel,
    WeightReportModel,
    dump,
    schema_text,
)
from asphere.star_graph import StarGraphError, build_star_graph, enumerate_cycles
from asphere.theory import CoefficientTheory, ContradictoryTheoryError
from asphere.weight_test import MissingWeightError, WeightFunction, check_weight_test, search_weight_function
from asphere.words import UndeclaredSymbolError, WordSyntaxError, free_reduce, parse_word

app = Typer(invoke_without_command=True, add_completion=False)

entrypoint = functools.partial(app, windows_expand_args=False)

console = Console(stderr=True, log_time=True)


def version_callback(value: bool):
    if value:
        echo(f"asphere version: {__version__}")
        raise Exit()


def input_error(message: str) -> Exit:
    console.print(f"[red]error:[/red] {message}", highlight=False)
    return Exit(2)


@app.callback()
def main(
    ctx: Context,
    config: Optional[Path] = Option(None, "--config", exists=True, dir_okay=False, help="TOML configuration file."),
    max_cycle_len: Optional[int] = Option(None, help="Longest closed path to enumerate."),
    grid: Optional[str] = Option(None, help="Comma separated weight grid, e.g. '0,1/2,1'."),
    output_format: Optional[OutputFormat] = Option(None, "--format", help="Output format."),
    version: bool = Option(
        None,
        "--version",
        callback=version_callback,
        is_eager=True,
        help="Show the version and exit.",
    ),
):
    """Asphericity checks for the length-9 equation a t b t c t^-1 d t e t f t^-1 g t h t i t^-1 = 1."""
    try:
        ctx.obj = load_config(config, max_cycle_len=max_cycle_len, weight_grid=grid, output_format=output_format)
    except ConfigError as exc:
        raise input_error(str(exc)) from exc
    if ctx.invoked_subcommand is None:
        echo(ctx.get_help())


def _config(ctx: Context) -> Config:
    return ctx.obj if isinstance(ctx.obj, Config) else load_config()


def _theory(relations: List[str]) -> CoefficientTheory:
    try:
        th = CoefficientTheory.of(*relations)
    except ValueError as exc:
        raise input_error(str(exc)) from exc
    if not th.consistent:
        raise input_error(f"relations {th} are contradictory: {th.witness}")
    return th


def _relators(texts: List[str], stable: str):
    try:
        return [parse_word(text, stable=stable, cyclic=True) for text in texts]
    except (WordSyntaxError, UndeclaredSymbolError) as exc:
        raise input_error(str(exc)) from exc


@app.command()
def parse(
    word: str = Argument(..., help="Word such as 'a t b t c t^-1'."),
    stable: str = Option("t", help="Stable letters, one character each."),
    cyclic: bool = Option(False, help="Reduce cyclically."),
):
    """Print the freely reduced form of a word."""
    try:
        parsed = parse_word(word, stable=stable, cyclic=cyclic)
    except (WordSyntaxError, UndeclaredSymbolError) as exc:
        raise input_error(str(exc)) from exc
    echo(str(free_reduce(parsed)))


@app.command()
def stargraph(
    ctx: Context,
    relators: List[str] = Argument(..., help="Relators of the presentation."),
    stable: str = Option("t", help="Stable letters, one character each."),
    cycles: bool = Option(False, help="Also list closed paths up to --max-cycle-len."),
):
    """Print the star graph of a relative presentation."""
    config = _config(ctx)
    try:
        graph = build_star_graph(_relators(relators, stable))
    except StarGraphError as exc:
        raise input_error(str(exc)) from exc
    if config.output_format is OutputFormat.DOT:
        echo(graph.to_dot())
    elif config.output_format is OutputFormat.JSON:
        echo(dump(StarGraphModel, graph.to_json()))
    else:
        for edge in graph.edges:
            echo(f"{edge.id}: {edge.source} -> {edge.target}  [{edge.text}]")
    if cycles:
        for cycle in enumerate_cycles(graph, config.max_cycle_len):
            echo(f"{cycle}  label: {compact(cycle.label) or '1'}")


@app.command()
def weightcheck(
    ctx: Context,
    relators: List[str] = Argument(..., help="Relators of the presentation."),
    weights: Optional[Path] = Option(None, exists=True, dir_okay=False, help="JSON file {edge-id: 'p/q'}."),
    relation: List[str] = Option([], "--relation", "-r", help="Coefficient relation such as 'a=d^-1'."),
    stable: str = Option("t", help="Stable letters, one character each."),
):
    """Run the weight test; without --weights, search the grid for a weight function."""
    config = _config(ctx)
    th = _theory(relation)
    try:
        graph = build_star_graph(_relators(relators, stable))
    except StarGraphError as exc:
        raise input_error(str(exc)) from exc

    if weights is None:
        console.log(f"Searching {len(config.grid)}^{len(graph.edges)} weight assignments.")
        theta = search_weight_function(graph, th, config.grid, config.max_cycle_len)
        if theta is None:
            console.log("No weight function on the grid passes the weight test.")
            raise Exit(1)
    else:
        try:
            theta = WeightFunction.from_json(json.loads(weights.read_text(encoding="utf-8")))
        except (ValueError, AttributeError) as exc:
            raise input_error(f"cannot read weights from {weights}: {exc}") from exc

    try:
        report = check_weight_test(graph, theta, th, config.max_cycle_len)
    except MissingWeightError as exc:
        raise input_error(str(exc)) from exc
    echo(dump(WeightReportModel, {**report.to_json(), "weights": theta.to_json()}))
    if not report.passed:
        raise Exit(1)


def _classify_one(case: CaseSpec) -> Tuple[Optional[dict], Optional[str]]:
    try:
        return classify_case(case).to_json(), None
    except Exception:
        return None, f"An error happened on case {case}.\n{traceback.format_exc()}"


def _run(cases: List[CaseSpec], processes: Optional[int]) -> Iterable[Tuple[Optional[dict], Optional[str]]]:
    if processes == 1:
        yield from map(_classify_one, cases)
        return
    with multiprocessing.Pool(processes=processes) as pool:
        yield from pool.imap(_classify_one, cases, chunksize=8)


@app.command()
def classify(
    ctx: Context,
    n: List[int] = Option([], "--N", "--n", "-n", help="Number of admitted labels; repeat for several."),
    processes: Optional[int] = Option(None, help="Maximum number of processes to use."),
    log_file: Optional[Path] = Option(None, help="Log errors to this file."),
):
    """Classify every canonical relation case with the given numbers of admitted labels."""
    config = _config(ctx)
    ns = sorted(set(n)) if n else list(range(16))
    if any(not 0 <= value <= 15 for value in ns):
        raise input_error("--n must be between 0 and 15")
    processes = processes or config.processes
    log_path = log_file or config.log_file

    console.log("Enumerating relation cases.")
    cases = [case for value in ns for case in enumerate_cases(value)]
    console.log(f"Found {len(cases)} canonical cases.")

    results = []
    count_errors = 0
    with Progress(*Progress.get_default_columns(), transient=True, console=console) as progress:
        task = progress.add_task(description="Classifying cases...", total=len(cases))
        for result, error in _run(cases, processes):
            progress.advance(task)
            if error is not None:
                count_errors += 1
                with log_path.open("a+", encoding="utf8") as log_fp:
                    log_fp.write(error)
                continue
            results.append(result)

    if config.output_format is OutputFormat.JSON:
        for result in results:
            echo(dump(ClassificationModel, result))
    else:
        table = Table("N", "admitted", "verdict", "bound", "citation")
        for result in results:
            admitted = ", ".join(result["admitted"])
            table.add_row(str(result["N"]), admitted, result["verdict"], result["bound"], result["citation"] or "")
        Console().print(table)
        counts = {verdict.value: sum(r["verdict"] == verdict.value for r in results) for verdict in Verdict}
        echo("  ".join(f"{name}: {count}" for name, count in counts.items()))

    if count_errors > 0:
        console.log(f"Found {count_errors} errors. Please check the {log_path} file.")
        raise Exit(1)
    console.log("Run successfully!")


@app.command()
def exceptions(ctx: Context):
    """Print the open exceptional cases."""
    config = _config(ctx)
    for hypothesis in load_hypotheses().theorem:
        if config.output_format is OutputFormat.JSON:
            patterns = [[str(relation) for relation in pattern.relations] for pattern in hypothesis.expand()]
            echo(dump(ExceptionModel, {"item": hypothesis.item, "text": hypothesis.text, "patterns": patterns}))
        else:
            echo(f"{hypothesis.item}. {hypothesis.text}")
    unpaired = unpaired_exceptions()
    if unpaired:
        console.log(f"{len(unpaired)} listed cases have an unlisted mirror image: {unpaired[0].citation}, ...")


@app.command()
def curvature(
    ctx: Context,
    degrees: List[int] = Argument(None, help="Corner degrees of a region."),
    relation: List[str] = Option([], "--relation", "-r", help="Bound the curvature under these relations."),
):
    """Curvature of a region shape, or the corner-table bound for a set of relations."""
    config = _config(ctx)
    if degrees:
        try:
            shape = RegionShape(tuple(degrees))
        except InvalidShapeError as exc:
            raise input_error(str(exc)) from exc
        value = region_curvature(shape)
        data = {"num": value.numerator, "den": value.denominator, "text": format_pi(value), "shape": list(degrees)}
    else:
        th = _theory(relation)
        try:
            bound = curvature_upper_bound(th)
        except ContradictoryTheoryError as exc:
            raise input_error(str(exc)) from exc
        data = bound.to_json()
        if config.output_format is not OutputFormat.JSON:
            for corner in corner_table(th).corners:
                partners = ", ".join(sorted(corner.partners)) or "-"
                echo(f"{corner.name}: partners {partners}")
    if config.output_format is OutputFormat.JSON:
        echo(dump(CurvatureModel, data))
    else:
        echo(f"{data['text']}  shape {tuple(data['shape'])}")


@app.command()
def remarks():
    """Check the elementary consequences of the torsion-free assumption."""
    checks = remark_checks()
    for check in checks:
        mark = "ok" if check.holds else "FAILED"
        echo(f"{check.item:>2}. {check.statement}: {mark}{f' ({check.detail})' if check.detail else ''}")
    if not all(check.holds for check in checks):
        raise Exit(1)


@app.command()
def schema(name: str = Argument(..., help=f"One of: {', '.join(SCHEMAS)}.")):
    """Print the JSON schema of an output."""
    if name not in SCHEMAS:
        raise input_error(f"unknown schema {name!r}; choose from {', '.join(SCHEMAS)}")
    echo(schema_text(name))


@app.command(name="case")
def case_command(relation: List[str] = Argument(..., help="Relations such as 'a=d^-1'.")):
    """Classify a single case given by relations."""
    th = _theory(relation)
    try:
        report = classify_case(CaseSpec.from_theory(th))
    except InconsistentCaseError as exc:
        raise input_error(str(exc)) from exc
    echo(dump(ClassificationModel, report.to_json()))
