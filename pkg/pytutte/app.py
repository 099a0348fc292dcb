"""Main application entry point for the pytutte command line."""

import logging
import time
from collections.abc import Callable
from dataclasses import dataclass, replace
from pathlib import Path

import click

from pytutte.api.serializers.graph_json import (
    dumps,
    parse_coords,
    parse_graph,
    parse_weights,
    serialize_triangulation,
)
from pytutte.api.serializers.report_json import (
    serialize_embedding,
    serialize_structure_report,
    serialize_validation_report,
)
from pytutte.api.serializers.svg import render_svg
from pytutte.api.serializers.sweep_csv import serialize_sweep
from pytutte.config import Config, get_config
from pytutte.domain.errors import ParseError, PyTutteError
from pytutte.domain.models.embedding import BoundaryPlacement, PerturbationParams, WeightScheme
from pytutte.domain.models.plane_graph import PlaneGraph
from pytutte.domain.services.service_provider import ServiceProvider
from pytutte.utils.class_logger import configure_logging, level_from_name

EXIT_OK = 0
EXIT_PROPERTY_FAILS = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3

COMMANDS = ("check", "embed", "triangulate", "validate", "render", "sweep")

logger = logging.getLogger("pytutte.cli")


@dataclass(frozen=True)
class RunConfig:
    """One command line invocation: the command, its files and the overrides of the global flags."""

    command: str
    input_path: str
    output_path: str | None = None
    tolerance: float | None = None
    seed: int | None = None
    radius: float | None = None
    log_level: str | None = None
    deltas: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        """Reject unknown commands, non-positive overrides and deltas outside ``[0, 1)``."""
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command '{self.command}'", "<command line>")
        for name in ("tolerance", "radius"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ParseError(f"must be positive, got {value}", "<command line>", field=f"--{name}")
        for delta in self.deltas:
            if not 0.0 <= delta < 1.0:
                raise ParseError(f"delta must lie in [0, 1), got {delta}", "<command line>", field="--delta")

    def apply(self, config: Config) -> Config:
        """The configuration with this run's overrides applied."""
        overrides = {
            name: getattr(self, name)
            for name in ("tolerance", "seed", "radius", "log_level")
            if getattr(self, name) is not None
        }
        return replace(config, **overrides)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", path) from e


def _write(text: str, output_path: str | None) -> None:
    if output_path is None:
        click.echo(text, nl=False)
    else:
        Path(output_path).write_text(text, encoding="utf-8")


def _execute(ctx: click.Context, run: RunConfig, action: Callable[[ServiceProvider], tuple[str, int]]) -> None:
    """
    Run one command with the shared error handling and exit code contract.

    Args:
        ctx: The click context; the global options live in ``ctx.obj``.
        run: The validated invocation.
        action: Produces the output text and the exit code from the configured services.

    """
    started = time.perf_counter()
    config = run.apply(ctx.obj["config"])
    configure_logging(level=level_from_name(config.log_level), log_file=config.log_file)
    logger.info(f"Starting '{run.command}' on {run.input_path}")
    try:
        text, code = action(ServiceProvider(config))
        _write(text, run.output_path)
    except PyTutteError as e:
        logger.error(f"'{run.command}' failed: {e}")
        click.echo(f"{e.provenance}: {e}", err=True)
        code = EXIT_INTERNAL_ERROR if e.internal else EXIT_INPUT_ERROR
    except Exception as e:
        logger.exception(f"'{run.command}' failed unexpectedly")
        click.echo(f"internal: {e}", err=True)
        code = EXIT_INTERNAL_ERROR
    logger.info(f"Finished '{run.command}' with exit code {code} in {time.perf_counter() - started:.3f}s")
    ctx.exit(code)


def _run_config(ctx: click.Context, command: str, input_path: str, output_path: str | None, **extra: object) -> RunConfig:
    try:
        return RunConfig(command=command, input_path=input_path, output_path=output_path, **ctx.obj["overrides"], **extra)
    except ParseError as e:
        click.echo(f"{e.provenance}: {e}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)


def _weights(choice: str, g: PlaneGraph, services: ServiceProvider) -> WeightScheme:
    kind, _, argument = choice.partition(":")
    if kind == "barycentric" and not argument:
        return services.solver.barycentric_weights(g)
    if kind == "random":
        if not argument:
            return services.solver.random_weight_scheme(g, services.config.seed)
        try:
            seed = int(argument)
        except ValueError as e:
            raise ParseError(f"random seed '{argument}' is not an integer", "<command line>", field="--weights") from e
        return services.solver.random_weight_scheme(g, seed)
    if kind == "file" and argument:
        return services.solver.weight_scheme_from_mapping(g, parse_weights(_read(argument), argument))
    message = f"expected barycentric, random[:<seed>] or file:<path>, got '{choice}'"
    raise ParseError(message, "<command line>", field="--weights")


def _placement(choice: str, g: PlaneGraph, services: ServiceProvider) -> BoundaryPlacement:
    kind, _, argument = choice.partition(":")
    if kind == "regular":
        try:
            radius = float(argument) if argument else None
        except ValueError as e:
            raise ParseError(f"radius '{argument}' is not a number", "<command line>", field="--placement") from e
        if radius is not None and radius <= 0:
            raise ParseError(f"radius must be positive, got {radius}", "<command line>", field="--placement")
        return services.solver.check_placement(g, services.solver.regular_polygon_placement(g.outer_cycle, radius))
    if kind == "file" and argument:
        return services.solver.placement_from_coords(g, parse_coords(_read(argument), argument))
    raise ParseError(f"expected regular[:<radius>] or file:<path>, got '{choice}'", "<command line>", field="--placement")


output_option = click.option(
    "-o",
    "--output",
    "output_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="Write the result here instead of stdout.",
)
graph_argument = click.argument("graph_path", metavar="GRAPH", type=click.Path(exists=True, dir_okay=False))
weights_option = click.option(
    "--weights", default="barycentric", show_default=True, help="barycentric, random[:<seed>] or file:<path>."
)
placement_option = click.option(
    "--placement", default="regular", show_default=True, help="regular[:<radius>] or file:<path>."
)


@click.group()
@click.option("--tolerance", type=float, default=None, help="Relative geometric tolerance. [default: 1e-9]")
@click.option("--seed", type=int, default=None, help="Seed for random weights and covering samples. [default: 0]")
@click.option("--radius", type=float, default=None, help="Radius of the regular boundary polygon. [default: 1.0]")
@click.option(
    "--log-level",
    type=click.Choice(["debug", "info", "warning", "error", "critical"], case_sensitive=False),
    default=None,
    help="Logging level for stderr. [default: warning]",
)
@click.pass_context
def cli(ctx: click.Context, tolerance: float | None, seed: int | None, radius: float | None, log_level: str | None) -> None:
    """Convex combination embeddings of plane graphs with combinatorial and geometric checks."""
    ctx.ensure_object(dict)
    try:
        config = get_config()
    except ValueError as e:
        click.echo(f"config: {e}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)
    ctx.obj["config"] = config
    ctx.obj["overrides"] = {
        "tolerance": tolerance,
        "seed": seed,
        "radius": radius,
        "log_level": None if log_level is None else log_level.lower(),
    }


@cli.command()
@graph_argument
@output_option
@click.option("--witness/--no-witness", default=False, help="Also search exhaustively for a witness on small graphs.")
@click.pass_context
def check(ctx: click.Context, graph_path: str, output_path: str | None, witness: bool) -> None:
    """Report the structure of GRAPH; exit 0 iff it is convex embeddable."""
    run = _run_config(ctx, "check", graph_path, output_path)

    def action(services: ServiceProvider) -> tuple[str, int]:
        g = parse_graph(_read(graph_path), graph_path)
        report = services.analyzer.is_convex_embeddable(g, with_witness=witness)
        code = EXIT_OK if report.convex_embeddable else EXIT_PROPERTY_FAILS
        return dumps(serialize_structure_report(g, report)), code

    _execute(ctx, run, action)


@cli.command()
@graph_argument
@output_option
@weights_option
@placement_option
@click.option("--delta", type=float, default=None, help="Solve the perturbed map on the triangulation instead.")
@click.option("--out", "out_format", type=click.Choice(["json", "svg"]), default="json", show_default=True)
@click.option("--samples", type=int, default=None, help="Also run the covering number check with this many samples.")
@click.pass_context
def embed(
    ctx: click.Context,
    graph_path: str,
    output_path: str | None,
    weights: str,
    placement: str,
    delta: float | None,
    out_format: str,
    samples: int | None,
) -> None:
    """Solve the convex combination map of GRAPH; exit 0 iff it is an embedding."""
    run = _run_config(ctx, "embed", graph_path, output_path, deltas=() if delta is None else (delta,))

    def action(services: ServiceProvider) -> tuple[str, int]:
        g = parse_graph(_read(graph_path), graph_path)
        w = _weights(weights, g, services)
        p = _placement(placement, g, services)
        if delta is None:
            result = services.solver.convex_combination_map(g, w, p)
        else:
            params = PerturbationParams(delta, services.triangulator.triangulate(g))
            result = services.solver.perturbed_map(g, w, p, params)
        report = services.validator.validate(result.solved_on, result.coords, samples)
        code = EXIT_OK if report.is_embedding else EXIT_PROPERTY_FAILS
        if out_format == "svg":
            return render_svg(result.solved_on, result.coords, report), code
        return dumps(serialize_embedding(result, report)), code

    _execute(ctx, run, action)


@cli.command()
@graph_argument
@output_option
@click.pass_context
def triangulate(ctx: click.Context, graph_path: str, output_path: str | None) -> None:
    """Triangulate the bounded faces of GRAPH and list the added edges."""
    run = _run_config(ctx, "triangulate", graph_path, output_path)

    def action(services: ServiceProvider) -> tuple[str, int]:
        g = parse_graph(_read(graph_path), graph_path)
        return dumps(serialize_triangulation(services.triangulator.triangulate(g))), EXIT_OK

    _execute(ctx, run, action)


@cli.command()
@graph_argument
@click.argument("coords_path", metavar="COORDS", type=click.Path(exists=True, dir_okay=False))
@output_option
@click.option("--samples", type=int, default=None, help="Also run the covering number check with this many samples.")
@click.pass_context
def validate(ctx: click.Context, graph_path: str, coords_path: str, output_path: str | None, samples: int | None) -> None:
    """Validate the straight-line map COORDS of GRAPH; exit 0 iff it is an embedding."""
    run = _run_config(ctx, "validate", graph_path, output_path)

    def action(services: ServiceProvider) -> tuple[str, int]:
        g = parse_graph(_read(graph_path), graph_path)
        coords = parse_coords(_read(coords_path), coords_path)
        report = services.validator.validate(g, coords, samples)
        return dumps(serialize_validation_report(report)), EXIT_OK if report.is_embedding else EXIT_PROPERTY_FAILS

    _execute(ctx, run, action)


@cli.command()
@graph_argument
@click.argument("coords_path", metavar="COORDS", type=click.Path(exists=True, dir_okay=False))
@output_option
@click.option("--labels/--no-labels", default=True, help="Write vertex ids next to the dots.")
@click.pass_context
def render(ctx: click.Context, graph_path: str, coords_path: str, output_path: str | None, labels: bool) -> None:
    """Draw the straight-line map COORDS of GRAPH as SVG, faulty edges highlighted."""
    run = _run_config(ctx, "render", graph_path, output_path)

    def action(services: ServiceProvider) -> tuple[str, int]:
        g = parse_graph(_read(graph_path), graph_path)
        coords = parse_coords(_read(coords_path), coords_path)
        report = services.validator.validate(g, coords)
        return render_svg(g, coords, report, labels), EXIT_OK

    _execute(ctx, run, action)


@cli.command()
@graph_argument
@output_option
@weights_option
@placement_option
@click.option("--delta", "deltas", type=float, multiple=True, help="Perturbation parameter; repeat for several rows.")
@click.pass_context
def sweep(
    ctx: click.Context, graph_path: str, output_path: str | None, weights: str, placement: str, deltas: tuple[float, ...]
) -> None:
    """Tabulate the distance of the perturbed maps of GRAPH from its convex combination map as CSV."""
    run = _run_config(ctx, "sweep", graph_path, output_path, deltas=tuple(deltas))

    def action(services: ServiceProvider) -> tuple[str, int]:
        g = parse_graph(_read(graph_path), graph_path)
        w = _weights(weights, g, services)
        p = _placement(placement, g, services)
        rows = services.solver.sweep(g, w, p, run.deltas, services.triangulator.triangulate(g), services.validator)
        return serialize_sweep(rows), EXIT_OK

    _execute(ctx, run, action)


def main() -> None:
    """Console script entry point."""
    cli()


if __name__ == "__main__":
    main()
