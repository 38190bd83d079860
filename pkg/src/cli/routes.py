"""Typer commands: gen-network, run, analyze, classify, init-config, panel."""

from datetime import datetime, timezone
from itertools import product
from pathlib import Path
from typing import Annotated, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from src.cli.services import AnalysisService, LoadedRun, write_run
from src.constraints.enums import CategoryEnum
from src.core.config import settings
from src.core.random import MAX_SEED
from src.core.serialization import write_canonical, write_document
from src.exceptions import CreaSimException
from src.exceptions.exception_handlers import cli_exception_handler
from src.metrics.services import classify_form, creativity_family
from src.network.services import degree_stats, expected_edge_count, generate_ba, to_graph_file
from src.society.enums import PresetEnum
from src.society.scenarios import build_preset
from src.society.services import SocietyService, config_record, load_config

router = typer.Typer()
console = Console()

SeedOption = Annotated[Optional[int], typer.Option("--seed", min=0, max=MAX_SEED, help="Run seed override")]


def _quiet(ctx: typer.Context) -> bool:
    return bool(ctx.obj and ctx.obj.get("quiet"))


@router.command("gen-network")
def gen_network(
    ctx: typer.Context,
    nodes: Annotated[int, typer.Option("--nodes", help="Node count, at least max(m, 2)")],
    out: Annotated[Path, typer.Option("--out", help="Graph file to write")],
    m: Annotated[int, typer.Option("--m", help="Edges added per new node")] = 2,
    seed: Annotated[int, typer.Option("--seed", min=0, max=MAX_SEED)] = 0,
):
    """Grow a preferential-attachment network and write it as a graph file."""
    try:
        graph = generate_ba(nodes, m, seed)
        write_canonical(out, to_graph_file(graph).model_dump(mode="json"))
    except CreaSimException as e:
        cli_exception_handler(e)

    if not _quiet(ctx):
        typer.echo(
            f"edges={graph.number_of_edges()} expected={expected_edge_count(nodes, m)} "
            f"max_degree={degree_stats(graph).max_degree}"
        )


@router.command("run")
def run_command(
    ctx: typer.Context,
    config: Annotated[Path, typer.Option("--config", help="Society config, JSON or YAML")],
    out: Annotated[Path, typer.Option("--out", help="Run directory to write")],
    seed: SeedOption = None,
):
    """Execute one seeded run and write its run directory."""
    started_at = datetime.now(timezone.utc)
    try:
        result = SocietyService.from_file(config, seed).run()
        manifest = write_run(result, out, started_at)
    except (CreaSimException, ValidationError) as e:
        cli_exception_handler(e)

    if not _quiet(ctx):
        typer.echo(f"seed={manifest.seed} events={len(result.events)} config_hash={manifest.config_hash}")


@router.command("analyze")
def analyze(
    ctx: typer.Context,
    run_dir: Annotated[Path, typer.Option("--run", help="Run directory written by `run`")],
    out: Annotated[Path, typer.Option("--out", help="Directory for the analysis tables")],
    espace_cap: Annotated[
        Optional[int], typer.Option("--espace-cap", min=1, help="Largest space enumerated for coverage")
    ] = None,
):
    """Compute creativity, convergence, influence, coverage and form tables for a run."""
    try:
        report = AnalysisService(LoadedRun(run_dir), espace_cap).analyze(out)
    except (CreaSimException, ValidationError) as e:
        cli_exception_handler(e)

    if not _quiet(ctx):
        convergence = report["convergence"]
        trend = "n/a" if convergence is None else f"{convergence['initial']:.4f}->{convergence['final']:.4f}"
        typer.echo(
            f"p_creative={report['creativity']['p_total']} h_creative={report['creativity']['h_total']} "
            f"convergence={trend}"
        )


@router.command("classify")
def classify(config: Annotated[Path, typer.Option("--config", help="Society config, JSON or YAML")]):
    """Print the form of creativity of every category pair present in a config."""
    try:
        society = load_config(config)
    except (CreaSimException, ValidationError) as e:
        cli_exception_handler(e)

    present = sorted({agent.category for agent in society.agents}, key=list(CategoryEnum).index)
    table = Table("generator", "evaluator", "form", "family")
    for generator, evaluator in product(present, repeat=2):
        form = classify_form(generator, evaluator)
        table.add_row(generator.value, evaluator.value, form.label, creativity_family(form).value)
    console.print(table)


@router.command("init-config")
def init_config(
    preset: Annotated[PresetEnum, typer.Option("--preset", help="Scenario to write")],
    out: Annotated[Path, typer.Option("--out", help="Config file; .yaml/.yml writes YAML")],
    nodes: Annotated[Optional[int], typer.Option("--nodes", min=2)] = None,
    seed: Annotated[int, typer.Option("--seed", min=0, max=MAX_SEED)] = 0,
    rounds: Annotated[Optional[int], typer.Option("--rounds", min=1)] = None,
):
    """Write a ready-made society config."""
    try:
        write_document(out, config_record(build_preset(preset, nodes, seed, rounds)))
    except (CreaSimException, ValidationError) as e:
        cli_exception_handler(e)


@router.command("panel")
def panel(
    ctx: typer.Context,
    config: Annotated[Path, typer.Option("--config", help="Society config, JSON or YAML")],
    out: Annotated[Path, typer.Option("--out", help="Directory receiving one seed-<S> run directory per seed")],
    seeds: Annotated[list[int], typer.Option("--seeds", help="Repeat for each seed")],
    jobs: Annotated[int, typer.Option("--jobs", min=1, help="Worker processes")] = settings.JOBS,
):
    """Run one config under several seeds, in parallel worker processes."""
    started_at = datetime.now(timezone.utc)
    try:
        results = SocietyService.from_file(config).run_panel(seeds, jobs)
        for seed, result in zip(seeds, results):
            write_run(result, out / f"seed-{seed}", started_at)
    except (CreaSimException, ValidationError) as e:
        cli_exception_handler(e)

    if not _quiet(ctx):
        typer.echo(f"runs={len(results)} out={out}")
