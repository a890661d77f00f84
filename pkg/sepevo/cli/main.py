# sepevo/cli/main.py

import random
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional

import click
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from sepevo import config as settings
from sepevo.bench.baseline import simple_baseline
from sepevo.bench.compare import load_results, summarize
from sepevo.bench.convergence import (
    convergence_curve,
    instance_name,
    read_event_log,
    write_curve,
    write_event_log,
)
from sepevo.constants import (
    EXIT_BAD_GRAPH,
    EXIT_INFEASIBLE,
    EXIT_OK,
    EXIT_USAGE,
    EventKind,
    SolveMode,
)
from sepevo.errors import GraphFormatError, InfeasibleInstanceError
from sepevo.graph.core import is_valid
from sepevo.graph.generators import generate as generate_graph
from sepevo.graph.metis import read_metis, write_metis, write_separator
from sepevo.island.driver import run as run_islands
from sepevo.log import configure_logging
from sepevo.multilevel.solver import solve as solve_multilevel
from sepevo.types import EventRecord, SolverConfig

app = typer.Typer(help="✂️ sepevo - balanced k-way node separators, multilevel and evolutionary")

SOLVE_USAGE = (
    "Usage: sepevo solve --graph PATH --k INT [--imbalance FLOAT] [--seed INT] "
    "[--time-limit SECONDS] [--pes INT] [--fraction FLOAT] [--mutation-prob FLOAT] "
    f"[--mode {{{','.join(SolveMode.list())}}}] [--output PATH] [--log PATH] [--coarsest INT]"
)


def _usage_error(message: str) -> None:
    typer.echo(f"❌ {message}", err=True)
    typer.echo(SOLVE_USAGE, err=True)
    raise typer.Exit(EXIT_USAGE)


@app.callback()
def main_options(
    log_level: str = typer.Option(settings.LOG_LEVEL, "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
):
    configure_logging(log_level)

# ==================== solve ====================

@app.command()
def solve(
    graph: Path = typer.Option(..., "--graph", "-g", help="METIS graph file"),
    k: int = typer.Option(2, "--k", "-k", help="Number of blocks"),
    imbalance: float = typer.Option(settings.DEFAULT_IMBALANCE, "--imbalance", help="Allowed imbalance epsilon"),
    seed: int = typer.Option(0, "--seed", help="Random seed"),
    time_limit: float = typer.Option(60.0, "--time-limit", help="Time budget in seconds (evolutionary modes)"),
    pes: int = typer.Option(1, "--pes", help="Number of islands"),
    fraction: float = typer.Option(settings.DEFAULT_FRACTION, "--fraction", help="Build phase is time-limit / fraction"),
    mutation_prob: float = typer.Option(settings.DEFAULT_MUTATION_PROB, "--mutation-prob", help="Probability of mutating instead of combining"),
    mode: str = typer.Option(SolveMode.ADV.value, "--mode", help=f"One of {SolveMode.list()}"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Separator output file"),
    log: Optional[Path] = typer.Option(None, "--log", help="JSON-lines event log"),
    coarsest: Optional[int] = typer.Option(None, "--coarsest", help="Stop coarsening at this many nodes"),
    virtual_clock: bool = typer.Option(False, "--virtual-clock/--wall-clock", help="Deterministic simulated time for island runs"),
):
    """
    ✂️ Compute a balanced k-way node separator
    """
    if k < 1:
        _usage_error(f"--k must be at least 1, got {k}")
    if pes < 1:
        _usage_error(f"--pes must be at least 1, got {pes}")
    if time_limit <= 0:
        _usage_error(f"--time-limit must be positive, got {time_limit}")
    if coarsest is not None and coarsest < 1:
        _usage_error(f"--coarsest must be at least 1, got {coarsest}")
    if mode not in SolveMode.list():
        _usage_error(f"unknown mode {mode!r}")
    try:
        config = SolverConfig(
            imbalance=imbalance,
            fraction=fraction,
            mutation_prob=mutation_prob,
            coarsest_override=coarsest,
        )
    except ValidationError as e:
        _usage_error(f"invalid option: {e.errors()[0]['msg']}")

    try:
        g = read_metis(graph)
    except GraphFormatError as e:
        typer.echo(f"❌ Cannot load graph {graph}: {e}", err=True)
        raise typer.Exit(EXIT_BAD_GRAPH)

    rng = random.Random(seed)
    mode = SolveMode(mode)
    events: List[EventRecord] = []
    try:
        if mode in (SolveMode.ADV, SolveMode.SIMPLE):
            began = time.perf_counter()
            solver = solve_multilevel if mode is SolveMode.ADV else simple_baseline
            sol = solver(g, k, imbalance, config=config, rng=rng)
            elapsed = config.virtual_tick if virtual_clock else time.perf_counter() - began
            events.append(EventRecord(t=elapsed, size=sol.separator_weight, pe=0, kind=EventKind.CREATE))
        else:
            creator = None
            if mode is SolveMode.SIMPLE_REPS:
                creator = lambda g_, k_, eps_, cfg_, rng_: simple_baseline(g_, k_, eps_, rng_, cfg_)
            result = run_islands(
                g, k, imbalance, p=pes, t_total=time_limit, config=config, seed=seed,
                virtual_clock=virtual_clock, evolve=mode is SolveMode.ADVEVO, creator=creator,
            )
            sol, events = result.best, result.events
    except InfeasibleInstanceError as e:
        typer.echo(f"❌ Infeasible instance: {e}", err=True)
        raise typer.Exit(EXIT_INFEASIBLE)

    report = is_valid(g, sol)
    if output is not None:
        output.write_text(write_separator(sol))
        typer.echo(f"✅ Separator written to {output}")
    if log is not None:
        write_event_log(events, log)
        typer.echo(f"✅ Event log written to {log} ({len(events)} events)")
    typer.echo(f"{sol.separator_weight} {str(report.balanced).lower()} {str(report.valid).lower()}")

# ==================== generate ====================

@app.command()
def generate(
    kind: str = typer.Argument(..., help="path, cycle, grid, tree or random"),
    size: int = typer.Argument(..., help="Node count (rows for grids)"),
    output: Path = typer.Option(..., "--output", "-o", help="METIS output file"),
    seed: int = typer.Option(0, "--seed"),
    cols: Optional[int] = typer.Option(None, "--cols", help="Grid columns (default: square)"),
    edge_prob: Optional[float] = typer.Option(None, "--edge-prob", help="Edge probability for random graphs"),
    components: int = typer.Option(1, "--components", help="Components of random graphs"),
):
    """
    🧪 Write a generated graph in METIS format
    """
    kwargs: Dict = {"components": components}
    if cols is not None:
        kwargs["cols"] = cols
    if edge_prob is not None:
        kwargs["edge_prob"] = edge_prob
    try:
        g = generate_graph(kind, size, random.Random(seed), **kwargs)
    except ValueError as e:
        typer.echo(f"❌ {e}", err=True)
        raise typer.Exit(EXIT_USAGE)
    output.write_text(write_metis(g))
    typer.echo(f"✅ {kind} graph with {g.n} nodes and {g.m} edges written to {output}")

# ==================== convergence ====================

def _read_reference(path: Path) -> Dict[str, float]:
    reference = {}
    for line in path.read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            name, value = line.split()[:2]
            reference[name] = float(value)
    return reference


@app.command()
def convergence(
    logs: List[Path] = typer.Argument(..., help="Event logs named <instance>.<rep>.jsonl"),
    output: Path = typer.Option(..., "--output", "-o", help="TSV curve (t_n, G)"),
    reference: Optional[Path] = typer.Option(None, "--reference", help="Whitespace separated 'instance seconds' lines"),
):
    """
    📈 Event-based geometric mean convergence curve over instances
    """
    grouped: Dict[str, list] = {}
    for path in logs:
        grouped.setdefault(instance_name(path), []).append(read_event_log(path))
    try:
        curve = convergence_curve(grouped, _read_reference(reference) if reference else None)
    except ValueError as e:
        typer.echo(f"❌ {e}", err=True)
        raise typer.Exit(EXIT_USAGE)
    write_curve(curve, output)
    typer.echo(f"✅ {len(curve)} curve points over {len(grouped)} instances written to {output}")

# ==================== compare ====================

@app.command()
def compare(
    results: Path = typer.Argument(..., help="CSV/TSV with columns instance, algorithm, size"),
    reference: Optional[str] = typer.Option(None, "--reference", help="Algorithm to compare against"),
):
    """
    📊 Summarize final separator sizes per algorithm
    """
    try:
        summary = summarize(load_results(results), reference)
    except ValueError as e:
        typer.echo(f"❌ {e}", err=True)
        raise typer.Exit(EXIT_USAGE)

    table = Table(title="Final separator sizes")
    for column in ("algorithm", "geomean", "vs reference [%]", "best (<=)", "best (<)"):
        table.add_column(column)
    for row in summary.itertuples(index=False):
        table.add_row(
            row.algorithm, f"{row.geomean:.1f}", f"{row.vs_reference_pct:+.1f}", str(row.best_le), str(row.best_lt),
        )
    Console().print(table)


def main() -> None:
    try:
        code = app(standalone_mode=False)
    except click.exceptions.UsageError as e:
        typer.echo(f"❌ {e.format_message()}", err=True)
        sys.exit(EXIT_USAGE)
    sys.exit(code if isinstance(code, int) else EXIT_OK)


if __name__ == "__main__":
    main()
