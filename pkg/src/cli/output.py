"""Console summary of a dispatch."""

from typing import Optional

from rich.console import Console
from rich.table import Table

from .models import DispatchResult

EXIT_LABELS = {0: "[green]all flags passed[/green]", 1: "[red]flag failed[/red]", 2: "[red]error[/red]"}


def flags_table(result: DispatchResult) -> Table:
    table = Table(title=f"{result.report.name} flags")
    table.add_column("flag")
    table.add_column("value", justify="right")
    table.add_column("", justify="center")
    table.add_column("tolerance", justify="right")
    table.add_column("status")
    for f in result.report.flags:
        status = "[green]pass[/green]" if f.passed else "[red]FAIL[/red]"
        table.add_row(f.name, f"{f.value:.6g}", f.comparison.value, f"{f.tolerance:.3g}", status)
    return table


def print_summary(result: DispatchResult, console: Optional[Console] = None) -> None:
    """Flags table, written files and exit status."""
    console = console or Console()
    if result.report is not None and result.report.flags:
        console.print(flags_table(result))
    elif result.report is not None:
        console.print(f"{result.report.name}: no flags")
    for path in result.files:
        console.print(f"wrote {path}")
    if result.error:
        console.print(f"[red]{result.error}[/red]")
    console.print(f"exit {result.exit_code}: {EXIT_LABELS.get(result.exit_code, '')}")
