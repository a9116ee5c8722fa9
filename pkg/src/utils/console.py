"""Logging setup and human-readable summaries on stderr."""

import logging

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

console = Console(stderr=True)


def setup_logging(verbose=False, quiet=False):
    """DEBUG with `verbose`, WARNING with `quiet`, INFO otherwise."""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def print_summary(summary):
    """Render the DataFrame from `summarize` as a table."""
    table = Table(title="Verification summary")
    table.add_column("Statement", style="cyan")
    table.add_column("Count", justify="right")
    table.add_column("Failures", justify="right")
    table.add_column("Min slack", justify="right")
    for _, row in summary.iterrows():
        style = "red" if row["failures"] else "green"
        table.add_row(
            row["statement"],
            str(row["count"]),
            f"[{style}]{row['failures']}[/{style}]",
            f"{row['min_slack']:.6g}",
        )
    console.print(table)
