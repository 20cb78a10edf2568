"""Rich formatting utilities for the CLI.

Everything the terminal shows goes through here; this module knows
nothing about the physics.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from rich.console import Console
from rich.panel import Panel
from rich.syntax import Syntax
from rich.table import Table

if TYPE_CHECKING:
    from weylarray.application.dto.run_outcome import RunOutcome

console = Console()


# ---------------------------------------------------------------------------
# Success / error panels
# ---------------------------------------------------------------------------


def success_panel(message: str, title: str = "weylarray") -> None:
    """Print a green success panel."""
    console.print(Panel(message, title=title, border_style="green"))


def error_message(message: str) -> None:
    """Print a red error message."""
    console.print(f"[bold red]❌ {message}[/]")


def validation_errors(messages: list[str]) -> None:
    """Print one bullet per configuration problem."""
    body = "\n".join(f"  • {m}" for m in messages)
    console.print(
        Panel(body, title="❌ Configuración inválida", border_style="red"),
    )


# ---------------------------------------------------------------------------
# JSON / config rendering
# ---------------------------------------------------------------------------


def json_panel(raw_json: str, title: str = "⚙️  Configuración activa") -> None:
    """Render JSON inside a syntax-highlighted panel."""
    console.print(
        Panel(
            Syntax(raw_json, "json", theme="monokai", line_numbers=True),
            title=title,
            border_style="blue",
        )
    )


# ---------------------------------------------------------------------------
# Run outcome
# ---------------------------------------------------------------------------


def _fmt(value: Any) -> str:
    if value is None:
        return "—"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def outcome_table(outcome: RunOutcome) -> None:
    """Print the summary and the written files of a run."""
    table = Table(
        title=f"📊 Resultado: {outcome.command.value}",
        show_header=True,
        border_style="blue",
    )
    table.add_column("Magnitud", style="cyan", width=28)
    table.add_column("Valor", style="green")
    for key, value in outcome.summary.items():
        table.add_row(key, _fmt(value))
    console.print(table)

    files = "\n".join(f"  📄 {path}" for path in outcome.files)
    success_panel(f"✅ Archivos escritos:\n{files}", title="💾 Salida")
