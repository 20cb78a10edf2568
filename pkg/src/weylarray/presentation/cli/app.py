"""Thin CLI wrapper: Typer commands that delegate to Use Cases.

All domain logic is accessed through the Container (bootstrap.py).
Exit codes: 0 success, 2 configuration error, 3 numerical failure (with
``error.json`` written to the output directory).
"""

from __future__ import annotations

import logging
import shutil
from pathlib import Path
from typing import Annotated, Optional

import typer
from pydantic import ValidationError
from rich.logging import RichHandler

from weylarray.domain.errors import ConfigurationError, WeylArrayError
from weylarray.domain.models.enums import Command
from weylarray.error_messages import format_validation_errors
from weylarray.presentation.cli.formatters import (
    console,
    error_message,
    json_panel,
    outcome_table,
    success_panel,
    validation_errors,
)

EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3
ERROR_FILE = "error.json"

app = typer.Typer(
    name="weylarray",
    help="🔷 Bandas polaritónicas y puntos de Weyl en redes atómicas",
    rich_markup_mode="rich",
    no_args_is_help=True,
)

# Sub-app for config commands
config_app = typer.Typer(
    name="config",
    help="⚙️  Gestionar archivos de configuración de cálculo",
    rich_markup_mode="rich",
    no_args_is_help=True,
)
app.add_typer(config_app, name="config")

ConfigOption = Annotated[
    Optional[Path],
    typer.Option("--config", "-c", help="Ruta al archivo JSON de configuración"),
]
WorkersOption = Annotated[
    Optional[int],
    typer.Option("--workers", "-w", min=1, help="Número de procesos (anula el del archivo)"),
]
DiagnosticsOption = Annotated[
    bool,
    typer.Option("--diagnostics", help="Registro DEBUG y reportes de convergencia de Ewald"),
]


# ---------------------------------------------------------------------------
# Shared runner
# ---------------------------------------------------------------------------


def _configure_logging(diagnostics: bool) -> None:
    """Route the package logger through a single RichHandler."""
    logger = logging.getLogger("weylarray")
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    logger.addHandler(RichHandler(console=console, show_path=False, markup=False))
    logger.setLevel(logging.DEBUG if diagnostics else logging.INFO)
    logger.propagate = False


def _run(
    command: Command, config: Optional[Path], workers: Optional[int], diagnostics: bool
) -> None:
    from weylarray.application.use_cases.reporting import run_metadata
    from weylarray.bootstrap import Container

    _configure_logging(diagnostics)
    try:
        container = Container(config, workers, diagnostics)
    except ValidationError as exc:
        validation_errors(format_validation_errors(exc.errors(), lang="es"))
        raise typer.Exit(code=EXIT_CONFIG_ERROR)
    except (FileNotFoundError, ConfigurationError) as exc:
        error_message(str(exc))
        raise typer.Exit(code=EXIT_CONFIG_ERROR)

    try:
        outcome = container.use_case(command).execute(container.config)
    except ConfigurationError as exc:
        error_message(str(exc))
        raise typer.Exit(code=EXIT_CONFIG_ERROR)
    except WeylArrayError as exc:
        path = container.writer.write_json(
            ERROR_FILE, exc.to_dict(), run_metadata(container.config, command)
        )
        error_message(f"Fallo numérico: {exc}")
        console.print(f"  Detalle en [bold]{path}[/]")
        raise typer.Exit(code=EXIT_NUMERICAL_FAILURE)

    outcome_table(outcome)


# ---------------------------------------------------------------------------
# Analysis commands
# ---------------------------------------------------------------------------


@app.command()
def bands(
    config: ConfigOption = None,
    workers: WorkersOption = None,
    diagnostics: DiagnosticsOption = False,
) -> None:
    """Estructura de bandas a lo largo de un camino de alta simetría."""
    _run(Command.BANDS, config, workers, diagnostics)


@app.command()
def dos(
    config: ConfigOption = None,
    workers: WorkersOption = None,
    diagnostics: DiagnosticsOption = False,
) -> None:
    """Densidad de estados sobre una malla uniforme de la zona de Brillouin."""
    _run(Command.DOS, config, workers, diagnostics)


@app.command()
def contours(
    config: ConfigOption = None,
    workers: WorkersOption = None,
    diagnostics: DiagnosticsOption = False,
) -> None:
    """Contornos de isofrecuencia sobre un plano (y línea nodal opcional)."""
    _run(Command.CONTOURS, config, workers, diagnostics)


@app.command()
def weyl(
    config: ConfigOption = None,
    workers: WorkersOption = None,
    diagnostics: DiagnosticsOption = False,
) -> None:
    """Localizar el par de puntos de Weyl, su quiralidad y su aislamiento."""
    _run(Command.WEYL, config, workers, diagnostics)


@app.command("phase-diagram")
def phase_diagram(
    config: ConfigOption = None,
    workers: WorkersOption = None,
    diagnostics: DiagnosticsOption = False,
) -> None:
    """Diagrama de fases de aislamiento en (a/λ₀, μB/γ̃₀)."""
    _run(Command.PHASE_DIAGRAM, config, workers, diagnostics)


@app.command()
def slab(
    config: ConfigOption = None,
    workers: WorkersOption = None,
    diagnostics: DiagnosticsOption = False,
) -> None:
    """Bandas de la lámina (100) y arcos de Fermi a la frecuencia de Weyl."""
    _run(Command.SLAB, config, workers, diagnostics)


@app.command()
def trajectory(
    config: ConfigOption = None,
    workers: WorkersOption = None,
    diagnostics: DiagnosticsOption = False,
) -> None:
    """Movimiento del nodo de Weyl al barrer el desdoblamiento Zeeman."""
    _run(Command.TRAJECTORY, config, workers, diagnostics)


# ---------------------------------------------------------------------------
# weylarray config show / init / validate
# ---------------------------------------------------------------------------


@config_app.command("show")
def config_show(config: ConfigOption = None) -> None:
    """Mostrar la configuración completa (con valores por defecto)."""
    from weylarray.config import get_config, load_config

    try:
        cfg = load_config(config) if config else get_config()
    except ValidationError as exc:
        validation_errors(format_validation_errors(exc.errors(), lang="es"))
        raise typer.Exit(code=EXIT_CONFIG_ERROR)
    except (FileNotFoundError, ConfigurationError) as exc:
        error_message(str(exc))
        raise typer.Exit(code=EXIT_CONFIG_ERROR)
    json_panel(cfg.model_dump_json(indent=2))


@config_app.command("init")
def config_init(
    output: Annotated[
        Path, typer.Option("--output", "-o", help="Nombre del archivo destino")
    ] = Path("weylarray.json"),
    preset: Annotated[
        str,
        typer.Option(
            "--preset",
            "-p",
            help="Receta de partida: bcc_weyl, bcc_bands, phase_diagram, slab_arcs, "
            "cub_comparison, trajectory",
        ),
    ] = "bcc_weyl",
) -> None:
    """Copiar una receta incluida al directorio actual para personalizarla."""
    from weylarray.config.loader import preset_path

    try:
        source = preset_path(preset)
    except ConfigurationError as exc:
        error_message(str(exc))
        raise typer.Exit(code=EXIT_CONFIG_ERROR)

    if output.exists():
        console.print(f"[bold yellow]⚠️  El archivo ya existe:[/] {output}")
        overwrite = typer.confirm("¿Desea sobrescribirlo?")
        if not overwrite:
            raise typer.Abort()

    shutil.copy2(source, output)
    success_panel(
        f"✅ Receta [cyan]{preset}[/] copiada a: [bold green]{output}[/]\n\n"
        "Edite este archivo y úselo con [bold]--config[/]:\n"
        f'  weylarray weyl --config "{output}"',
        title="⚙️  Config Init",
    )


@config_app.command("validate")
def config_validate(
    config_file: Annotated[
        Path, typer.Argument(help="Ruta al archivo JSON de configuración a validar")
    ],
) -> None:
    """Validar un archivo JSON de configuración."""
    from weylarray.config import load_config

    if not config_file.exists():
        error_message(f"Archivo no encontrado: {config_file}")
        raise typer.Exit(code=EXIT_CONFIG_ERROR)

    try:
        cfg = load_config(config_file)
    except ValidationError as exc:
        validation_errors(format_validation_errors(exc.errors(), lang="es"))
        raise typer.Exit(code=EXIT_CONFIG_ERROR)
    except ConfigurationError as exc:
        error_message(str(exc))
        raise typer.Exit(code=EXIT_CONFIG_ERROR)

    success_panel(
        f"✅ Configuración válida\n\n"
        f"  Red: [cyan]{cfg.lattice.value}[/]\n"
        f"  a/λ₀: [cyan]{cfg.a_over_lambda}[/]\n"
        f"  μB/γ̃₀: [cyan]{cfg.muB_over_gamma_tilde}[/]\n"
        f"  Procesos: [cyan]{cfg.workers}[/]\n"
        f"  Hash: [cyan]{cfg.config_hash()[:16]}[/]",
        title="✅ Validation",
    )


if __name__ == "__main__":
    app()
