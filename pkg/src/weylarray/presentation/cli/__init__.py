"""CLI presentation layer."""

from weylarray.presentation.cli.app import app

__all__ = ["app"]
