"""Presentation layer: CLI entry point."""
