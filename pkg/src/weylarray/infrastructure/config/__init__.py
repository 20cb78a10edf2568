"""Configuration infrastructure: loading run documents from JSON files."""

from weylarray.infrastructure.config.json_config_provider import JsonConfigProvider

__all__ = ["JsonConfigProvider"]
