"""Run configuration package."""

from weylarray.config.loader import get_config, load_config
from weylarray.config.models import RunConfig

__all__ = ["RunConfig", "get_config", "load_config"]
