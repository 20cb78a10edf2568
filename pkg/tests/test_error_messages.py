"""Tests for the friendly validation messages."""

from __future__ import annotations

import pytest
from pydantic import ValidationError

from weylarray.config.models import RunConfig
from weylarray.error_messages import format_validation_errors, friendly_error


class TestFriendlyError:
    def test_width_english(self):
        msg = friendly_error("width", "value_error", "en")
        assert "1/2" in msg

    def test_width_spanish(self):
        msg = friendly_error("width", "value_error", "es")
        assert "lámina" in msg

    def test_wildcard_matches_any_field(self):
        msg = friendly_error("a_over_lamda", "extra_forbidden", "en")
        assert "Unknown key" in msg

    def test_unknown_language_falls_back_to_english(self):
        assert friendly_error("workers", "greater_than_equal", "fr") == (
            "At least one worker is required."
        )

    def test_unknown_field_fallback(self):
        msg = friendly_error("unknown_field", "weird_error", "en")
        assert "Validation error" in msg

    def test_custom_fallback(self):
        assert friendly_error("foo", "bar", "en", fallback="Custom message") == "Custom message"


class TestFormatValidationErrors:
    def test_locations_are_dotted(self):
        errors = [
            {"loc": ["slab", "width"], "type": "value_error", "msg": "bad width"},
            {"loc": ["dos", "grid_n"], "type": "greater_than_equal", "msg": "too small"},
        ]
        result = format_validation_errors(errors, "en")
        assert result[0].startswith("slab.width: ")
        assert "grid_n" in result[1]

    def test_root_location(self):
        (line,) = format_validation_errors([{"loc": [], "type": "x", "msg": "broken"}])
        assert line == "<root>: broken"

    def test_from_real_validation_error(self):
        with pytest.raises(ValidationError) as excinfo:
            RunConfig.model_validate({"a_over_lambda": -1.0, "typo": 1})
        lines = format_validation_errors(excinfo.value.errors(), "es")
        assert any(line.startswith("a_over_lambda: ") and "positivo" in line for line in lines)
        assert any(line.startswith("typo: ") and "Clave desconocida" in line for line in lines)
