"""User-friendly error messages for run-configuration validation errors."""

from __future__ import annotations

from typing import Any

# Maps (field, error_type) → message per language; ``*`` matches any field
_ERROR_MAP: dict[tuple[str, str], dict[str, str]] = {
    ("*", "extra_forbidden"): {
        "en": "Unknown key. Check the spelling against `weylarray config show`.",
        "es": "Clave desconocida. Compare la ortografía con `weylarray config show`.",
    },
    ("lattice", "enum"): {
        "en": "Lattice must be 'bcc' or 'cub'.",
        "es": "La red debe ser 'bcc' o 'cub'.",
    },
    ("lattice", "value_error"): {
        "en": "Lattice must be 'bcc' or 'cub'; the slab is configured in the 'slab' block.",
        "es": "La red debe ser 'bcc' o 'cub'; la lámina se configura en el bloque 'slab'.",
    },
    ("a_over_lambda", "greater_than"): {
        "en": "a/lambda_0 must be positive (e.g., 0.1).",
        "es": "a/lambda_0 debe ser positivo (ej., 0.1).",
    },
    ("width", "value_error"): {
        "en": "Slab width w/a must be a positive multiple of 1/2 (e.g., 15.5).",
        "es": "El ancho de la lámina w/a debe ser un múltiplo positivo de 1/2 (ej., 15.5).",
    },
    ("grid_n", "greater_than_equal"): {
        "en": "Grid too coarse; increase grid_n.",
        "es": "Malla demasiado gruesa; aumente grid_n.",
    },
    ("search", "enum"): {
        "en": "Weyl search must be 'axis' or 'full'.",
        "es": "La búsqueda de Weyl debe ser 'axis' o 'full'.",
    },
    ("workers", "greater_than_equal"): {
        "en": "At least one worker is required.",
        "es": "Se requiere al menos un proceso.",
    },
}


def friendly_error(
    field: str,
    error_type: str,
    lang: str = "en",
    fallback: str | None = None,
) -> str:
    """Return a user-friendly error message.

    Args:
        field: The last component of the failing location (e.g., ``width``).
        error_type: The Pydantic error type string (e.g., ``value_error``).
        lang: Language code (``en`` or ``es``).
        fallback: Fallback message if no mapping exists.

    Returns:
        A localised, user-friendly error string.
    """
    messages = _ERROR_MAP.get((field, error_type)) or _ERROR_MAP.get(("*", error_type))
    if messages:
        return messages.get(lang, messages.get("en", ""))
    return fallback or f"Validation error on field '{field}'."


def format_validation_errors(
    errors: list[dict[str, Any]],
    lang: str = "en",
) -> list[str]:
    """Convert a list of Pydantic error dicts to ``location: message`` lines.

    Args:
        errors: Output of ``ValidationError.errors()``.
        lang: Language code.

    Returns:
        List of user-friendly error strings.
    """
    result: list[str] = []
    for err in errors:
        loc = [str(part) for part in err.get("loc", [])]
        field = loc[-1] if loc else ""
        msg = friendly_error(field, err.get("type", ""), lang, fallback=err.get("msg"))
        result.append(f"{'.'.join(loc) or '<root>'}: {msg}")
    return result
