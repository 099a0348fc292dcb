"""tests/unit/utils package."""
