"""tests/unit/api package."""
