"""pytutte/domain/services package."""
