"""pytutte/domain/models package."""
