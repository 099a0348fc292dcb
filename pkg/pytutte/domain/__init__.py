"""pytutte/domain package."""
