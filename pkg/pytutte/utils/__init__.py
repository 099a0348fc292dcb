"""pytutte/utils package."""
