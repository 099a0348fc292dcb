"""pytutte/api package."""
