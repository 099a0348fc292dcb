"""pytutte package."""
