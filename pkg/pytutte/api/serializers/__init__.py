"""pytutte/api/serializers package."""
